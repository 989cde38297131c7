#include "dpfuzz/targets.hpp"

#include <algorithm>
#include <optional>
#include <utility>

// Built-in benchmark programs. Every basic block calls Tracer::hit with its
// index into the target's block table; the table's line counts mirror the
// source lines of the reference listing each block stands for.

namespace dpfuzz {
namespace {

std::vector<int> as_ints(const TargetInput& in) {
  const auto& b = in.bytes();
  return {b.begin(), b.end()};
}

// ---------------------------------------------------------------------------
// InsertionX: bubble the minimum to the front, bail out if nothing moved,
// then run sentinel insertion sort.
namespace insertionx {

enum : std::size_t {
  kEntry, kBubbleLoop, kBubbleTest, kSwap, kBubbleStep, kExchangeTest, kEarlyReturn,
  kInsertInit, kInsertLoop, kInsertHead, kShiftLoop, kShift, kPlace, kReturn,
};

constexpr Block kBlocks[] = {
    {"insertionx.entry", 1},         {"insertionx.bubble_loop", 1}, {"insertionx.bubble_test", 1},
    {"insertionx.swap", 2},          {"insertionx.bubble_step", 1}, {"insertionx.exchange_test", 1},
    {"insertionx.early_return", 1},  {"insertionx.insert_init", 1}, {"insertionx.insert_loop", 1},
    {"insertionx.insert_head", 1},   {"insertionx.shift_loop", 1},  {"insertionx.shift", 2},
    {"insertionx.place", 1},         {"insertionx.return", 1},
};

void run(const TargetInput& in, Tracer& t) {
  auto a = as_ints(in);
  const long n = static_cast<long>(a.size());
  t.hit(kEntry);
  long exchange = 0;
  long i = n - 1;
  while (t.hit(kBubbleLoop), i > 0) {
    t.hit(kBubbleTest);
    if (a[i] < a[i - 1]) {
      t.hit(kSwap);
      std::swap(a[i], a[i - 1]);
      ++exchange;
    }
    t.hit(kBubbleStep);
    --i;
  }
  t.hit(kExchangeTest);
  if (exchange == 0) {
    t.hit(kEarlyReturn);
    return;
  }
  t.hit(kInsertInit);
  i = 2;
  while (t.hit(kInsertLoop), i < n) {
    t.hit(kInsertHead);
    const int v = a[i];
    long j = i;
    while (t.hit(kShiftLoop), v < a[j - 1]) {
      t.hit(kShift);
      a[j] = a[j - 1];
      --j;
    }
    t.hit(kPlace);
    a[j] = v;
    ++i;
  }
  t.hit(kReturn);
}

}  // namespace insertionx

// ---------------------------------------------------------------------------
// Quicksort with first-element pivot and two-sided scanning partition.
namespace quicksort {

enum : std::size_t {
  kMain, kSortEntry, kSortBase, kSortRecurse, kPartEntry, kPartLoop, kScanI, kScanIBound,
  kScanIBreak, kScanJ, kScanJBound, kScanJBreak, kCross, kCrossBreak, kExch, kPivot,
};

constexpr Block kBlocks[] = {
    {"quicksort.main", 1},        {"quicksort.sort_entry", 1},   {"quicksort.sort_base", 1},
    {"quicksort.sort_recurse", 3}, {"quicksort.partition", 3},   {"quicksort.partition_loop", 1},
    {"quicksort.scan_i", 1},      {"quicksort.scan_i_bound", 1}, {"quicksort.scan_i_break", 1},
    {"quicksort.scan_j", 1},      {"quicksort.scan_j_bound", 1}, {"quicksort.scan_j_break", 1},
    {"quicksort.cross_test", 1},  {"quicksort.cross_break", 1},  {"quicksort.exchange", 3},
    {"quicksort.pivot", 4},
};

long partition(std::vector<int>& a, long lo, long hi, Tracer& t) {
  t.hit(kPartEntry);
  long i = lo;
  long j = hi + 1;
  const int v = a[lo];
  while (true) {
    t.hit(kPartLoop);
    while (t.hit(kScanI), a[++i] < v) {
      t.hit(kScanIBound);
      if (i == hi) {
        t.hit(kScanIBreak);
        break;
      }
    }
    while (t.hit(kScanJ), v < a[--j]) {
      t.hit(kScanJBound);
      if (j == lo) {
        t.hit(kScanJBreak);
        break;
      }
    }
    t.hit(kCross);
    if (i >= j) {
      t.hit(kCrossBreak);
      break;
    }
    t.hit(kExch);
    std::swap(a[i], a[j]);
  }
  t.hit(kPivot);
  std::swap(a[lo], a[j]);
  return j;
}

void sort(std::vector<int>& a, long lo, long hi, Tracer& t) {
  t.hit(kSortEntry);
  if (hi <= lo) {
    t.hit(kSortBase);
    return;
  }
  t.hit(kSortRecurse);
  const long j = partition(a, lo, hi, t);
  sort(a, lo, j - 1, t);
  sort(a, j + 1, hi, t);
}

void run(const TargetInput& in, Tracer& t) {
  auto a = as_ints(in);
  t.hit(kMain);
  sort(a, 0, static_cast<long>(a.size()) - 1, t);
}

}  // namespace quicksort

// ---------------------------------------------------------------------------
// Three-way (Dijkstra) partitioning quicksort.
namespace quick3way {

enum : std::size_t {
  kMain, kSortEntry, kSortBase, kSortInit, kLoop, kLessTest, kLess, kGreaterTest, kGreater, kEqual, kRecurse,
};

constexpr Block kBlocks[] = {
    {"quick3way.main", 1},      {"quick3way.sort_entry", 1}, {"quick3way.sort_base", 1},
    {"quick3way.sort_init", 4}, {"quick3way.loop", 1},       {"quick3way.less_test", 2},
    {"quick3way.less", 3},      {"quick3way.greater_test", 1}, {"quick3way.greater", 2},
    {"quick3way.equal", 2},     {"quick3way.recurse", 2},
};

void sort(std::vector<int>& a, long lo, long hi, Tracer& t) {
  t.hit(kSortEntry);
  if (hi <= lo) {
    t.hit(kSortBase);
    return;
  }
  t.hit(kSortInit);
  long lt = lo;
  long gt = hi;
  const int v = a[lo];
  long i = lo + 1;
  while (t.hit(kLoop), i <= gt) {
    t.hit(kLessTest);
    if (a[i] < v) {
      t.hit(kLess);
      std::swap(a[lt++], a[i++]);
      continue;
    }
    t.hit(kGreaterTest);
    if (a[i] > v) {
      t.hit(kGreater);
      std::swap(a[i], a[gt--]);
    } else {
      t.hit(kEqual);
      ++i;
    }
  }
  t.hit(kRecurse);
  sort(a, lo, lt - 1, t);
  sort(a, gt + 1, hi, t);
}

void run(const TargetInput& in, Tracer& t) {
  auto a = as_ints(in);
  t.hit(kMain);
  sort(a, 0, static_cast<long>(a.size()) - 1, t);
}

}  // namespace quick3way

// ---------------------------------------------------------------------------
// Top-down merge sort with an auxiliary array.
namespace mergesort {

enum : std::size_t {
  kMain, kSortEntry, kSortBase, kSplit, kMergeInit, kCopy, kMergeLoop, kLeftDone, kTakeRightTail,
  kRightDone, kTakeLeftTail, kCompare, kTakeRight, kTakeLeft,
};

constexpr Block kBlocks[] = {
    {"mergesort.main", 2},        {"mergesort.sort_entry", 1},      {"mergesort.sort_base", 1},
    {"mergesort.split", 4},       {"mergesort.merge_init", 2},      {"mergesort.copy", 2},
    {"mergesort.merge_loop", 1},  {"mergesort.left_done", 1},       {"mergesort.take_right_tail", 1},
    {"mergesort.right_done", 1},  {"mergesort.take_left_tail", 1},  {"mergesort.compare", 1},
    {"mergesort.take_right", 1},  {"mergesort.take_left", 1},
};

void merge(std::vector<int>& a, std::vector<int>& aux, long lo, long mid, long hi, Tracer& t) {
  t.hit(kMergeInit);
  for (long k = lo; k <= hi; ++k) {
    t.hit(kCopy);
    aux[k] = a[k];
  }
  long i = lo;
  long j = mid + 1;
  for (long k = lo; t.hit(kMergeLoop), k <= hi; ++k) {
    t.hit(kLeftDone);
    if (i > mid) {
      t.hit(kTakeRightTail);
      a[k] = aux[j++];
      continue;
    }
    t.hit(kRightDone);
    if (j > hi) {
      t.hit(kTakeLeftTail);
      a[k] = aux[i++];
      continue;
    }
    t.hit(kCompare);
    if (aux[j] < aux[i]) {
      t.hit(kTakeRight);
      a[k] = aux[j++];
    } else {
      t.hit(kTakeLeft);
      a[k] = aux[i++];
    }
  }
}

void sort(std::vector<int>& a, std::vector<int>& aux, long lo, long hi, Tracer& t) {
  t.hit(kSortEntry);
  if (hi <= lo) {
    t.hit(kSortBase);
    return;
  }
  t.hit(kSplit);
  const long mid = lo + (hi - lo) / 2;
  sort(a, aux, lo, mid, t);
  sort(a, aux, mid + 1, hi, t);
  merge(a, aux, lo, mid, hi, t);
}

void run(const TargetInput& in, Tracer& t) {
  auto a = as_ints(in);
  std::vector<int> aux(a.size());
  t.hit(kMain);
  sort(a, aux, 0, static_cast<long>(a.size()) - 1, t);
}

}  // namespace mergesort

// ---------------------------------------------------------------------------
// Binary search for the first byte in the (sorted) remaining bytes.
namespace binsearch {

enum : std::size_t { kEntry, kLoop, kMid, kLessTest, kGoLeft, kGreaterTest, kGoRight, kFound, kNotFound };

constexpr Block kBlocks[] = {
    {"binsearch.entry", 3},     {"binsearch.loop", 1},   {"binsearch.mid", 1},
    {"binsearch.less_test", 1}, {"binsearch.go_left", 1}, {"binsearch.greater_test", 1},
    {"binsearch.go_right", 1},  {"binsearch.found", 1},  {"binsearch.not_found", 1},
};

void run(const TargetInput& in, Tracer& t) {
  const auto& b = in.bytes();
  const int key = b.empty() ? 0 : b[0];
  std::vector<int> a;
  if (b.size() > 1) a.assign(b.begin() + 1, b.end());
  std::sort(a.begin(), a.end());
  t.hit(kEntry);
  long lo = 0;
  long hi = static_cast<long>(a.size()) - 1;
  while (t.hit(kLoop), lo <= hi) {
    t.hit(kMid);
    const long mid = lo + (hi - lo) / 2;
    t.hit(kLessTest);
    if (key < a[mid]) {
      t.hit(kGoLeft);
      hi = mid - 1;
      continue;
    }
    t.hit(kGreaterTest);
    if (key > a[mid]) {
      t.hit(kGoRight);
      lo = mid + 1;
      continue;
    }
    t.hit(kFound);
    return;
  }
  t.hit(kNotFound);
}

}  // namespace binsearch

// ---------------------------------------------------------------------------
// Sequential search for the first byte in the remaining bytes.
namespace seqsearch {

enum : std::size_t { kEntry, kLoop, kTest, kFound, kNotFound };

constexpr Block kBlocks[] = {
    {"seqsearch.entry", 1}, {"seqsearch.loop", 1}, {"seqsearch.test", 1},
    {"seqsearch.found", 1}, {"seqsearch.not_found", 1},
};

void run(const TargetInput& in, Tracer& t) {
  const auto& b = in.bytes();
  t.hit(kEntry);
  const int key = b.empty() ? 0 : b[0];
  for (std::size_t i = 1; t.hit(kLoop), i < b.size(); ++i) {
    t.hit(kTest);
    if (b[i] == key) {
      t.hit(kFound);
      return;
    }
  }
  t.hit(kNotFound);
}

}  // namespace seqsearch

// ---------------------------------------------------------------------------
// Boyer-Moore substring search with the bad-character rule. Byte 0 selects
// the pattern length (1..8), the pattern follows, then the text.
namespace boyermoore {

enum : std::size_t {
  kEntry, kRightInit, kRightLoop, kSearchLoop, kSkipReset, kInnerLoop, kMismatchTest, kMismatch,
  kFoundTest, kFound, kNotFound,
};

constexpr Block kBlocks[] = {
    {"boyermoore.entry", 2},        {"boyermoore.right_init", 1}, {"boyermoore.right_loop", 1},
    {"boyermoore.search_loop", 1},  {"boyermoore.skip_reset", 1}, {"boyermoore.inner_loop", 1},
    {"boyermoore.mismatch_test", 1}, {"boyermoore.mismatch", 2},  {"boyermoore.found_test", 1},
    {"boyermoore.found", 1},        {"boyermoore.not_found", 1},
};

void run(const TargetInput& in, Tracer& t) {
  const auto& b = in.bytes();
  t.hit(kEntry);
  if (b.empty()) {
    t.hit(kNotFound);
    return;
  }
  const std::size_t avail = b.size() - 1;
  const std::size_t m = std::min<std::size_t>(1 + b[0] % 8, avail);
  const std::uint8_t* pat = b.data() + 1;
  const std::uint8_t* txt = pat + m;
  const long n = static_cast<long>(avail - m);
  t.hit(kRightInit);
  int right[256];
  std::fill(std::begin(right), std::end(right), -1);
  for (std::size_t j = 0; j < m; ++j) {
    t.hit(kRightLoop);
    right[pat[j]] = static_cast<int>(j);
  }
  if (m == 0) {
    t.hit(kFound);
    return;
  }
  long skip = 0;
  for (long i = 0; t.hit(kSearchLoop), i <= n - static_cast<long>(m); i += skip) {
    t.hit(kSkipReset);
    skip = 0;
    for (long j = static_cast<long>(m) - 1; t.hit(kInnerLoop), j >= 0; --j) {
      t.hit(kMismatchTest);
      if (pat[j] != txt[i + j]) {
        t.hit(kMismatch);
        skip = std::max(1L, j - right[txt[i + j]]);
        break;
      }
    }
    t.hit(kFoundTest);
    if (skip == 0) {
      t.hit(kFound);
      return;
    }
  }
  t.hit(kNotFound);
}

}  // namespace boyermoore

// ---------------------------------------------------------------------------
// Unbalanced binary search tree insertion of every byte.
namespace bstinsert {

enum : std::size_t {
  kEntry, kKeyLoop, kRootTest, kNewRoot, kWalkInit, kWalk, kLessTest, kLeftTest, kAttachLeft,
  kDescendLeft, kGreaterTest, kRightTest, kAttachRight, kDescendRight, kDuplicate,
};

constexpr Block kBlocks[] = {
    {"bstinsert.entry", 1},        {"bstinsert.key_loop", 1},      {"bstinsert.root_test", 1},
    {"bstinsert.new_root", 1},     {"bstinsert.walk_init", 1},     {"bstinsert.walk", 1},
    {"bstinsert.less_test", 1},    {"bstinsert.left_test", 1},     {"bstinsert.attach_left", 2},
    {"bstinsert.descend_left", 1}, {"bstinsert.greater_test", 1},  {"bstinsert.right_test", 1},
    {"bstinsert.attach_right", 2}, {"bstinsert.descend_right", 1}, {"bstinsert.duplicate", 2},
};

struct Node {
  int key;
  int left = -1;
  int right = -1;
};

void run(const TargetInput& in, Tracer& t) {
  const auto& b = in.bytes();
  std::vector<Node> nodes;
  nodes.reserve(b.size());
  t.hit(kEntry);
  for (std::size_t k = 0; t.hit(kKeyLoop), k < b.size(); ++k) {
    const int key = b[k];
    t.hit(kRootTest);
    if (nodes.empty()) {
      t.hit(kNewRoot);
      nodes.push_back({key});
      continue;
    }
    t.hit(kWalkInit);
    int x = 0;
    while (true) {
      t.hit(kWalk);
      t.hit(kLessTest);
      if (key < nodes[x].key) {
        t.hit(kLeftTest);
        if (nodes[x].left < 0) {
          t.hit(kAttachLeft);
          nodes[x].left = static_cast<int>(nodes.size());
          nodes.push_back({key});
          break;
        }
        t.hit(kDescendLeft);
        x = nodes[x].left;
        continue;
      }
      t.hit(kGreaterTest);
      if (key > nodes[x].key) {
        t.hit(kRightTest);
        if (nodes[x].right < 0) {
          t.hit(kAttachRight);
          nodes[x].right = static_cast<int>(nodes.size());
          nodes.push_back({key});
          break;
        }
        t.hit(kDescendRight);
        x = nodes[x].right;
        continue;
      }
      t.hit(kDuplicate);
      break;
    }
  }
}

}  // namespace bstinsert

// ---------------------------------------------------------------------------
// Is-BST check over a binary tree stored in heap layout; byte 0 marks an
// absent node (and hides its subtree).
namespace isbst {

enum : std::size_t {
  kEntry, kBuildLoop, kCheck, kNull, kMinTest, kMinFail, kMaxTest, kMaxFail, kLeft, kLeftFail, kRight, kResult,
};

constexpr Block kBlocks[] = {
    {"isbst.entry", 2},    {"isbst.build_loop", 2}, {"isbst.check", 1},  {"isbst.null", 1},
    {"isbst.min_test", 1}, {"isbst.min_fail", 1},   {"isbst.max_test", 1}, {"isbst.max_fail", 1},
    {"isbst.left", 1},     {"isbst.left_fail", 1},  {"isbst.right", 1},  {"isbst.result", 1},
};

bool check(const std::vector<int>& a, std::size_t idx, std::optional<int> lo, std::optional<int> hi, Tracer& t) {
  t.hit(kCheck);
  if (idx >= a.size() || a[idx] == 0) {
    t.hit(kNull);
    return true;
  }
  t.hit(kMinTest);
  if (lo && a[idx] <= *lo) {
    t.hit(kMinFail);
    return false;
  }
  t.hit(kMaxTest);
  if (hi && a[idx] >= *hi) {
    t.hit(kMaxFail);
    return false;
  }
  t.hit(kLeft);
  if (!check(a, 2 * idx + 1, lo, a[idx], t)) {
    t.hit(kLeftFail);
    return false;
  }
  t.hit(kRight);
  return check(a, 2 * idx + 2, a[idx], hi, t);
}

void run(const TargetInput& in, Tracer& t) {
  const auto& b = in.bytes();
  t.hit(kEntry);
  std::vector<int> a;
  a.reserve(b.size());
  for (auto v : b) {
    t.hit(kBuildLoop);
    a.push_back(v);
  }
  check(a, 0, std::nullopt, std::nullopt, t);
  t.hit(kResult);
}

}  // namespace isbst

// ---------------------------------------------------------------------------
// Lazy Prim minimum spanning forest. Byte 0 picks the vertex count (2..15);
// each following byte triple (u, v, w) is an undirected edge.
namespace prim {

enum : std::size_t {
  kEntry, kEdgeLoop, kSelfLoop, kAddEdge, kVertexLoop, kMarkedTest, kTreeStart, kVisit, kVisitEdge,
  kVisitPush, kSwimLoop, kSwimExch, kPqLoop, kDelMin, kSinkLoop, kSinkPick, kSinkExch, kBothMarked,
  kSkipEdge, kTakeEdge, kVisitV, kVisitW,
};

constexpr Block kBlocks[] = {
    {"prim.entry", 3},       {"prim.edge_loop", 1},  {"prim.self_loop", 1},   {"prim.add_edge", 2},
    {"prim.vertex_loop", 1}, {"prim.marked_test", 1}, {"prim.tree_start", 1}, {"prim.visit", 2},
    {"prim.visit_edge", 1},  {"prim.visit_push", 2}, {"prim.swim_loop", 1},  {"prim.swim_exch", 2},
    {"prim.pq_loop", 1},     {"prim.del_min", 4},    {"prim.sink_loop", 1},  {"prim.sink_pick", 2},
    {"prim.sink_exch", 2},   {"prim.both_marked", 1}, {"prim.skip_edge", 1}, {"prim.take_edge", 2},
    {"prim.visit_v", 1},     {"prim.visit_w", 1},
};

struct Edge {
  int u;
  int v;
  int w;
  int other(int x) const { return x == u ? v : u; }
};

class MinPq {
 public:
  explicit MinPq(Tracer& t) : t_(t) {}
  bool empty() const { return heap_.empty(); }
  void insert(const Edge& e) {
    heap_.push_back(e);
    std::size_t k = heap_.size() - 1;
    while (t_.hit(kSwimLoop), k > 0 && heap_[(k - 1) / 2].w > heap_[k].w) {
      t_.hit(kSwimExch);
      std::swap(heap_[(k - 1) / 2], heap_[k]);
      k = (k - 1) / 2;
    }
  }
  Edge del_min() {
    t_.hit(kDelMin);
    Edge top = heap_.front();
    heap_.front() = heap_.back();
    heap_.pop_back();
    std::size_t k = 0;
    while (t_.hit(kSinkLoop), 2 * k + 1 < heap_.size()) {
      t_.hit(kSinkPick);
      std::size_t j = 2 * k + 1;
      if (j + 1 < heap_.size() && heap_[j + 1].w < heap_[j].w) ++j;
      if (heap_[k].w <= heap_[j].w) break;
      t_.hit(kSinkExch);
      std::swap(heap_[k], heap_[j]);
      k = j;
    }
    return top;
  }

 private:
  Tracer& t_;
  std::vector<Edge> heap_;
};

void run(const TargetInput& in, Tracer& t) {
  const auto& b = in.bytes();
  t.hit(kEntry);
  const int vertices = b.empty() ? 2 : 2 + b[0] % 14;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> adj(vertices);
  for (std::size_t i = 1; t.hit(kEdgeLoop), i + 2 < b.size(); i += 3) {
    const int u = b[i] % vertices;
    const int v = b[i + 1] % vertices;
    const int w = b[i + 2];
    t.hit(kSelfLoop);
    if (u == v) continue;
    t.hit(kAddEdge);
    edges.push_back({u, v, w});
    adj[u].push_back(static_cast<int>(edges.size()) - 1);
    adj[v].push_back(static_cast<int>(edges.size()) - 1);
  }
  std::vector<bool> marked(vertices, false);
  MinPq pq(t);
  auto visit = [&](int x) {
    t.hit(kVisit);
    marked[x] = true;
    for (int ei : adj[x]) {
      t.hit(kVisitEdge);
      if (!marked[edges[ei].other(x)]) {
        t.hit(kVisitPush);
        pq.insert(edges[ei]);
      }
    }
  };
  for (int s = 0; t.hit(kVertexLoop), s < vertices; ++s) {
    t.hit(kMarkedTest);
    if (marked[s]) continue;
    t.hit(kTreeStart);
    visit(s);
    while (t.hit(kPqLoop), !pq.empty()) {
      const Edge e = pq.del_min();
      t.hit(kBothMarked);
      if (marked[e.u] && marked[e.v]) {
        t.hit(kSkipEdge);
        continue;
      }
      t.hit(kTakeEdge);
      if (!marked[e.u]) {
        t.hit(kVisitV);
        visit(e.u);
      }
      if (!marked[e.v]) {
        t.hit(kVisitW);
        visit(e.v);
      }
    }
  }
}

}  // namespace prim

// ---------------------------------------------------------------------------
// Synthetic targets with closed-form costs.

// Constant cost 5 on a single block.
namespace constant {
constexpr Block kBlocks[] = {{"constant.body", 5}};
void run(const TargetInput&, Tracer& t) { t.hit(0); }
}  // namespace constant

// Cost |x| when the first byte is even, |x|^2 when it is odd.
namespace parity {
enum : std::size_t { kEntry, kScanLoop, kOuterLoop, kInnerLoop };
constexpr Block kBlocks[] = {
    {"parity.entry", 0}, {"parity.scan_loop", 1}, {"parity.outer_loop", 0}, {"parity.inner_loop", 1}};
void run(const TargetInput& in, Tracer& t) {
  const auto& b = in.bytes();
  const std::size_t n = b.size();
  t.hit(kEntry);
  if (n == 0 || b[0] % 2 == 0) {
    for (std::size_t i = 0; i < n; ++i) t.hit(kScanLoop);
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    t.hit(kOuterLoop);
    for (std::size_t j = 0; j < n; ++j) t.hit(kInnerLoop);
  }
}
}  // namespace parity

// Typed-record analogue of parity: the categorical `quadratic` switch picks
// between a linear and a quadratic loop over samples x features.
namespace toggle {
enum : std::size_t { kEntry, kScanLoop, kOuterLoop, kInnerLoop };
constexpr Block kBlocks[] = {
    {"toggle.entry", 0}, {"toggle.scan_loop", 1}, {"toggle.outer_loop", 0}, {"toggle.inner_loop", 1}};
void run(const TargetInput& in, Tracer& t) {
  const auto& rec = in.record();
  const std::uint64_t n = input_size(in);
  const auto* q = rec.find("quadratic");
  const bool quadratic = q && std::get<std::string>(*q) == "true";
  t.hit(kEntry);
  if (!quadratic) {
    for (std::uint64_t i = 0; i < n; ++i) t.hit(kScanLoop);
    return;
  }
  for (std::uint64_t i = 0; i < n; ++i) {
    t.hit(kOuterLoop);
    for (std::uint64_t j = 0; j < n; ++j) t.hit(kInnerLoop);
  }
}
}  // namespace toggle

// Never terminates; exercises the execution deadline.
namespace spin {
constexpr Block kBlocks[] = {{"spin.entry", 1}, {"spin.loop", 1}};
void run(const TargetInput&, Tracer& t) {
  t.hit(0);
  for (;;) t.hit(1);
}
}  // namespace spin

// Divides by every byte; a zero byte crashes after the preceding work.
namespace divzero {
constexpr Block kBlocks[] = {{"divzero.entry", 1}, {"divzero.divide", 2}, {"divzero.fault", 1}};
void run(const TargetInput& in, Tracer& t) {
  t.hit(0);
  unsigned acc = 1000;
  for (auto v : in.bytes()) {
    if (v == 0) {
      t.hit(2);
      throw TargetCrash("division by zero");
    }
    t.hit(1);
    acc = acc / v + 1000;
  }
}
}  // namespace divzero

std::vector<TargetInput> sort_seeds() {
  return {Bytes{0x10, 0x20, 0x30, 0x40}, Bytes{0x40, 0x30, 0x20, 0x10}};
}

ParamRecord toggle_record(const char* quadratic, double tol, std::uint64_t samples, std::uint64_t features) {
  ParamRecord rec;
  rec.fields = {{"quadratic", std::string(quadratic)}, {"tol", tol}};
  rec.shape = DataShape{samples, features};
  return rec;
}

std::vector<BuiltinTarget> make_targets() {
  std::vector<BuiltinTarget> out;
  auto add = [&](std::string name, std::string display, std::span<const Block> blocks, InputDomain domain,
                 std::vector<TargetInput> seeds, void (*body)(const TargetInput&, Tracer&)) {
    out.push_back({std::move(name), std::move(display), blocks, std::move(domain), std::move(seeds), body});
  };
  add("quicksort", "Quick Sort", quicksort::kBlocks, ByteDomain{0, 16}, sort_seeds(), quicksort::run);
  add("quick3way", "3-Ways Q-Sort", quick3way::kBlocks, ByteDomain{0, 16}, sort_seeds(), quick3way::run);
  add("insertionx", "InsertionX Sort", insertionx::kBlocks, ByteDomain{0, 16}, sort_seeds(), insertionx::run);
  add("mergesort", "Merge Sort", mergesort::kBlocks, ByteDomain{0, 16}, sort_seeds(), mergesort::run);
  add("binsearch", "Binary Search", binsearch::kBlocks, ByteDomain{0, 32}, sort_seeds(), binsearch::run);
  add("seqsearch", "Seq. Search", seqsearch::kBlocks, ByteDomain{0, 32}, sort_seeds(), seqsearch::run);
  add("boyermoore", "Boyer Moore", boyermoore::kBlocks, ByteDomain{0, 32}, sort_seeds(), boyermoore::run);
  add("bstinsert", "BST Insert", bstinsert::kBlocks, ByteDomain{0, 16}, sort_seeds(), bstinsert::run);
  add("isbst", "Is BST", isbst::kBlocks, ByteDomain{0, 31}, sort_seeds(), isbst::run);
  add("prim", "Prim's MST", prim::kBlocks, ByteDomain{0, 40}, sort_seeds(), prim::run);

  add("constant", "Constant", constant::kBlocks, ByteDomain{0, 16}, sort_seeds(), constant::run);
  add("parity", "Parity", parity::kBlocks, ByteDomain{0, 16}, sort_seeds(), parity::run);
  RecordDomain toggle_domain;
  toggle_domain.params = {{"quadratic", CategoricalRange{{"false", "true"}}}, {"tol", RealRange{1e-4, 1.0}}};
  toggle_domain.shape = ShapeRange{1, 8, 1, 4};
  add("toggle", "Toggle", toggle::kBlocks, toggle_domain,
      {toggle_record("false", 0.1, 2, 2), toggle_record("false", 0.5, 4, 2)}, toggle::run);
  add("spin", "Spin", spin::kBlocks, ByteDomain{0, 16}, {Bytes{1}}, spin::run);
  add("divzero", "Div Zero", divzero::kBlocks, ByteDomain{0, 16}, {Bytes{1, 2, 3}}, divzero::run);
  return out;
}

}  // namespace

const std::vector<BuiltinTarget>& builtin_targets() {
  static const std::vector<BuiltinTarget> targets = make_targets();
  return targets;
}

const BuiltinTarget* find_builtin(std::string_view name) {
  for (const auto& t : builtin_targets())
    if (t.name == name) return &t;
  return nullptr;
}

const std::vector<std::string>& benchmark_names() {
  static const std::vector<std::string> names = {"quicksort", "quick3way", "insertionx", "mergesort", "binsearch",
                                                 "seqsearch", "boyermoore", "bstinsert",  "isbst",     "prim"};
  return names;
}

}  // namespace dpfuzz

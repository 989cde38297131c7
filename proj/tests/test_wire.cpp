#include <sstream>

#include "doctest.h"
#include "dpfuzz/rng.hpp"
#include "dpfuzz/wire.hpp"
#include "trace_corpus.hpp"

using namespace dpfuzz;

TEST_CASE("minimal traces") {
  const auto t = parse_external_trace("DPFUZZ1\nEDGE 3\nEDGE 7\nCOST 42\n");
  CHECK(t.edges == EdgeSet{3, 7});
  CHECK(t.cost == 42);
  const auto empty = parse_external_trace("DPFUZZ1\nCOST 0\n");
  CHECK(empty.edges.empty());
  CHECK(empty.cost == 0);
}

TEST_CASE("missing header is blamed on line 1") {
  try {
    parse_external_trace("EDGE 3\nCOST 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(std::string(e.what()).rfind("line 1:", 0) == 0);
  }
}

TEST_CASE("valid corpus parses exactly") {
  for (const auto& v : corpus::valid_traces()) {
    CAPTURE(v.text);
    const auto t = parse_external_trace(v.text);
    CHECK(t.edges == v.edges);
    CHECK(t.counts == v.counts);
    CHECK(t.cost == v.cost);
    std::istringstream in(v.text);
    CHECK(parse_external_trace(in) == t);
  }
}

TEST_CASE("invalid corpus is rejected at the offending line") {
  for (const auto& v : corpus::invalid_traces()) {
    CAPTURE(v.text);
    try {
      parse_external_trace(v.text);
      FAIL("accepted an invalid trace");
    } catch (const ParseError& e) {
      CHECK(e.line() == v.line);
    }
  }
}

TEST_CASE("partial traces keep what precedes the fault") {
  const auto t = parse_partial_trace("DPFUZZ1\nEDGE 4\nEDGE 2\nCOUNT a 3\nEDGE 9\n");
  CHECK(t.edges == EdgeSet{2, 4});
  CHECK(t.counts.at("a") == 3);
  CHECK(t.cost == 0);
  CHECK(parse_partial_trace("garbage").edges.empty());
}

TEST_CASE("write_trace round-trips random fragments") {
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    TraceFragment f;
    std::vector<std::uint64_t> edges;
    for (auto n = rng.below(10); n > 0; --n) edges.push_back(rng.next());
    f.edges = make_edge_set(edges);
    for (auto n = rng.below(5); n > 0; --n) f.counts["c" + std::to_string(rng.below(100))] = rng.next();
    f.cost = rng.next();
    CHECK(parse_external_trace(write_trace(f)) == f);
  }
}

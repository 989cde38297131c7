#include "dpfuzz/explain.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace dpfuzz {

void FeatureMatrix::check() const {
  if (provenance.size() != rows.size()) throw ExplainError("feature matrix: provenance/row count mismatch");
  for (const auto& row : rows) {
    if (row.size() != columns.size()) throw ExplainError("feature matrix is not rectangular");
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].kind != ColumnKind::categorical) continue;
      const double v = row[c];
      if (v < 0 || v >= static_cast<double>(columns[c].categories.size()) || v != static_cast<double>(static_cast<std::size_t>(v)))
        throw ExplainError("categorical cell outside its value set in column '" + columns[c].name + "'");
    }
  }
}

namespace {

constexpr std::size_t kLeadingBytes = 4;

FeatureMatrix byte_features(std::span<const TargetInput> inputs) {
  FeatureMatrix m;
  m.columns.push_back({"size", ColumnKind::numeric, {}});
  for (std::size_t i = 0; i < kLeadingBytes; ++i) {
    m.columns.push_back({"byte" + std::to_string(i), ColumnKind::numeric, {}});
    m.columns.push_back({"byte" + std::to_string(i) + ".odd", ColumnKind::numeric, {}});
  }
  for (const auto& in : inputs) {
    const auto& b = in.bytes();
    std::vector<double> row{static_cast<double>(b.size())};
    for (std::size_t i = 0; i < kLeadingBytes; ++i) {
      row.push_back(i < b.size() ? b[i] : -1.0);
      row.push_back(i < b.size() ? b[i] % 2 : -1.0);
    }
    m.rows.push_back(std::move(row));
    m.provenance.push_back(to_hex(b));
  }
  return m;
}

std::string describe(const ParamRecord& rec) {
  std::string out;
  for (const auto& [name, value] : rec.fields) {
    if (!out.empty()) out += ",";
    out += name + "=";
    std::visit(
        [&](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, std::string>) out += v;
          else out += std::to_string(v);
        },
        value);
  }
  if (rec.shape) out += ",shape=" + std::to_string(rec.shape->samples) + "x" + std::to_string(rec.shape->features);
  return out;
}

FeatureMatrix record_features(std::span<const TargetInput> inputs) {
  const auto& first = inputs.front().record();
  // The declared size field is reported once, as the size column.
  auto is_size_field = [&](std::size_t f) { return first.size_field && first.fields[f].first == *first.size_field; };
  FeatureMatrix m;
  std::vector<std::size_t> field_column(first.fields.size(), 0);
  for (std::size_t f = 0; f < first.fields.size(); ++f) {
    if (is_size_field(f)) continue;
    field_column[f] = m.columns.size();
    const bool categorical = std::holds_alternative<std::string>(first.fields[f].second);
    Column col{first.fields[f].first, categorical ? ColumnKind::categorical : ColumnKind::numeric, {}};
    if (categorical) {
      std::set<std::string> seen;
      for (const auto& in : inputs) {
        const auto& fields = in.record().fields;
        if (f >= fields.size()) continue;  // layout mismatch is reported below
        if (const auto* s = std::get_if<std::string>(&fields[f].second)) seen.insert(*s);
      }
      col.categories.assign(seen.begin(), seen.end());
    }
    m.columns.push_back(std::move(col));
  }
  const bool shaped = first.shape.has_value();
  if (shaped) {
    m.columns.push_back({"samples", ColumnKind::numeric, {}});
    m.columns.push_back({"features", ColumnKind::numeric, {}});
  }
  m.columns.push_back({"size", ColumnKind::numeric, {}});

  for (const auto& in : inputs) {
    const auto& rec = in.record();
    if (rec.fields.size() != first.fields.size() || rec.shape.has_value() != shaped)
      throw ExplainError("parameter records do not share one layout");
    std::vector<double> row;
    for (std::size_t f = 0; f < rec.fields.size(); ++f) {
      const auto& value = rec.fields[f].second;
      if (rec.fields[f].first != first.fields[f].first) throw ExplainError("parameter records do not share one layout");
      if (is_size_field(f)) continue;
      const auto& col = m.columns[field_column[f]];
      if (col.kind == ColumnKind::categorical) {
        const auto* s = std::get_if<std::string>(&value);
        if (!s) throw ExplainError("field '" + rec.fields[f].first + "' mixes categorical and numeric values");
        const auto& cats = col.categories;
        row.push_back(static_cast<double>(std::lower_bound(cats.begin(), cats.end(), *s) - cats.begin()));
      } else if (const auto* i = std::get_if<std::int64_t>(&value)) {
        row.push_back(static_cast<double>(*i));
      } else if (const auto* d = std::get_if<double>(&value)) {
        row.push_back(*d);
      } else {
        throw ExplainError("field '" + rec.fields[f].first + "' mixes categorical and numeric values");
      }
    }
    if (shaped) {
      row.push_back(static_cast<double>(rec.shape->samples));
      row.push_back(static_cast<double>(rec.shape->features));
    }
    row.push_back(static_cast<double>(input_size(in)));
    m.rows.push_back(std::move(row));
    m.provenance.push_back(describe(rec));
  }
  return m;
}

}  // namespace

FeatureMatrix extract_param_features(std::span<const TargetInput> inputs) {
  if (inputs.empty()) throw ExplainError("no inputs to extract features from");
  const bool bytes = inputs.front().is_bytes();
  for (const auto& in : inputs)
    if (in.is_bytes() != bytes) throw ExplainError("population mixes byte payloads and parameter records");
  return bytes ? byte_features(inputs) : record_features(inputs);
}

FeatureMatrix extract_param_features(const PopulationMap& pop) {
  std::vector<TargetInput> inputs;
  for (const auto& [path, list] : pop) inputs.insert(inputs.end(), list.begin(), list.end());
  return extract_param_features(inputs);
}

FeatureMatrix extract_internal_features(std::span<const ExecutionRecord> records) {
  if (records.empty()) throw ExplainError("no execution records");
  std::set<std::string> names;
  for (const auto& r : records) {
    if (r.status != ExecStatus::ok) continue;
    for (const auto& [name, count] : r.internal_counts) names.insert(name);
  }
  FeatureMatrix m;
  for (const auto& name : names) m.columns.push_back({name, ColumnKind::numeric, {}});
  for (const auto& r : records) {
    if (r.status != ExecStatus::ok) continue;
    std::vector<double> row;
    row.reserve(names.size());
    for (const auto& name : names) {
      const auto it = r.internal_counts.find(name);
      row.push_back(it == r.internal_counts.end() ? 0.0 : static_cast<double>(it->second));
    }
    m.rows.push_back(std::move(row));
    m.provenance.push_back(r.input.is_bytes() ? to_hex(r.input.bytes()) : describe(r.input.record()));
  }
  if (m.rows.empty()) throw ExplainError("no execution record ran ok");
  return m;
}

// ---------------------------------------------------------------------------
// CART

namespace {

constexpr double kGainTolerance = 1e-12;

struct Counts {
  std::map<std::size_t, std::size_t> by_label;
  std::size_t total = 0;
  void add(std::size_t label) {
    ++by_label[label];
    ++total;
  }
  void remove(std::size_t label) {
    if (--by_label[label] == 0) by_label.erase(label);
    --total;
  }
  double gini() const {
    if (total == 0) return 0.0;
    double s = 0.0;
    for (const auto& [label, c] : by_label) {
      const double p = static_cast<double>(c) / static_cast<double>(total);
      s += p * p;
    }
    return 1.0 - s;
  }
};

struct Split {
  std::size_t feature = 0;
  bool categorical = false;
  double threshold = 0.0;
  double gain = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const FeatureMatrix& m, std::span<const std::size_t> labels, const TreeConfig& cfg)
      : m_(m), labels_(labels), cfg_(cfg) {}

  DecisionTree build() {
    tree_.columns = m_.columns;
    std::vector<std::size_t> rows(m_.row_count());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    grow(rows, 0);
    return std::move(tree_);
  }

 private:
  std::size_t grow(const std::vector<std::size_t>& rows, std::size_t depth) {
    const std::size_t id = tree_.nodes.size();
    tree_.nodes.emplace_back();
    Counts counts;
    for (auto r : rows) counts.add(labels_[r]);
    {
      auto& node = tree_.nodes[id];
      std::size_t best = 0;
      for (const auto& [label, c] : counts.by_label) {
        if (c > best) {
          best = c;
          node.label = label;
        }
      }
      node.support = rows.size();
      node.purity = static_cast<double>(best) / static_cast<double>(rows.size());
      node.gini = counts.gini();
    }
    if (depth >= cfg_.max_depth || tree_.nodes[id].gini <= 0.0) return id;
    const auto split = best_split(rows, counts);
    if (!split) return id;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (auto r : rows) (goes_left(*split, m_.rows[r][split->feature]) ? left : right).push_back(r);
    const auto l = grow(left, depth + 1);
    const auto rr = grow(right, depth + 1);
    auto& node = tree_.nodes[id];
    node.leaf = false;
    node.feature = split->feature;
    node.categorical = split->categorical;
    node.threshold = split->threshold;
    node.gain = split->gain;
    node.left = l;
    node.right = rr;
    return id;
  }

  static bool goes_left(const Split& s, double v) { return s.categorical ? v == s.threshold : v <= s.threshold; }

  std::optional<Split> best_split(const std::vector<std::size_t>& rows, const Counts& parent) const {
    const double n = static_cast<double>(rows.size());
    const double parent_gini = parent.gini();
    std::optional<Split> best;
    auto consider = [&](const Split& cand) {
      if (cand.gain < -kGainTolerance) return;
      if (!best || cand.gain > best->gain + kGainTolerance) best = cand;
    };
    for (std::size_t f = 0; f < m_.columns.size(); ++f) {
      std::vector<std::pair<double, std::size_t>> vals;
      vals.reserve(rows.size());
      for (auto r : rows) vals.emplace_back(m_.rows[r][f], labels_[r]);
      std::sort(vals.begin(), vals.end());

      if (m_.columns[f].kind == ColumnKind::numeric) {
        Counts left;
        Counts right = parent;
        for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
          left.add(vals[i].second);
          right.remove(vals[i].second);
          if (vals[i].first == vals[i + 1].first) continue;
          if (left.total < cfg_.min_leaf || right.total < cfg_.min_leaf) continue;
          const double weighted =
              (static_cast<double>(left.total) * left.gini() + static_cast<double>(right.total) * right.gini()) / n;
          consider({f, false, 0.5 * (vals[i].first + vals[i + 1].first), parent_gini - weighted});
        }
      } else {
        // vals is sorted by category index, so groups come in lexicographic order.
        for (std::size_t i = 0; i < vals.size();) {
          std::size_t j = i;
          Counts in;
          while (j < vals.size() && vals[j].first == vals[i].first) in.add(vals[j++].second);
          if (in.total == rows.size()) break;
          Counts out = parent;
          for (std::size_t k = i; k < j; ++k) out.remove(vals[k].second);
          if (in.total >= cfg_.min_leaf && out.total >= cfg_.min_leaf) {
            const double weighted =
                (static_cast<double>(in.total) * in.gini() + static_cast<double>(out.total) * out.gini()) / n;
            consider({f, true, vals[i].first, parent_gini - weighted});
          }
          i = j;
        }
      }
    }
    return best;
  }

  const FeatureMatrix& m_;
  std::span<const std::size_t> labels_;
  TreeConfig cfg_;
  DecisionTree tree_;
};

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

DecisionTree learn_tree(const FeatureMatrix& features, std::span<const std::size_t> labels, const TreeConfig& config) {
  features.check();
  if (features.row_count() == 0) throw ExplainError("learn_tree: no rows");
  if (labels.size() != features.row_count()) throw ExplainError("learn_tree: label count does not match rows");
  if (config.min_leaf == 0) throw ExplainError("learn_tree: min_leaf must be positive");
  return TreeBuilder(features, labels, config).build();
}

std::size_t DecisionTree::leaf_for(std::span<const double> row) const {
  std::size_t id = 0;
  while (!nodes[id].leaf) {
    const auto& n = nodes[id];
    const double v = row[n.feature];
    const bool left = n.categorical ? v == n.threshold : v <= n.threshold;
    id = left ? n.left : n.right;
  }
  return id;
}

std::size_t DecisionTree::depth() const {
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  std::size_t deepest = 0;
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    if (!nodes[id].leaf) {
      stack.emplace_back(nodes[id].left, d + 1);
      stack.emplace_back(nodes[id].right, d + 1);
    }
  }
  return deepest;
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const auto& n) { return n.leaf; }));
}

std::string DecisionTree::predicate(const TreeNode& split, bool left_branch) const {
  const auto& col = columns[split.feature];
  if (split.categorical) {
    const auto& cat = col.categories[static_cast<std::size_t>(split.threshold)];
    return col.name + (left_branch ? " = " : " != ") + cat;
  }
  return col.name + (left_branch ? " <= " : " > ") + format_number(split.threshold);
}

double training_accuracy(const DecisionTree& tree, const FeatureMatrix& features, std::span<const std::size_t> labels) {
  if (features.row_count() == 0) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < features.row_count(); ++i)
    if (tree.classify(features.rows[i]) == labels[i]) ++correct;
  return static_cast<double>(correct) / static_cast<double>(features.row_count());
}

std::string Rule::text() const {
  std::string out;
  for (const auto& c : conjuncts) {
    if (!out.empty()) out += " && ";
    out += c;
  }
  return out.empty() ? "true" : out;
}

std::map<std::size_t, std::vector<Rule>> tree_predicates(const DecisionTree& tree) {
  std::map<std::size_t, std::vector<Rule>> out;
  struct Frame {
    std::size_t id;
    std::vector<std::string> path;
  };
  std::vector<Frame> stack{{0, {}}};
  while (!stack.empty()) {
    auto frame = std::move(stack.back());
    stack.pop_back();
    const auto& node = tree.nodes[frame.id];
    if (node.leaf) {
      out[node.label].push_back({frame.path, node.purity, node.support});
      continue;
    }
    auto right = frame.path;
    right.push_back(tree.predicate(node, false));
    frame.path.push_back(tree.predicate(node, true));
    // Push right first so the left branch is reported first.
    stack.push_back({node.right, std::move(right)});
    stack.push_back({node.left, std::move(frame.path)});
  }
  return out;
}

Explanation explain(const PopulationMap& pop, const std::map<PathId, std::size_t>& labels, const TargetSpec& spec,
                    const ExplainOptions& options) {
  std::vector<TargetInput> inputs;
  std::vector<std::size_t> row_labels;
  for (const auto& [path, list] : pop) {
    const auto it = labels.find(path);
    if (it == labels.end()) continue;
    for (const auto& in : list) {
      inputs.push_back(in);
      row_labels.push_back(it->second);
    }
  }
  if (inputs.empty()) throw ExplainError("no population input lies on a labeled path");

  Explanation out;
  if (options.input_space) {
    SpaceExplanation s;
    s.features = extract_param_features(inputs);
    s.labels = row_labels;
    s.tree = learn_tree(s.features, s.labels, options.tree);
    s.accuracy = training_accuracy(s.tree, s.features, s.labels);
    s.predicates = tree_predicates(s.tree);
    out.input = std::move(s);
  }
  if (options.internal_space) {
    std::vector<ExecutionRecord> records;
    std::vector<std::size_t> ok_labels;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      auto rec = run_instrumented(spec, inputs[i]);
      if (rec.status != ExecStatus::ok) {
        ++out.failed_runs;
        continue;
      }
      records.push_back(std::move(rec));
      ok_labels.push_back(row_labels[i]);
    }
    if (2 * out.failed_runs > inputs.size())
      throw ExplainError("instrumented re-execution failed for " + std::to_string(out.failed_runs) + " of " +
                         std::to_string(inputs.size()) + " inputs");
    SpaceExplanation s;
    s.features = extract_internal_features(records);
    s.labels = std::move(ok_labels);
    s.tree = learn_tree(s.features, s.labels, options.tree);
    s.accuracy = training_accuracy(s.tree, s.features, s.labels);
    s.predicates = tree_predicates(s.tree);
    out.internal = std::move(s);
  }
  return out;
}

}  // namespace dpfuzz

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpfuzz/fuzz.hpp"
#include "dpfuzz/harness.hpp"

namespace dpfuzz {

enum class ColumnKind { numeric, categorical };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::numeric;
  // Categorical columns store the index into this sorted list as the cell
  // value, so index order is lexicographic order.
  std::vector<std::string> categories;
};

struct FeatureMatrix {
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> provenance;  // one tag per row

  std::size_t row_count() const { return rows.size(); }
  void check() const;  // rectangular, categorical cells in range
};

class ExplainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One row per input. Typed records give one column per parameter, then the
// shape dimensions, then size (a declared size field appears only as size).
// Byte payloads give size and, for the first four bytes, the value and its
// low bit (-1 when the byte is absent).
FeatureMatrix extract_param_features(const PopulationMap& pop);
FeatureMatrix extract_param_features(std::span<const TargetInput> inputs);

// One numeric column per internal count name seen in any ok record; absent
// counts are 0. Records that did not run ok are skipped.
FeatureMatrix extract_internal_features(std::span<const ExecutionRecord> records);

struct TreeConfig {
  std::size_t max_depth = 5;
  std::size_t min_leaf = 2;
};

struct TreeNode {
  bool leaf = true;
  // split
  std::size_t feature = 0;
  bool categorical = false;
  double threshold = 0.0;  // numeric: value <= threshold goes left; categorical: category index == threshold
  std::size_t left = 0;
  std::size_t right = 0;
  double gain = 0.0;
  // every node
  std::size_t label = 0;  // majority label, ties to the smaller label
  double purity = 1.0;
  std::size_t support = 0;
  double gini = 0.0;
};

struct DecisionTree {
  std::vector<Column> columns;
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  std::size_t leaf_for(std::span<const double> row) const;
  std::size_t classify(std::span<const double> row) const { return nodes[leaf_for(row)].label; }
  std::size_t depth() const;
  std::size_t leaf_count() const;
  // Human-readable predicate for the left (true) or right branch of a split.
  std::string predicate(const TreeNode& split, bool left_branch) const;
};

// Greedy binary CART on Gini impurity. Candidate thresholds are midpoints of
// consecutive distinct values; categorical splits are one-vs-rest. Among
// equal gains the lower feature index, then the lower threshold (or the
// lexicographically smaller category) wins. A split needs min_leaf rows on
// each side and must not increase impurity.
DecisionTree learn_tree(const FeatureMatrix& features, std::span<const std::size_t> labels,
                        const TreeConfig& config = {});

double training_accuracy(const DecisionTree& tree, const FeatureMatrix& features, std::span<const std::size_t> labels);

struct Rule {
  std::vector<std::string> conjuncts;  // empty means "true"
  double purity = 1.0;
  std::size_t support = 0;
  std::string text() const;
};

// Label -> one rule per leaf carrying that label.
std::map<std::size_t, std::vector<Rule>> tree_predicates(const DecisionTree& tree);

struct ExplainOptions {
  TreeConfig tree;
  bool input_space = true;
  bool internal_space = true;
};

struct SpaceExplanation {
  FeatureMatrix features;
  std::vector<std::size_t> labels;
  DecisionTree tree;
  double accuracy = 0.0;
  std::map<std::size_t, std::vector<Rule>> predicates;
};

struct Explanation {
  std::optional<SpaceExplanation> input;
  std::optional<SpaceExplanation> internal;
  std::size_t failed_runs = 0;
};

// Learns one tree over input parameters and one over internal counts of
// re-executed inputs. Only inputs on labeled paths take part. Throws
// ExplainError when no input is labeled or more than half the re-executions
// fail.
Explanation explain(const PopulationMap& pop, const std::map<PathId, std::size_t>& labels, const TargetSpec& spec,
                    const ExplainOptions& options = {});

}  // namespace dpfuzz

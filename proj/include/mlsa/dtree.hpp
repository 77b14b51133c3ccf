#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mlsa/features.hpp"

namespace mlsa {

// Binary C4.5-style tree over numeric features: thresholds at midpoints of
// consecutive distinct values, attribute chosen by gain ratio among those
// with at least average information gain, pessimistic error pruning.

struct TreeConfig {
  double confidence = 0.25;
  std::size_t min_leaf = 2;
  bool prune = true;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;  // go left when x[feature] <= threshold
  int left = -1;
  int right = -1;
  std::size_t pos = 0;  // training rows reaching this node, by class
  std::size_t neg = 0;

  bool is_leaf() const { return feature < 0; }
};

struct TreeModel {
  std::size_t inputs = 0;
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  TreeConfig config;

  std::size_t depth() const;
  std::size_t leaf_count() const;
  /// Leaf reached by the row.
  const TreeNode& leaf_for(std::span<const double> row) const;
};

TreeModel train_dtree(const Dataset& train, const TreeConfig& config);

/// Positive-class proportion at the leaf minus 0.5.
double tree_decision(const TreeModel& model, std::span<const double> row);

/// Upper-confidence estimate of the extra errors at a leaf covering n rows
/// with e observed errors (C4.5's pessimistic correction).
double pessimistic_extra_errors(double n, double e, double confidence);

/// Inverse of the standard normal CDF.
double normal_quantile(double p);

}  // namespace mlsa

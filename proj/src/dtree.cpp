#include "mlsa/dtree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mlsa/error.hpp"

namespace mlsa {

namespace {

double entropy(double pos, double neg) {
  const double n = pos + neg;
  double h = 0.0;
  for (double c : {pos, neg}) {
    if (c > 0) h -= (c / n) * std::log2(c / n);
  }
  return h;
}

struct Candidate {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
  double ratio = 0.0;
};

class Builder {
 public:
  Builder(const Dataset& data, const TreeConfig& cfg) : data_(data), cfg_(cfg) {}

  int grow(std::vector<std::size_t> rows) {
    TreeNode node;
    for (auto i : rows) (data_.label(i) == Label::positive ? node.pos : node.neg)++;
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(node);

    if (node.pos == 0 || node.neg == 0 || rows.size() < 2 * cfg_.min_leaf) return id;

    const Candidate best = choose_split(rows);
    if (best.feature < 0) return id;

    std::vector<std::size_t> left, right;
    for (auto i : rows) {
      (data_.row(i)[static_cast<std::size_t>(best.feature)] <= best.threshold ? left : right).push_back(i);
    }
    rows.clear();
    rows.shrink_to_fit();
    const int l = grow(std::move(left));
    const int r = grow(std::move(right));
    nodes_[id].feature = best.feature;
    nodes_[id].threshold = best.threshold;
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  std::vector<TreeNode> take() { return std::move(nodes_); }

 private:
  // Best threshold per feature by information gain, then the feature with the
  // highest gain ratio among those whose gain reaches the average.
  Candidate choose_split(const std::vector<std::size_t>& rows) const {
    const double n = static_cast<double>(rows.size());
    double total_pos = 0;
    for (auto i : rows) total_pos += data_.label(i) == Label::positive;
    const double base = entropy(total_pos, n - total_pos);

    std::vector<Candidate> per_feature;
    std::vector<std::pair<double, Label>> col(rows.size());
    for (std::size_t f = 0; f < data_.width(); ++f) {
      for (std::size_t k = 0; k < rows.size(); ++k) col[k] = {data_.row(rows[k])[f], data_.label(rows[k])};
      std::sort(col.begin(), col.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      Candidate best;
      double left_pos = 0;
      for (std::size_t k = 0; k + 1 < col.size(); ++k) {
        left_pos += col[k].second == Label::positive;
        if (col[k].first == col[k + 1].first) continue;
        const double nl = static_cast<double>(k + 1);
        const double nr = n - nl;
        if (nl < static_cast<double>(cfg_.min_leaf) || nr < static_cast<double>(cfg_.min_leaf)) continue;
        const double right_pos = total_pos - left_pos;
        const double gain = base - (nl / n) * entropy(left_pos, nl - left_pos) -
                            (nr / n) * entropy(right_pos, nr - right_pos);
        if (best.feature < 0 || gain > best.gain + 1e-12) {
          const double split_info = entropy(nl, nr);
          double mid = col[k].first + (col[k + 1].first - col[k].first) / 2.0;
          if (mid >= col[k + 1].first) mid = col[k].first;  // adjacent doubles
          best = {static_cast<int>(f), mid, std::max(gain, 0.0), std::max(gain, 0.0) / split_info};
        }
      }
      if (best.feature >= 0) per_feature.push_back(best);
    }
    if (per_feature.empty()) return {};

    const double avg_gain =
        std::accumulate(per_feature.begin(), per_feature.end(), 0.0,
                        [](double s, const Candidate& c) { return s + c.gain; }) /
        static_cast<double>(per_feature.size());
    Candidate chosen;
    for (const auto& c : per_feature) {
      if (c.gain + 1e-12 < avg_gain) continue;
      if (chosen.feature < 0 || c.ratio > chosen.ratio + 1e-12) chosen = c;
    }
    return chosen;
  }

  const Dataset& data_;
  const TreeConfig& cfg_;
  std::vector<TreeNode> nodes_;
};

double leaf_errors(const TreeNode& n) { return static_cast<double>(std::min(n.pos, n.neg)); }

double estimated_leaf_errors(const TreeNode& n, double cf) {
  const double total = static_cast<double>(n.pos + n.neg);
  const double e = leaf_errors(n);
  return e + pessimistic_extra_errors(total, e, cf);
}

// Returns the estimated errors of the (possibly collapsed) subtree.
double prune(std::vector<TreeNode>& nodes, int id, double cf) {
  TreeNode& node = nodes[static_cast<std::size_t>(id)];
  if (node.is_leaf()) return estimated_leaf_errors(node, cf);
  const double subtree = prune(nodes, node.left, cf) + prune(nodes, node.right, cf);
  TreeNode& again = nodes[static_cast<std::size_t>(id)];
  const double as_leaf = estimated_leaf_errors(again, cf);
  if (as_leaf <= subtree + 0.1) {
    again.feature = -1;
    again.left = again.right = -1;
    return as_leaf;
  }
  return subtree;
}

int compact(const std::vector<TreeNode>& in, int id, std::vector<TreeNode>& out) {
  const TreeNode& src = in[static_cast<std::size_t>(id)];
  const int nid = static_cast<int>(out.size());
  out.push_back(src);
  if (!src.is_leaf()) {
    const int l = compact(in, src.left, out);
    const int r = compact(in, src.right, out);
    out[static_cast<std::size_t>(nid)].left = l;
    out[static_cast<std::size_t>(nid)].right = r;
  }
  return nid;
}

std::size_t depth_of(const std::vector<TreeNode>& nodes, int id) {
  const auto& n = nodes[static_cast<std::size_t>(id)];
  if (n.is_leaf()) return 0;
  return 1 + std::max(depth_of(nodes, n.left), depth_of(nodes, n.right));
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile: p must lie in (0, 1)");
  double lo = -40.0, hi = 40.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (0.5 * std::erfc(-mid / std::sqrt(2.0)) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double pessimistic_extra_errors(double n, double e, double cf) {
  if (n <= 0) return 0.0;
  if (e < 1.0) {
    const double base = n * (1.0 - std::pow(cf, 1.0 / n));
    if (e == 0.0) return base;
    return base + e * (pessimistic_extra_errors(n, 1.0, cf) - base);
  }
  if (e + 0.5 >= n) return std::max(n - e, 0.0);
  const double z = normal_quantile(1.0 - cf);
  const double f = (e + 0.5) / n;
  const double r = (f + z * z / (2 * n) + z * std::sqrt(f / n - f * f / n + z * z / (4 * n * n))) /
                   (1 + z * z / n);
  return r * n - e;
}

std::size_t TreeModel::depth() const { return nodes.empty() ? 0 : depth_of(nodes, 0); }

std::size_t TreeModel::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

const TreeNode& TreeModel::leaf_for(std::span<const double> row) const {
  if (row.size() != inputs) {
    throw DomainError("row width " + std::to_string(row.size()) + " does not match model width " +
                      std::to_string(inputs));
  }
  const TreeNode* n = &nodes.at(0);
  while (!n->is_leaf()) {
    n = &nodes[static_cast<std::size_t>(row[static_cast<std::size_t>(n->feature)] <= n->threshold
                                            ? n->left
                                            : n->right)];
  }
  return *n;
}

TreeModel train_dtree(const Dataset& train, const TreeConfig& config) {
  if (train.empty()) throw DataError("decision tree: empty training set");
  if (config.min_leaf == 0) throw ConfigError("decision tree: min_leaf must be >= 1");
  if (!(config.confidence > 0.0 && config.confidence < 1.0)) {
    throw ConfigError("decision tree: confidence must lie in (0, 1)");
  }
  std::vector<std::size_t> rows(train.size());
  std::iota(rows.begin(), rows.end(), 0);
  Builder b(train, config);
  b.grow(std::move(rows));
  std::vector<TreeNode> nodes = b.take();
  if (config.prune) prune(nodes, 0, config.confidence);

  TreeModel model;
  model.inputs = train.width();
  model.config = config;
  compact(nodes, 0, model.nodes);
  return model;
}

double tree_decision(const TreeModel& model, std::span<const double> row) {
  const TreeNode& leaf = model.leaf_for(row);
  return static_cast<double>(leaf.pos) / static_cast<double>(leaf.pos + leaf.neg) - 0.5;
}

}  // namespace mlsa

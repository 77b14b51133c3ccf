#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mlsa/classifier.hpp"
#include "mlsa/features.hpp"

namespace mlsa {

/// Per-row fold index in [0, k).
struct FoldSplit {
  std::size_t k = 0;
  std::vector<std::size_t> fold_of;

  std::vector<std::size_t> test_indices(std::size_t fold) const;
  std::vector<std::size_t> train_indices(std::size_t fold) const;

  friend bool operator==(const FoldSplit&, const FoldSplit&) = default;
};

/// Each class is shuffled with a seeded counter RNG and dealt round-robin
/// into k folds, so per-fold class counts differ by at most one.
/// Throws DomainError when k < 2 or a class has fewer than k rows.
FoldSplit stratified_kfold(std::span<const Label> labels, std::size_t k, std::uint64_t seed);
FoldSplit stratified_kfold(const Dataset& data, std::size_t k, std::uint64_t seed);

struct ConfusionCounts {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  std::size_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts confusion(std::span<const Label> predicted, std::span<const Label> actual);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

/// Positive and negative class metrics. A zero denominator yields 0 and a
/// flag such as "pos.precision" naming the metric.
struct MetricSet {
  ClassMetrics pos;
  ClassMetrics neg;
  std::vector<std::string> flags;
};

MetricSet class_metrics(const ConfusionCounts& c);

struct FoldReport {
  std::size_t fold = 0;
  ConfusionCounts train_counts;
  ConfusionCounts test_counts;
  MetricSet train;
  MetricSet test;
};

struct ReportMeta {
  std::string classifier;
  std::string level;
  std::string formula;           // prior formula
  std::string sentence_formula;  // empty at term level
  std::string variant;
  bool rules = false;
  std::size_t k = 0;
  std::uint64_t seed = 0;
};

struct EvalReport {
  ReportMeta meta;
  std::vector<FoldReport> folds;
  MetricSet average_train;  // unweighted mean over folds
  MetricSet average_test;
};

/// For every fold: train on the complement (normalisation included in the
/// model), then score both partitions. `models`, when given, receives the
/// per-fold models in fold order.
EvalReport run_cv(const Dataset& data, const ClassifierConfig& config, std::size_t k,
                  std::uint64_t seed, std::vector<Model>* models = nullptr);

/// {meta:{...}, folds:[{fold, train:{pos:{p,r,f},neg:{...}}, test:{...}}], average:{train, test}}
std::string report_json(const EvalReport& report);

}  // namespace mlsa

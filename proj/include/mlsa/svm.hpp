#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mlsa/features.hpp"
#include "mlsa/normalization.hpp"

namespace mlsa {

struct SvmConfig {
  double C = 1.0;
  std::optional<double> gamma;  // default 1 / num_features
  double tol = 1e-3;
  std::size_t max_passes = 1000;  // iteration cap = max_passes * rows
};

/// Soft-margin RBF SVM. Only rows with alpha > 0 are kept.
struct SvmModel {
  std::size_t inputs = 0;
  std::vector<std::vector<double>> support_vectors;  // normalised
  std::vector<double> alphas;                        // in [0, C]
  std::vector<int> labels;                           // +1 / -1
  double bias = 0.0;                                 // decision = sum + bias
  double gamma = 0.0;
  double C = 1.0;
  NormalizationParams norm;
  std::size_t iterations = 0;
  bool converged = false;
};

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma);

/// Dual coordinate-pair ascent (SMO) with second-order working-set
/// selection; stops when the maximal KKT violation is <= tol.
/// Throws DataError on single-class data.
SvmModel train_svm(const Dataset& train, const SvmConfig& config);

double svm_decision(const SvmModel& model, std::span<const double> row);

}  // namespace mlsa

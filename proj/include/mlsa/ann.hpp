#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mlsa/features.hpp"
#include "mlsa/normalization.hpp"

namespace mlsa {

// Feed-forward network: inputs -> tanh hidden layer -> single tanh output,
// targets +1 (positive) / -1 (negative), mean squared error.
//
// Training is full-batch gradient descent with momentum and an adaptive
// learning rate: a step that raises the error by more than max_perf_inc is
// rejected (lr *= lr_down, momentum cleared); an accepted step that lowers
// the error grows the rate (lr *= lr_up).

struct AnnConfig {
  std::size_t hidden = 15;
  std::size_t restarts = 4;
  std::size_t max_epochs = 500;
  double lr = 0.01;
  double momentum = 0.9;
  double lr_up = 1.05;
  double lr_down = 0.7;
  double max_perf_inc = 1.04;
  double min_grad = 1e-6;
};

/// Parameters flattened as [W1 (hidden x inputs, row-major), b1, w2, b2].
struct AnnNet {
  std::size_t inputs = 0;
  std::size_t hidden = 0;
  std::vector<double> params;

  static std::size_t param_count(std::size_t inputs, std::size_t hidden) {
    return hidden * inputs + 2 * hidden + 1;
  }
  double output(std::span<const double> x) const;
};

/// Mean over rows of (output - target)^2 on already-normalised rows.
double ann_loss(const AnnNet& net, const Dataset& data);
/// Exact backpropagated gradient of ann_loss with respect to net.params.
std::vector<double> ann_gradient(const AnnNet& net, const Dataset& data);

struct AnnModel {
  AnnNet net;
  NormalizationParams norm;
  AnnConfig config;
  std::uint64_t seed = 0;
  double training_error = 0.0;
  std::size_t epochs_run = 0;
};

/// Runs config.restarts random initialisations and keeps the one with the
/// lowest final training error. Throws DataError on single-class data and
/// when every restart diverges.
AnnModel train_ann(const Dataset& train, const AnnConfig& config, std::uint64_t seed);

/// Raw network output in (-1, 1) for an unnormalised row.
double ann_decision(const AnnModel& model, std::span<const double> row);

}  // namespace mlsa

#pragma once

#include <span>
#include <vector>

#include "mlsa/features.hpp"

namespace mlsa {

/// Per-feature min-max scaling to [-1, 1], fitted on training rows only.
/// Constant features (max == min) map to 0.
struct NormalizationParams {
  std::vector<double> min;
  std::vector<double> max;

  static NormalizationParams fit(const Dataset& train);
  std::vector<double> apply(std::span<const double> row) const;
  /// Dataset with every row scaled; labels and ids preserved.
  Dataset apply(const Dataset& data) const;
  std::size_t width() const { return min.size(); }

  friend bool operator==(const NormalizationParams&, const NormalizationParams&) = default;
};

}  // namespace mlsa

#include "mlsa/normalization.hpp"

#include <algorithm>
#include <limits>

#include "mlsa/error.hpp"

namespace mlsa {

NormalizationParams NormalizationParams::fit(const Dataset& train) {
  if (train.empty()) throw DomainError("cannot fit normalization on an empty dataset");
  NormalizationParams p;
  p.min.assign(train.width(), std::numeric_limits<double>::infinity());
  p.max.assign(train.width(), -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < train.size(); ++i) {
    const auto r = train.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) {
      p.min[k] = std::min(p.min[k], r[k]);
      p.max[k] = std::max(p.max[k], r[k]);
    }
  }
  return p;
}

std::vector<double> NormalizationParams::apply(std::span<const double> row) const {
  if (row.size() != min.size()) {
    throw DomainError("row width " + std::to_string(row.size()) + " does not match model width " +
                      std::to_string(min.size()));
  }
  std::vector<double> out(row.size());
  for (std::size_t k = 0; k < row.size(); ++k) {
    const double range = max[k] - min[k];
    out[k] = range > 0 ? 2.0 * (row[k] - min[k]) / range - 1.0 : 0.0;
  }
  return out;
}

Dataset NormalizationParams::apply(const Dataset& data) const {
  Dataset out = Dataset::raw(data.width());
  for (std::size_t i = 0; i < data.size(); ++i) out.add(apply(data.row(i)), data.label(i), data.id(i));
  return out;
}

}  // namespace mlsa

#include "mlsa/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mlsa/error.hpp"

namespace mlsa {

namespace {
constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double t = a[k] - b[k];
    d += t * t;
  }
  return std::exp(-gamma * d);
}

SvmModel train_svm(const Dataset& train, const SvmConfig& config) {
  if (train.empty()) throw DataError("SVM: empty training set");
  if (train.count(Label::positive) == 0 || train.count(Label::negative) == 0) {
    throw DataError("SVM: training set contains a single class");
  }
  if (!(config.C > 0)) throw ConfigError("SVM: C must be > 0");

  SvmModel model;
  model.inputs = train.width();
  model.C = config.C;
  model.gamma = config.gamma.value_or(1.0 / static_cast<double>(train.width()));
  model.norm = NormalizationParams::fit(train);
  const Dataset x = model.norm.apply(train);

  const std::size_t n = x.size();
  const double C = config.C;
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = x.label(i) == Label::positive ? 1.0 : -1.0;

  // Q(i, j) = y_i y_j K(x_i, x_j)
  std::vector<double> Q(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double q = y[i] * y[j] * rbf_kernel(x.row(i), x.row(j), model.gamma);
      Q[i * n + j] = Q[j * n + i] = q;
    }
  }
  auto Qrow = [&](std::size_t i) { return Q.data() + i * n; };

  std::vector<double> alpha(n, 0.0);
  std::vector<double> G(n, -1.0);
  const std::size_t max_iter = std::max<std::size_t>(config.max_passes * n, 1);

  std::size_t iter = 0;
  for (; iter < max_iter; ++iter) {
    // i: maximal violator in I_up
    double gmax = -kInf;
    std::ptrdiff_t ii = -1;
    for (std::size_t t = 0; t < n; ++t) {
      if (y[t] > 0 ? alpha[t] < C : alpha[t] > 0) {
        const double v = -y[t] * G[t];
        if (v >= gmax) gmax = v, ii = static_cast<std::ptrdiff_t>(t);
      }
    }
    if (ii < 0) {
      model.converged = true;
      break;
    }
    const auto i = static_cast<std::size_t>(ii);
    const double* Qi = Qrow(i);

    // j: second-order choice in I_low
    double gmax2 = -kInf;
    double best_obj = kInf;
    std::ptrdiff_t jj = -1;
    for (std::size_t t = 0; t < n; ++t) {
      if (!(y[t] > 0 ? alpha[t] > 0 : alpha[t] < C)) continue;
      const double v = y[t] * G[t];
      gmax2 = std::max(gmax2, v);
      const double grad_diff = gmax + v;
      if (grad_diff > 0) {
        const double quad = Q[i * n + i] + Q[t * n + t] - 2.0 * y[i] * y[t] * Qi[t];
        const double obj = -(grad_diff * grad_diff) / (quad > 0 ? quad : kTau);
        if (obj <= best_obj) best_obj = obj, jj = static_cast<std::ptrdiff_t>(t);
      }
    }
    if (gmax + gmax2 < config.tol || jj < 0) {
      model.converged = true;
      break;
    }
    const auto j = static_cast<std::size_t>(jj);
    const double* Qj = Qrow(j);

    const double old_ai = alpha[i];
    const double old_aj = alpha[j];
    double ai = old_ai;
    double aj = old_aj;
    if (y[i] != y[j]) {
      double quad = Qi[i] + Qj[j] + 2.0 * Qi[j];
      if (quad <= 0) quad = kTau;
      const double delta = (-G[i] - G[j]) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0) {
        if (aj < 0) aj = 0, ai = diff;
      } else {
        if (ai < 0) ai = 0, aj = -diff;
      }
      if (diff > 0) {
        if (ai > C) ai = C, aj = C - diff;
      } else {
        if (aj > C) aj = C, ai = C + diff;
      }
    } else {
      double quad = Qi[i] + Qj[j] - 2.0 * Qi[j];
      if (quad <= 0) quad = kTau;
      const double delta = (G[i] - G[j]) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > C) {
        if (ai > C) ai = C, aj = sum - C;
        if (aj > C) aj = C, ai = sum - C;
      } else {
        if (aj < 0) aj = 0, ai = sum;
        if (ai < 0) ai = 0, aj = sum;
      }
    }
    alpha[i] = ai;
    alpha[j] = aj;
    const double dai = ai - old_ai;
    const double daj = aj - old_aj;
    for (std::size_t t = 0; t < n; ++t) G[t] += Qi[t] * dai + Qj[t] * daj;
  }
  model.iterations = iter;

  // rho from free vectors, or the midpoint of the feasible interval.
  double ub = kInf, lb = -kInf, sum_free = 0.0;
  std::size_t nr_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * G[t];
    if (alpha[t] >= C) {
      if (y[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (alpha[t] <= 0) {
      if (y[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++nr_free;
      sum_free += yg;
    }
  }
  const double rho = nr_free > 0 ? sum_free / static_cast<double>(nr_free) : (ub + lb) / 2.0;
  model.bias = -rho;

  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] <= 0) continue;
    const auto r = x.row(t);
    model.support_vectors.emplace_back(r.begin(), r.end());
    model.alphas.push_back(alpha[t]);
    model.labels.push_back(y[t] > 0 ? 1 : -1);
  }
  return model;
}

double svm_decision(const SvmModel& model, std::span<const double> row) {
  const auto z = model.norm.apply(row);
  double f = model.bias;
  for (std::size_t s = 0; s < model.support_vectors.size(); ++s) {
    f += model.alphas[s] * model.labels[s] * rbf_kernel(model.support_vectors[s], z, model.gamma);
  }
  return f;
}

}  // namespace mlsa

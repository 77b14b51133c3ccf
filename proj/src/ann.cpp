#include "mlsa/ann.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mlsa/error.hpp"
#include "mlsa/rng.hpp"

namespace mlsa {

namespace {

double target_of(Label l) { return l == Label::positive ? 1.0 : -1.0; }

struct Layout {
  std::size_t inputs, hidden;
  std::size_t w1(std::size_t h, std::size_t k) const { return h * inputs + k; }
  std::size_t b1(std::size_t h) const { return hidden * inputs + h; }
  std::size_t w2(std::size_t h) const { return hidden * inputs + hidden + h; }
  std::size_t b2() const { return hidden * inputs + 2 * hidden; }
};

AnnNet random_net(std::size_t inputs, std::size_t hidden, std::uint64_t seed) {
  AnnNet net{inputs, hidden, std::vector<double>(AnnNet::param_count(inputs, hidden))};
  const Layout L{inputs, hidden};
  CounterRng rng(seed);
  const double r1 = std::sqrt(6.0 / static_cast<double>(inputs + hidden));
  const double r2 = std::sqrt(6.0 / static_cast<double>(hidden + 1));
  for (std::size_t h = 0; h < hidden; ++h) {
    for (std::size_t k = 0; k < inputs; ++k) net.params[L.w1(h, k)] = rng.uniform(-r1, r1);
    net.params[L.b1(h)] = rng.uniform(-r1, r1);
    net.params[L.w2(h)] = rng.uniform(-r2, r2);
  }
  net.params[L.b2()] = 0.0;
  return net;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

struct RunResult {
  AnnNet net;
  double error;
  std::size_t epochs;
};

RunResult train_once(const Dataset& data, const AnnConfig& cfg, std::uint64_t seed) {
  AnnNet net = random_net(data.width(), cfg.hidden, seed);
  double perf = ann_loss(net, data);
  std::vector<double> grad = ann_gradient(net, data);
  std::vector<double> step(net.params.size(), 0.0);
  double lr = cfg.lr;

  AnnNet trial = net;
  std::size_t epoch = 0;
  for (; epoch < cfg.max_epochs; ++epoch) {
    if (!std::isfinite(perf)) break;
    if (perf == 0.0 || norm2(grad) < cfg.min_grad) break;

    for (std::size_t i = 0; i < step.size(); ++i) {
      step[i] = cfg.momentum * step[i] - (1.0 - cfg.momentum) * lr * grad[i];
      trial.params[i] = net.params[i] + step[i];
    }
    const double trial_perf = ann_loss(trial, data);
    if (!std::isfinite(trial_perf) || trial_perf > perf * cfg.max_perf_inc) {
      lr *= cfg.lr_down;
      std::fill(step.begin(), step.end(), 0.0);
      continue;
    }
    if (trial_perf < perf) lr *= cfg.lr_up;
    std::swap(net.params, trial.params);
    perf = trial_perf;
    grad = ann_gradient(net, data);
  }
  return {std::move(net), perf, epoch};
}

}  // namespace

double AnnNet::output(std::span<const double> x) const {
  const Layout L{inputs, hidden};
  double z2 = params[L.b2()];
  for (std::size_t h = 0; h < hidden; ++h) {
    double z = params[L.b1(h)];
    for (std::size_t k = 0; k < inputs; ++k) z += params[L.w1(h, k)] * x[k];
    z2 += params[L.w2(h)] * std::tanh(z);
  }
  return std::tanh(z2);
}

double ann_loss(const AnnNet& net, const Dataset& data) {
  double sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double e = net.output(data.row(i)) - target_of(data.label(i));
    sum += e * e;
  }
  return sum / static_cast<double>(data.size());
}

std::vector<double> ann_gradient(const AnnNet& net, const Dataset& data) {
  const Layout L{net.inputs, net.hidden};
  const auto& p = net.params;
  std::vector<double> g(p.size(), 0.0);
  std::vector<double> a(net.hidden);
  const double scale = 2.0 / static_cast<double>(data.size());

  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto x = data.row(i);
    double z2 = p[L.b2()];
    for (std::size_t h = 0; h < net.hidden; ++h) {
      double z = p[L.b1(h)];
      for (std::size_t k = 0; k < net.inputs; ++k) z += p[L.w1(h, k)] * x[k];
      a[h] = std::tanh(z);
      z2 += p[L.w2(h)] * a[h];
    }
    const double y = std::tanh(z2);
    // d(loss)/d(z2) for this row
    const double d2 = scale * (y - target_of(data.label(i))) * (1.0 - y * y);
    g[L.b2()] += d2;
    for (std::size_t h = 0; h < net.hidden; ++h) {
      g[L.w2(h)] += d2 * a[h];
      const double d1 = d2 * p[L.w2(h)] * (1.0 - a[h] * a[h]);
      g[L.b1(h)] += d1;
      for (std::size_t k = 0; k < net.inputs; ++k) g[L.w1(h, k)] += d1 * x[k];
    }
  }
  return g;
}

AnnModel train_ann(const Dataset& train, const AnnConfig& config, std::uint64_t seed) {
  if (train.empty()) throw DataError("ANN: empty training set");
  if (train.count(Label::positive) == 0 || train.count(Label::negative) == 0) {
    throw DataError("ANN: training set contains a single class");
  }
  if (config.hidden == 0 || config.restarts == 0) throw ConfigError("ANN: hidden and restarts must be >= 1");

  AnnModel model;
  model.config = config;
  model.seed = seed;
  model.norm = NormalizationParams::fit(train);
  const Dataset scaled = model.norm.apply(train);

  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  for (std::size_t r = 0; r < config.restarts; ++r) {
    auto run = train_once(scaled, config, derive_seed(seed, "ann-restart-" + std::to_string(r)));
    if (!std::isfinite(run.error)) continue;
    if (run.error < best) {
      best = run.error;
      model.net = std::move(run.net);
      model.training_error = run.error;
      model.epochs_run = run.epochs;
      found = true;
    }
  }
  if (!found) throw DataError("ANN: all " + std::to_string(config.restarts) + " restarts diverged");
  return model;
}

double ann_decision(const AnnModel& model, std::span<const double> row) {
  return model.net.output(model.norm.apply(row));
}

}  // namespace mlsa

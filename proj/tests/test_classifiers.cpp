#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "mlsa/ann.hpp"
#include "mlsa/classifier.hpp"
#include "mlsa/dtree.hpp"
#include "mlsa/error.hpp"
#include "mlsa/rng.hpp"
#include "mlsa/svm.hpp"

using namespace mlsa;

namespace {

Dataset xor_data() {
  auto d = Dataset::raw(2);
  d.add(std::vector<double>{0, 0}, Label::negative);
  d.add(std::vector<double>{1, 1}, Label::negative);
  d.add(std::vector<double>{0, 1}, Label::positive);
  d.add(std::vector<double>{1, 0}, Label::positive);
  return d;
}

// Two gaussian-ish blobs around (+c, +c) and (-c, -c).
Dataset blobs(std::size_t per_class, double c, double spread, std::uint64_t seed) {
  CounterRng rng(seed);
  auto d = Dataset::raw(2);
  for (std::size_t i = 0; i < per_class; ++i) {
    for (int s : {1, -1}) {
      double x = 0, y = 0;
      for (int k = 0; k < 6; ++k) {
        x += rng.uniform(-1, 1);
        y += rng.uniform(-1, 1);
      }
      d.add(std::vector<double>{s * c + spread * x / 6, s * c + spread * y / 6},
            s > 0 ? Label::positive : Label::negative);
    }
  }
  return d;
}

double accuracy(const Model& m, const Dataset& d) {
  std::size_t ok = 0;
  for (std::size_t i = 0; i < d.size(); ++i) ok += predict(m, d.row(i)).label == d.label(i);
  return double(ok) / double(d.size());
}

Dataset conflict_free(std::uint64_t seed, std::size_t n, std::size_t w) {
  CounterRng rng(seed);
  auto d = Dataset::raw(w);
  std::set<std::vector<double>> seen;
  while (d.size() < n) {
    std::vector<double> row(w);
    for (auto& x : row) x = double(rng.below(6));
    if (!seen.insert(row).second) continue;
    d.add(row, rng.bernoulli(0.5) ? Label::positive : Label::negative);
  }
  return d;
}

}  // namespace

TEST_CASE("ann gradient matches central differences") {
  auto d = Dataset::raw(3);
  d.add(std::vector<double>{0.2, -0.7, 0.5}, Label::positive);
  d.add(std::vector<double>{-0.9, 0.1, 0.3}, Label::negative);
  d.add(std::vector<double>{0.4, 0.8, -0.6}, Label::positive);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    AnnNet net{3, 15, {}};
    CounterRng rng(seed);
    net.params.resize(AnnNet::param_count(3, 15));
    for (auto& p : net.params) p = rng.uniform(-0.8, 0.8);
    const auto g = ann_gradient(net, d);
    REQUIRE(g.size() == net.params.size());
    const double h = 1e-6;
    for (std::size_t i = 0; i < net.params.size(); ++i) {
      AnnNet up = net, down = net;
      up.params[i] += h;
      down.params[i] -= h;
      const double fd = (ann_loss(up, d) - ann_loss(down, d)) / (2 * h);
      const double scale = std::max({std::abs(fd), std::abs(g[i]), 1e-7});
      CAPTURE(i);
      CHECK(std::abs(fd - g[i]) / scale <= 1e-4);
    }
  }
}

TEST_CASE("ann fits xor and separable data") {
  ClassifierConfig cfg;
  cfg.kind = ClassifierKind::ann;
  cfg.ann.max_epochs = 2000;
  auto m = train(cfg, xor_data(), 3);
  CHECK(accuracy(m, xor_data()) == 1.0);

  auto sep = blobs(20, 1.0, 1.5, 4);
  CHECK(sep.size() == 40);
  CHECK(accuracy(train(ClassifierConfig{}, sep, 4), sep) == 1.0);
}

TEST_CASE("ann is deterministic") {
  auto d = blobs(20, 0.5, 2.0, 9);
  auto a = train_ann(d, AnnConfig{}, 17);
  auto b = train_ann(d, AnnConfig{}, 17);
  CHECK(a.net.params == b.net.params);
  CHECK(a.training_error == b.training_error);
  auto c = train_ann(d, AnnConfig{}, 18);
  CHECK(c.net.params != a.net.params);
  for (double p : a.net.params) CHECK(std::isfinite(p));
  CHECK(a.net.hidden == 15);
}

TEST_CASE("ann errors") {
  auto one = Dataset::raw(1);
  one.add(std::vector<double>{1}, Label::positive);
  one.add(std::vector<double>{2}, Label::positive);
  CHECK_THROWS_AS(train_ann(one, AnnConfig{}, 1), DataError);
  CHECK_THROWS_AS(train_ann(Dataset::raw(1), AnnConfig{}, 1), DataError);
}

TEST_CASE("ann sign rule") {
  AnnModel m;
  m.net = AnnNet{1, 2, std::vector<double>(AnnNet::param_count(1, 2), 0.0)};
  m.net.params.back() = std::atanh(0.7);
  m.norm.min = {0};
  m.norm.max = {1};
  auto p = predict(Model{m}, std::vector<double>{0.3});
  CHECK(p.score == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(p.label == Label::positive);
  CHECK_THROWS_AS(predict(Model{m}, std::vector<double>{0.3, 1}), DomainError);
}

TEST_CASE("tree basics") {
  auto pure = Dataset::raw(1);
  for (double x : {1.0, 2.0, 3.0}) pure.add(std::vector<double>{x}, Label::negative);
  auto t = train_dtree(pure, TreeConfig{});
  CHECK(t.nodes.size() == 1);
  CHECK(t.leaf_for(std::vector<double>{9}).neg == 3);
  CHECK(tree_decision(t, std::vector<double>{0}) == -0.5);

  auto sep = Dataset::raw(1);
  for (double x : {1.0, 2.0, 3.0, 4.0}) sep.add(std::vector<double>{x}, Label::negative);
  for (double x : {6.0, 7.0, 8.0, 9.0}) sep.add(std::vector<double>{x}, Label::positive);
  auto s = train_dtree(sep, TreeConfig{});
  CHECK(s.depth() == 1);
  CHECK(s.nodes[0].threshold == 5.0);
  CHECK(accuracy(Model{s}, sep) == 1.0);

  auto three = Dataset::raw(1);
  three.add(std::vector<double>{1}, Label::negative);
  three.add(std::vector<double>{2}, Label::positive);
  three.add(std::vector<double>{3}, Label::positive);
  TreeConfig no_prune;
  no_prune.prune = false;
  auto m3 = train_dtree(three, no_prune);
  for (const auto& n : m3.nodes) {
    if (n.is_leaf()) CHECK(n.pos + n.neg >= 2);
  }
}

TEST_CASE("tree leaf score") {
  TreeModel m;
  m.inputs = 1;
  m.nodes.push_back(TreeNode{-1, 0.0, -1, -1, 3, 1});
  auto p = predict(Model{m}, std::vector<double>{0});
  CHECK(p.label == Label::positive);
  CHECK(p.score == 0.25);
}

TEST_CASE("tree respects min_leaf and fits conflict-free data unpruned") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto d = conflict_free(seed, 60, 3);
    TreeConfig c;
    c.min_leaf = 1;
    c.prune = false;
    CHECK(accuracy(Model{train_dtree(d, c)}, d) == 1.0);

    auto pruned = train_dtree(d, TreeConfig{});
    for (const auto& n : pruned.nodes) {
      if (n.is_leaf()) CHECK(n.pos + n.neg >= 2);
      if (!n.is_leaf()) {
        CHECK(n.left >= 0);
        CHECK(n.right >= 0);
      }
    }
  }
}

TEST_CASE("pessimistic error estimate") {
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959964).epsilon(1e-6));
  CHECK(normal_quantile(0.75) == doctest::Approx(0.6744898).epsilon(1e-6));
  // no observed errors: N (1 - CF^(1/N))
  CHECK(pessimistic_extra_errors(6, 0, 0.25) == doctest::Approx(6 * (1 - std::pow(0.25, 1.0 / 6))).epsilon(1e-9));
  CHECK(pessimistic_extra_errors(10, 2, 0.25) > 0);
  CHECK(pessimistic_extra_errors(10, 2, 0.1) > pessimistic_extra_errors(10, 2, 0.25));
}

TEST_CASE("tree config errors") {
  auto d = xor_data();
  TreeConfig c;
  c.min_leaf = 0;
  CHECK_THROWS_AS(train_dtree(d, c), ConfigError);
  c.min_leaf = 2;
  c.confidence = 1.5;
  CHECK_THROWS_AS(train_dtree(d, c), ConfigError);
  CHECK_THROWS_AS(train_dtree(Dataset::raw(2), TreeConfig{}), DataError);
}

TEST_CASE("svm blobs and dual feasibility") {
  auto d = blobs(50, 1.0, 1.2, 12);
  auto m = train_svm(d, SvmConfig{});
  CHECK(m.converged);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < d.size(); ++i) ok += (svm_decision(m, d.row(i)) >= 0) == (d.label(i) == Label::positive);
  CHECK(double(ok) / double(d.size()) >= 0.95);

  double balance = 0;
  for (std::size_t i = 0; i < m.alphas.size(); ++i) {
    CHECK(m.alphas[i] >= 0.0);
    CHECK(m.alphas[i] <= m.C);
    balance += m.alphas[i] * m.labels[i];
  }
  CHECK(std::abs(balance) <= 1e-6);

  auto noisy = blobs(60, 0.3, 2.0, 13);
  auto mn = train_svm(noisy, SvmConfig{});
  double nb = 0;
  for (std::size_t i = 0; i < mn.alphas.size(); ++i) {
    CHECK(mn.alphas[i] >= 0.0);
    CHECK(mn.alphas[i] <= mn.C);
    nb += mn.alphas[i] * mn.labels[i];
  }
  CHECK(std::abs(nb) <= 1e-6);
}

TEST_CASE("svm small cases") {
  auto two = Dataset::raw(2);
  two.add(std::vector<double>{0, 0}, Label::negative);
  two.add(std::vector<double>{1, 1}, Label::positive);
  auto m = train_svm(two, SvmConfig{});
  CHECK(svm_decision(m, two.row(0)) < 0);
  CHECK(svm_decision(m, two.row(1)) > 0);

  auto eight = Dataset::raw(8);
  eight.add(std::vector<double>(8, 0.0), Label::negative);
  eight.add(std::vector<double>(8, 1.0), Label::positive);
  CHECK(train_svm(eight, SvmConfig{}).gamma == 0.125);

  auto one = Dataset::raw(1);
  one.add(std::vector<double>{1}, Label::negative);
  CHECK_THROWS_AS(train_svm(one, SvmConfig{}), DataError);

  SvmModel fixed;
  fixed.inputs = 1;
  fixed.bias = -0.2;
  fixed.norm.min = {0};
  fixed.norm.max = {1};
  auto p = predict(Model{fixed}, std::vector<double>{0.5});
  CHECK(p.score == -0.2);
  CHECK(p.label == Label::negative);

  CHECK(rbf_kernel(std::vector<double>{0, 0}, std::vector<double>{1, 1}, 0.5) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("model serialization round trip") {
  auto d = blobs(15, 0.6, 1.5, 21);
  for (auto kind : kAllClassifiers) {
    ClassifierConfig cfg;
    cfg.kind = kind;
    cfg.ann.max_epochs = 100;
    auto m = train(cfg, d, 5);
    CHECK(kind_of(m) == kind);
    CHECK(input_width(m) == 2);
    const auto text = serialize_model(m);
    auto back = deserialize_model(text);
    CHECK(serialize_model(back) == text);
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(predict(back, d.row(i)).score == predict(m, d.row(i)).score);
    }
  }
  CHECK_THROWS_AS(deserialize_model("{not json"), DataError);
  CHECK_THROWS_AS(deserialize_model("{\"kind\":\"ann\",\"format_version\":99}"), DataError);
  CHECK(parse_classifier("tree") == ClassifierKind::dtree);
  CHECK_THROWS_AS(parse_classifier("knn"), ConfigError);
}

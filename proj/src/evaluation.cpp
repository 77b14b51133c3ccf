#include "mlsa/evaluation.hpp"

#include <json.hpp>

#include "mlsa/error.hpp"
#include "mlsa/rng.hpp"

using nlohmann::ordered_json;

namespace mlsa {

std::vector<std::size_t> FoldSplit::test_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldSplit::train_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] != fold) out.push_back(i);
  }
  return out;
}

FoldSplit stratified_kfold(std::span<const Label> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw DomainError("stratified_kfold: k must be >= 2");
  FoldSplit split{k, std::vector<std::size_t>(labels.size())};
  for (Label cls : {Label::negative, Label::positive}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) members.push_back(i);
    }
    if (members.size() < k) {
      throw DomainError("stratified_kfold: class " + std::to_string(to_int(cls)) + " has " +
                        std::to_string(members.size()) + " rows, fewer than k = " + std::to_string(k));
    }
    CounterRng rng(derive_seed(seed, cls == Label::positive ? "fold-pos" : "fold-neg"));
    shuffle(members, rng);
    for (std::size_t r = 0; r < members.size(); ++r) split.fold_of[members[r]] = r % k;
  }
  return split;
}

FoldSplit stratified_kfold(const Dataset& data, std::size_t k, std::uint64_t seed) {
  return stratified_kfold(data.labels(), k, seed);
}

ConfusionCounts confusion(std::span<const Label> predicted, std::span<const Label> actual) {
  if (predicted.size() != actual.size()) throw DomainError("confusion: length mismatch");
  ConfusionCounts c;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const bool p = predicted[i] == Label::positive;
    const bool a = actual[i] == Label::positive;
    if (p && a) ++c.tp;
    else if (p) ++c.fp;
    else if (a) ++c.fn;
    else ++c.tn;
  }
  return c;
}

namespace {

double ratio(std::size_t num, std::size_t den, const char* name, std::vector<std::string>& flags) {
  if (den == 0) {
    flags.emplace_back(name);
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

// Harmonic mean of precision and recall in count form, 2tp / (2tp + fp + fn),
// which returns P exactly when P = R.
double harmonic(double p, double r, std::size_t hit, std::size_t false_hit, std::size_t miss,
                const char* name, std::vector<std::string>& flags) {
  if (p + r == 0.0) {
    flags.emplace_back(name);
    return 0.0;
  }
  return static_cast<double>(2 * hit) / static_cast<double>(2 * hit + false_hit + miss);
}

MetricSet mean(const std::vector<FoldReport>& folds, bool test) {
  MetricSet m;
  if (folds.empty()) return m;
  for (const auto& f : folds) {
    const MetricSet& s = test ? f.test : f.train;
    m.pos.precision += s.pos.precision;
    m.pos.recall += s.pos.recall;
    m.pos.f += s.pos.f;
    m.neg.precision += s.neg.precision;
    m.neg.recall += s.neg.recall;
    m.neg.f += s.neg.f;
    for (const auto& flag : s.flags) m.flags.push_back("fold" + std::to_string(f.fold) + "." + flag);
  }
  const auto n = static_cast<double>(folds.size());
  for (ClassMetrics* c : {&m.pos, &m.neg}) {
    c->precision /= n;
    c->recall /= n;
    c->f /= n;
  }
  return m;
}

ConfusionCounts evaluate(const Model& model, const Dataset& data) {
  std::vector<Label> predicted;
  predicted.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) predicted.push_back(predict(model, data.row(i)).label);
  return confusion(predicted, data.labels());
}

ordered_json metrics_json(const MetricSet& m) {
  auto cls = [](const ClassMetrics& c) {
    return ordered_json{{"p", c.precision}, {"r", c.recall}, {"f", c.f}};
  };
  return {{"pos", cls(m.pos)}, {"neg", cls(m.neg)}, {"flags", m.flags}};
}

ordered_json counts_json(const ConfusionCounts& c) {
  return {{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn}};
}

}  // namespace

MetricSet class_metrics(const ConfusionCounts& c) {
  MetricSet m;
  m.pos.precision = ratio(c.tp, c.tp + c.fp, "pos.precision", m.flags);
  m.pos.recall = ratio(c.tp, c.tp + c.fn, "pos.recall", m.flags);
  m.pos.f = harmonic(m.pos.precision, m.pos.recall, c.tp, c.fp, c.fn, "pos.f", m.flags);
  m.neg.precision = ratio(c.tn, c.tn + c.fn, "neg.precision", m.flags);
  m.neg.recall = ratio(c.tn, c.tn + c.fp, "neg.recall", m.flags);
  m.neg.f = harmonic(m.neg.precision, m.neg.recall, c.tn, c.fn, c.fp, "neg.f", m.flags);
  return m;
}

EvalReport run_cv(const Dataset& data, const ClassifierConfig& config, std::size_t k,
                  std::uint64_t seed, std::vector<Model>* models) {
  EvalReport report;
  report.meta.classifier = std::string(to_string(config.kind));
  if (data.variant()) {
    report.meta.variant = std::string(to_string(*data.variant()));
    report.meta.level = std::string(to_string(level_of(*data.variant())));
  }
  report.meta.k = k;
  report.meta.seed = seed;

  const FoldSplit split = stratified_kfold(data, k, derive_seed(seed, "cv-split"));
  if (models) models->clear();
  for (std::size_t f = 0; f < k; ++f) {
    const auto train_idx = split.train_indices(f);
    const auto test_idx = split.test_indices(f);
    const Dataset train_set = data.subset(train_idx);
    const Dataset test_set = data.subset(test_idx);

    Model model = train(config, train_set, derive_seed(seed, "train-fold-" + std::to_string(f)));
    FoldReport fr;
    fr.fold = f;
    fr.train_counts = evaluate(model, train_set);
    fr.test_counts = evaluate(model, test_set);
    fr.train = class_metrics(fr.train_counts);
    fr.test = class_metrics(fr.test_counts);
    report.folds.push_back(std::move(fr));
    if (models) models->push_back(std::move(model));
  }
  report.average_train = mean(report.folds, false);
  report.average_test = mean(report.folds, true);
  return report;
}

std::string report_json(const EvalReport& r) {
  ordered_json meta = {{"classifier", r.meta.classifier},
                       {"level", r.meta.level},
                       {"formula", r.meta.formula},
                       {"sentence_formula", r.meta.sentence_formula},
                       {"variant", r.meta.variant},
                       {"rules", r.meta.rules},
                       {"k", r.meta.k},
                       {"seed", r.meta.seed}};
  ordered_json folds = ordered_json::array();
  for (const auto& f : r.folds) {
    folds.push_back({{"fold", f.fold},
                     {"train", metrics_json(f.train)},
                     {"test", metrics_json(f.test)},
                     {"train_counts", counts_json(f.train_counts)},
                     {"test_counts", counts_json(f.test_counts)}});
  }
  ordered_json j = {{"meta", meta},
                    {"folds", folds},
                    {"average", {{"train", metrics_json(r.average_train)},
                                 {"test", metrics_json(r.average_test)}}}};
  return j.dump(2) + "\n";
}

}  // namespace mlsa

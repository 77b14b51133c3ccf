#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mlsa/classifier.hpp"
#include "mlsa/corpus_io.hpp"
#include "mlsa/evaluation.hpp"
#include "mlsa/features.hpp"
#include "mlsa/lexicon.hpp"
#include "mlsa/scoring.hpp"

namespace mlsa {

struct PipelineConfig {
  std::filesystem::path corpus;
  std::filesystem::path lexicon;
  std::filesystem::path dictionary;    // optional: empty means affix stripping only
  std::filesystem::path negations;     // optional pair: empty means the Arabic defaults
  std::filesystem::path intensifiers;
  Level level = Level::term;
  PriorFormula prior = PriorFormula::max_sub;
  std::optional<SentenceFormula> sentence;  // required iff level == document
  FeatureVariant variant = FeatureVariant::term8;
  bool rules = false;
  std::size_t window = 1;
  ClassifierConfig classifier;
  std::size_t k = 5;
  std::uint64_t seed = 7;
  std::filesystem::path out_dir;  // empty: nothing is written

  /// Throws ConfigError for inconsistent level / variant / formula settings.
  void validate() const;
};

/// Loaded, preprocessed inputs shared by every pipeline run over one corpus.
struct PreparedCorpus {
  std::vector<TokenizedDocument> docs;
  Lexicon lexicon;
  RuleConfig rules;
};

PreparedCorpus prepare(const PipelineConfig& config);

struct FeatureOptions {
  Level level = Level::term;
  PriorFormula prior = PriorFormula::max_sub;
  std::optional<SentenceFormula> sentence;
  FeatureVariant variant = FeatureVariant::term8;
  bool rules = false;
};

/// Prior lookup -> optional rules -> (sentence scores) -> feature rows.
Dataset featurize(const PreparedCorpus& corpus, const FeatureOptions& options);

struct PipelineResult {
  EvalReport report;
  Dataset features;
};

/// load -> preprocess -> priors -> rules -> sentence scores -> features ->
/// cross-validation. Writes features.csv, models/fold_<i>.json and
/// report.json under out_dir when it is set.
PipelineResult run_pipeline(const PipelineConfig& config);
PipelineResult run_pipeline(const PipelineConfig& config, const PreparedCorpus& corpus);

struct SweepGrid {
  std::vector<PriorFormula> priors{PriorFormula::max_sub};
  std::vector<SentenceFormula> sentences{SentenceFormula::max_max};  // document variants only
  std::vector<FeatureVariant> variants{FeatureVariant::term8};
  std::vector<bool> rules{false};
  std::vector<ClassifierKind> classifiers{ClassifierKind::ann};
};

struct SweepRow {
  PipelineConfig config;
  EvalReport report;
  double test_mean_f() const;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::size_t best = 0;  // argmax of test_mean_f, first on ties
};

/// One pipeline run per grid cell (prior x variant x sentence x rules x
/// classifier), sharing the loaded corpus.
SweepResult sweep(const PipelineConfig& base, const SweepGrid& grid);

/// level,prior_formula,sentence_formula,variant,rules,classifier,
/// train_pos_f,test_pos_f,train_neg_f,test_neg_f,test_mean_f,best
std::string sweep_csv(const SweepResult& result);

}  // namespace mlsa

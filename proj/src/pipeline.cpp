#include "mlsa/pipeline.hpp"

#include <sstream>

#include "mlsa/error.hpp"
#include "mlsa/io_util.hpp"

namespace fs = std::filesystem;

namespace mlsa {

namespace {

// Prefixes the failing stage's name while keeping the error category.
template <typename F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError& e) {
    throw ConfigError(name + ": " + e.what());
  } catch (const DataError& e) {
    throw DataError(name + ": " + e.what());
  } catch (const Error& e) {
    throw DataError(name + ": " + e.what());
  } catch (const fs::filesystem_error& e) {
    throw DataError(name + ": " + e.what());
  }
}

void require_file(const fs::path& p, const char* what) {
  if (p.empty()) throw ConfigError(std::string(what) + " path is required");
  if (!fs::exists(p)) throw ConfigError(std::string(what) + " not found: " + p.string());
}

}  // namespace

void PipelineConfig::validate() const {
  if (level_of(variant) != level) {
    throw ConfigError("variant " + std::string(to_string(variant)) + " does not belong to the " +
                      std::string(to_string(level)) + " level (term: 8|6, document: 7|5|4)");
  }
  if (level == Level::document && !sentence) {
    throw ConfigError("document level needs a sentence formula (max_sub or max_max)");
  }
  if (level == Level::term && sentence) {
    throw ConfigError("a sentence formula only applies at the document level");
  }
  if (k < 2) throw ConfigError("k must be >= 2");
  if (window == 0) throw ConfigError("rule window must be >= 1");
  if (negations.empty() != intensifiers.empty()) {
    throw ConfigError("negation and intensifier lists must be given together");
  }
}

PreparedCorpus prepare(const PipelineConfig& config) {
  config.validate();
  require_file(config.corpus, "corpus");
  require_file(config.lexicon, "lexicon");
  if (!config.dictionary.empty()) require_file(config.dictionary, "lemma dictionary");
  if (!config.negations.empty()) {
    require_file(config.negations, "negation list");
    require_file(config.intensifiers, "intensifier list");
  }

  PreparedCorpus out;
  const auto raw = stage("load", [&] { return load_corpus(config.corpus); });
  const LemmaDictionary dict = stage("lemma dictionary", [&] {
    return config.dictionary.empty() ? LemmaDictionary{} : LemmaDictionary::load(config.dictionary);
  });
  out.docs = stage("preprocess", [&] { return preprocess_corpus(raw, dict); });
  out.lexicon = stage("lexicon", [&] { return load_lexicon(config.lexicon); });
  out.rules = stage("rules", [&] {
    RuleConfig r = config.negations.empty()
                       ? RuleConfig::arabic_defaults()
                       : RuleConfig::load(config.negations, config.intensifiers, config.window);
    r.window = config.window;
    r.validate();
    return r;
  });
  return out;
}

Dataset featurize(const PreparedCorpus& corpus, const FeatureOptions& opt) {
  if (level_of(opt.variant) != opt.level) throw ConfigError("variant does not match level");
  if (opt.level == Level::document && !opt.sentence) {
    throw ConfigError("document level needs a sentence formula");
  }
  const PriorMap priors = stage("priors", [&] { return prior_table(corpus.lexicon, opt.prior); });

  Dataset data(opt.variant);
  for (const auto& doc : corpus.docs) {
    auto scored = score_tokens(doc, priors, corpus.rules);
    if (opt.rules) scored = stage("rules", [&] { return apply_rules(scored, doc, corpus.rules); });
    if (opt.level == Level::term) {
      data.add(term_features(scored, doc.label).row(opt.variant), doc.label, doc.id);
    } else {
      const auto sentences = sentence_scores(doc, scored, *opt.sentence);
      data.add(doc_features(sentences, doc.label).row(opt.variant), doc.label, doc.id);
    }
  }
  return data;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  return run_pipeline(config, prepare(config));
}

PipelineResult run_pipeline(const PipelineConfig& config, const PreparedCorpus& corpus) {
  config.validate();
  PipelineResult result;
  result.features = stage("featurize", [&] {
    return featurize(corpus, {config.level, config.prior, config.sentence, config.variant, config.rules});
  });

  std::vector<Model> models;
  result.report = stage("evaluate", [&] {
    return run_cv(result.features, config.classifier, config.k, config.seed,
                  config.out_dir.empty() ? nullptr : &models);
  });
  auto& meta = result.report.meta;
  meta.formula = std::string(to_string(config.prior));
  meta.sentence_formula = config.sentence ? std::string(to_string(*config.sentence)) : "";
  meta.rules = config.rules;

  if (!config.out_dir.empty()) {
    stage("write", [&] {
      io::write_file_atomic(config.out_dir / "features.csv", dataset_csv(result.features));
      for (std::size_t f = 0; f < models.size(); ++f) {
        io::write_file_atomic(config.out_dir / "models" / ("fold_" + std::to_string(f) + ".json"),
                              serialize_model(models[f]));
      }
      io::write_file_atomic(config.out_dir / "report.json", report_json(result.report));
      return 0;
    });
  }
  return result;
}

double SweepRow::test_mean_f() const {
  return (report.average_test.pos.f + report.average_test.neg.f) / 2.0;
}

SweepResult sweep(const PipelineConfig& base, const SweepGrid& grid) {
  if (grid.priors.empty() || grid.variants.empty() || grid.rules.empty() ||
      grid.classifiers.empty()) {
    throw ConfigError("sweep grid has an empty axis");
  }
  PipelineConfig load_cfg = base;
  load_cfg.level = level_of(grid.variants.front());
  load_cfg.variant = grid.variants.front();
  load_cfg.sentence = load_cfg.level == Level::document
                          ? std::optional(grid.sentences.empty() ? SentenceFormula::max_max
                                                                 : grid.sentences.front())
                          : std::nullopt;
  load_cfg.out_dir.clear();
  const PreparedCorpus corpus = prepare(load_cfg);

  SweepResult result;
  for (auto variant : grid.variants) {
    const Level level = level_of(variant);
    std::vector<std::optional<SentenceFormula>> sentences;
    if (level == Level::term) {
      sentences.push_back(std::nullopt);
    } else {
      if (grid.sentences.empty()) throw ConfigError("document variants need sentence formulas");
      for (auto s : grid.sentences) sentences.emplace_back(s);
    }
    for (auto prior : grid.priors) {
      for (const auto& sentence : sentences) {
        for (bool rules : grid.rules) {
          for (auto kind : grid.classifiers) {
            PipelineConfig cfg = base;
            cfg.level = level;
            cfg.variant = variant;
            cfg.prior = prior;
            cfg.sentence = sentence;
            cfg.rules = rules;
            cfg.classifier.kind = kind;
            cfg.out_dir.clear();
            auto r = run_pipeline(cfg, corpus);
            result.rows.push_back({cfg, std::move(r.report)});
          }
        }
      }
    }
  }
  for (std::size_t i = 1; i < result.rows.size(); ++i) {
    if (result.rows[i].test_mean_f() > result.rows[result.best].test_mean_f()) result.best = i;
  }
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "level,prior_formula,sentence_formula,variant,rules,classifier,train_pos_f,test_pos_f,"
         "train_neg_f,test_neg_f,test_mean_f,best\n";
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& row = result.rows[i];
    const auto& c = row.config;
    const auto& tr = row.report.average_train;
    const auto& te = row.report.average_test;
    out << to_string(c.level) << ',' << to_string(c.prior) << ','
        << (c.sentence ? std::string(to_string(*c.sentence)) : std::string()) << ','
        << to_string(c.variant) << ',' << (c.rules ? 1 : 0) << ',' << to_string(c.classifier.kind)
        << ',' << io::format_double(tr.pos.f) << ',' << io::format_double(te.pos.f) << ','
        << io::format_double(tr.neg.f) << ',' << io::format_double(te.neg.f) << ','
        << io::format_double(row.test_mean_f()) << ',' << (i == result.best ? 1 : 0) << '\n';
  }
  return std::move(out).str();
}

}  // namespace mlsa

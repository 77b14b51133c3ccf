// mlsa: command-line front end for the multilevel sentiment toolkit.
//
// Exit codes: 0 success, 1 configuration error, 2 data error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mlsa/classifier.hpp"
#include "mlsa/corpus_io.hpp"
#include "mlsa/corpus_quality.hpp"
#include "mlsa/error.hpp"
#include "mlsa/evaluation.hpp"
#include "mlsa/features.hpp"
#include "mlsa/io_util.hpp"
#include "mlsa/lexicon.hpp"
#include "mlsa/pipeline.hpp"
#include "mlsa/scoring.hpp"
#include "mlsa/synth.hpp"

namespace fs = std::filesystem;
using namespace mlsa;

namespace {

struct CorpusArgs {
  std::string corpus, lexicon, lemmas, negations, intensifiers;
  bool rules = false;
  std::size_t window = 1;
};

// Required paths are checked after any config file is merged.
void add_corpus_options(CLI::App* sub, CorpusArgs& a) {
  sub->add_option("--corpus", a.corpus, "Corpus root with pos/ and neg/ (required)");
  sub->add_option("--lexicon", a.lexicon, "Lexicon TSV lemma<TAB>pos<TAB>neg (required)");
  sub->add_option("--lemmas", a.lemmas, "Lemma dictionary TSV surface<TAB>lemma");
  sub->add_option("--negations", a.negations, "Negation word list (default: Arabic set)");
  sub->add_option("--intensifiers", a.intensifiers, "Intensifier word list (default: Arabic set)");
  sub->add_flag("--rules,!--no-rules", a.rules, "Apply negation/intensification rules");
  sub->add_option("--window", a.window, "Rule window in tokens")->check(CLI::PositiveNumber);
}

struct ClassifierArgs {
  std::string kind = "ann";
  ClassifierConfig cfg;
  double gamma = 0.0;
  bool no_prune = false;
};

void add_classifier_options(CLI::App* sub, ClassifierArgs& a) {
  sub->add_option("--classifier", a.kind, "ann | dtree | svm");
  sub->add_option("--hidden", a.cfg.ann.hidden, "ANN hidden units");
  sub->add_option("--restarts", a.cfg.ann.restarts, "ANN random restarts");
  sub->add_option("--epochs", a.cfg.ann.max_epochs, "ANN max epochs");
  sub->add_option("--lr", a.cfg.ann.lr, "ANN initial learning rate");
  sub->add_option("--momentum", a.cfg.ann.momentum, "ANN momentum");
  sub->add_option("--lr-up", a.cfg.ann.lr_up, "ANN learning-rate growth factor");
  sub->add_option("--lr-down", a.cfg.ann.lr_down, "ANN learning-rate decay factor");
  sub->add_option("--confidence", a.cfg.tree.confidence, "Tree pruning confidence factor");
  sub->add_option("--min-leaf", a.cfg.tree.min_leaf, "Tree minimum rows per leaf");
  sub->add_flag("--no-prune", a.no_prune, "Disable tree pruning");
  sub->add_option("--C", a.cfg.svm.C, "SVM penalty");
  sub->add_option("--gamma", a.gamma, "SVM RBF width (default 1/num_features)");
  sub->add_option("--tol", a.cfg.svm.tol, "SVM KKT tolerance");
  sub->add_option("--max-passes", a.cfg.svm.max_passes, "SVM iteration cap per training row");
}

ClassifierConfig resolve(const ClassifierArgs& a) {
  ClassifierConfig cfg = a.cfg;
  cfg.kind = parse_classifier(a.kind);
  cfg.tree.prune = !a.no_prune;
  if (a.gamma > 0) cfg.svm.gamma = a.gamma;
  return cfg;
}

// `key = value` lines; '#' comments and [section] headers ignored; quotes stripped.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::map<std::string, std::string> out;
  const auto all = io::lines(io::read_file(path));
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::string line = all[i];
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t");
      return s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(path, i + 1, "expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    for (auto& c : key) {
      if (c == '_') c = '-';
    }
    out[key] = value;
  }
  return out;
}

// Fills options the command line left unset; flags on the command line win.
void apply_config_file(CLI::App* sub, const std::string& path) {
  for (const auto& [key, value] : read_config_file(path)) {
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (!opt) throw ConfigError("config file " + path + ": unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void emit(const std::string& out, const std::string& contents) {
  if (out.empty() || out == "-") {
    std::cout << contents;
  } else {
    io::write_file_atomic(out, contents);
  }
}

PreparedCorpus load_inputs(const CorpusArgs& a, const std::optional<SentenceFormula>& sentence,
                           Level level, FeatureVariant variant) {
  PipelineConfig cfg;
  cfg.corpus = a.corpus;
  cfg.lexicon = a.lexicon;
  cfg.dictionary = a.lemmas;
  cfg.negations = a.negations;
  cfg.intensifiers = a.intensifiers;
  cfg.window = a.window;
  cfg.level = level;
  cfg.variant = variant;
  cfg.sentence = sentence;
  return prepare(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilevel sentiment analysis toolkit"};
  app.require_subcommand(1);

  // synth
  SynthConfig synth_cfg;
  std::string synth_out;
  bool synth_separable = false;
  double synth_density = -1.0;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus, lexicon and word lists");
  synth->add_option("--docs", synth_cfg.docs_per_class, "Documents per class");
  synth->add_option("--seed", synth_cfg.seed, "Generator seed");
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_flag("--separable", synth_separable, "High-density, one-sided preset");
  synth->add_option("--density", synth_density, "Sentiment-token density for both classes");
  synth->add_option("--pos-density", synth_cfg.positive_density, "Density in positive documents");
  synth->add_option("--neg-density", synth_cfg.negative_density, "Density in negative documents");
  synth->add_option("--bias", synth_cfg.polarity_bias, "P(sentiment token matches document class)");
  synth->add_option("--rule-fraction", synth_cfg.rule_fraction, "Fraction of ruled sentiment tokens");
  synth->add_option("--noise", synth_cfg.noise_fraction, "Fraction of number/symbol tokens");
  synth->add_option("--min-tokens", synth_cfg.min_tokens);
  synth->add_option("--max-tokens", synth_cfg.max_tokens);
  synth->add_option("--pos-lemmas", synth_cfg.positive_lemmas);
  synth->add_option("--neg-lemmas", synth_cfg.negative_lemmas);
  synth->add_option("--neutral-lemmas", synth_cfg.neutral_lemmas);
  synth->add_flag("--arabic-tool-words", synth_cfg.arabic_tool_words, "Emit Arabic negation/intensifier words");

  // quality
  std::string q_corpus, q_out, q_lemmas, q_base = "e";
  double q_exponent = 1.0;
  auto* quality = app.add_subcommand("quality", "Zipf rank/frequency table and KL distance");
  quality->add_option("--corpus", q_corpus)->required();
  quality->add_option("--exponent", q_exponent, "Zipf exponent a");
  quality->add_option("--out", q_out, "CSV output path");
  quality->add_option("--log-base", q_base, "e | 2")->check(CLI::IsMember({"e", "2"}));

  // lexicon-aggregate
  std::string la_lexicon, la_formula = "max_sub", la_out;
  auto* lexagg = app.add_subcommand("lexicon-aggregate", "Collapse sense scores into prior polarities");
  lexagg->add_option("--lexicon", la_lexicon)->required();
  lexagg->add_option("--formula", la_formula, "avg_max | max_max | avg_sub | max_sub | avg_avg");
  lexagg->add_option("--out", la_out, "Output TSV (default stdout)");

  // score
  CorpusArgs sc_in;
  std::string sc_formula = "max_sub", sc_sentence, sc_out;
  auto* score = app.add_subcommand("score", "Per-token prior/adjusted scores and sentence scores");
  add_corpus_options(score, sc_in);
  score->add_option("--formula", sc_formula, "Prior formula");
  score->add_option("--sentence-formula", sc_sentence, "max_sub | max_max");
  score->add_option("--out", sc_out, "Output TSV (default stdout)");

  // featurize
  CorpusArgs fz_in;
  std::string fz_level = "term", fz_variant, fz_formula, fz_prior, fz_out;
  auto* featurize_cmd = app.add_subcommand("featurize", "Build term- or document-level feature CSV");
  add_corpus_options(featurize_cmd, fz_in);
  featurize_cmd->add_option("--level", fz_level, "term | document");
  featurize_cmd->add_option("--variant", fz_variant, "8 | 6 (term), 7 | 5 | 4 (document)");
  featurize_cmd->add_option("--formula", fz_formula, "Prior formula (term) or sentence formula (document)");
  featurize_cmd->add_option("--prior-formula", fz_prior, "Prior formula at document level (default max_sub)");
  featurize_cmd->add_option("--out", fz_out, "Output CSV (default stdout)");

  // train
  ClassifierArgs tr_cls;
  std::string tr_in, tr_out;
  std::uint64_t tr_seed = 7;
  auto* train_cmd = app.add_subcommand("train", "Train one classifier on a feature CSV");
  add_classifier_options(train_cmd, tr_cls);
  train_cmd->add_option("--in", tr_in, "Feature CSV")->required();
  train_cmd->add_option("--out", tr_out, "Model JSON")->required();
  train_cmd->add_option("--seed", tr_seed);

  // evaluate
  ClassifierArgs ev_cls;
  std::string ev_features, ev_out;
  std::size_t ev_folds = 5;
  std::uint64_t ev_seed = 7;
  auto* evaluate = app.add_subcommand("evaluate", "Stratified k-fold cross-validation on a feature CSV");
  add_classifier_options(evaluate, ev_cls);
  evaluate->add_option("--features", ev_features)->required();
  evaluate->add_option("--folds", ev_folds);
  evaluate->add_option("--seed", ev_seed);
  evaluate->add_option("--out", ev_out, "Report JSON (default stdout)");

  // pipeline
  CorpusArgs pl_in;
  ClassifierArgs pl_cls;
  std::string pl_level = "term", pl_variant, pl_prior = "max_sub", pl_sentence, pl_out, pl_config;
  std::size_t pl_folds = 5;
  std::uint64_t pl_seed = 7;
  auto* pipeline = app.add_subcommand("pipeline", "Full run: preprocess, score, featurize, cross-validate");
  add_corpus_options(pipeline, pl_in);
  add_classifier_options(pipeline, pl_cls);
  pipeline->add_option("--config", pl_config, "key = value file; command-line flags override it");
  pipeline->add_option("--level", pl_level, "term | document");
  pipeline->add_option("--variant", pl_variant, "8 | 6 | 7 | 5 | 4");
  pipeline->add_option("--prior-formula", pl_prior, "Prior formula");
  pipeline->add_option("--sentence-formula", pl_sentence, "Sentence formula (document level)");
  pipeline->add_option("--folds", pl_folds);
  pipeline->add_option("--seed", pl_seed);
  pipeline->add_option("--out", pl_out, "Output directory (required)");

  // sweep
  CorpusArgs sw_in;
  ClassifierArgs sw_cls;
  std::string sw_priors = "max_max,avg_max,avg_sub,max_sub,avg_avg", sw_variants = "8,6",
              sw_sentences = "max_max,max_sub", sw_rules = "0", sw_classifiers = "ann", sw_out;
  std::size_t sw_folds = 5;
  std::uint64_t sw_seed = 7;
  auto* sweep_cmd = app.add_subcommand("sweep", "Grid of pipeline runs with a comparison table");
  add_corpus_options(sweep_cmd, sw_in);
  add_classifier_options(sweep_cmd, sw_cls);
  sweep_cmd->add_option("--priors", sw_priors, "Comma-separated prior formulas");
  sweep_cmd->add_option("--variants", sw_variants, "Comma-separated variants");
  sweep_cmd->add_option("--sentence-formulas", sw_sentences, "Comma-separated sentence formulas");
  sweep_cmd->add_option("--rules-grid", sw_rules, "Comma-separated 0/1 rule settings");
  sweep_cmd->add_option("--classifiers", sw_classifiers, "Comma-separated classifiers");
  sweep_cmd->add_option("--folds", sw_folds);
  sweep_cmd->add_option("--seed", sw_seed);
  sweep_cmd->add_option("--out", sw_out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*synth) {
      SynthConfig cfg = synth_cfg;
      if (synth_separable) {
        const auto preset = SynthConfig::separable(synth_cfg.seed);
        cfg.positive_density = preset.positive_density;
        cfg.negative_density = preset.negative_density;
        cfg.polarity_bias = preset.polarity_bias;
      }
      if (synth_density >= 0) cfg.positive_density = cfg.negative_density = synth_density;
      const auto out = generate(cfg, synth_out);
      std::cout << "corpus\t" << out.corpus_dir.string() << "\nlexicon\t" << out.lexicon.string()
                << "\nlemmas\t" << out.dictionary.string() << "\nnegations\t"
                << out.negations.string() << "\nintensifiers\t" << out.intensifiers.string() << "\n";
    } else if (*quality) {
      const auto docs = preprocess_corpus(load_corpus(q_corpus), LemmaDictionary{});
      const auto table = rank_frequencies(docs);
      const auto base = q_base == "2" ? LogBase::base2 : LogBase::natural;
      const auto report = quality_report(table, q_exponent, q_out, base);
      std::cout << "{\"kl_raw\": " << io::format_double(report.kl_raw)
                << ", \"kl_prob\": " << io::format_double(report.kl_prob)
                << ", \"zipf_exponent_a\": " << io::format_double(report.zipf_exponent_a)
                << ", \"distinct_words\": " << table.size() << ", \"table_path\": \""
                << report.table_path << "\"}\n";
    } else if (*lexagg) {
      emit(la_out, priors_tsv(load_lexicon(la_lexicon), parse_prior_formula(la_formula)));
    } else if (*score) {
      std::optional<SentenceFormula> sf;
      if (!sc_sentence.empty()) sf = parse_sentence_formula(sc_sentence);
      const auto corpus = load_inputs(sc_in, sf, sf ? Level::document : Level::term,
                                      sf ? FeatureVariant::doc7 : FeatureVariant::term8);
      const auto priors = prior_table(corpus.lexicon, parse_prior_formula(sc_formula));
      std::ostringstream out;
      out << "doc\tsentence\tposition\tsurface\tlemma\tprior\tadjusted\tsentence_score\n";
      for (const auto& doc : corpus.docs) {
        auto scored = score_tokens(doc, priors, corpus.rules);
        if (sc_in.rules) scored = apply_rules(scored, doc, corpus.rules);
        std::vector<SentenceScore> sentences;
        if (sf) sentences = sentence_scores(doc, scored, *sf);
        for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
          for (std::size_t i = doc.sentences[s].begin; i < doc.sentences[s].end; ++i) {
            out << doc.id << '\t' << s << '\t' << doc.tokens[i].position << '\t'
                << doc.tokens[i].surface << '\t' << doc.lemmas[i] << '\t'
                << io::format_double(scored[i].prior) << '\t' << io::format_double(scored[i].adjusted)
                << '\t' << (sf ? io::format_double(sentences[s].value) : "") << '\n';
          }
        }
      }
      emit(sc_out, out.str());
    } else if (*featurize_cmd) {
      const Level level = parse_level(fz_level);
      const FeatureVariant variant =
          parse_variant(fz_variant.empty() ? (level == Level::term ? "8" : "7") : fz_variant);
      FeatureOptions opt;
      opt.level = level;
      opt.variant = variant;
      opt.rules = fz_in.rules;
      if (level == Level::term) {
        if (!fz_prior.empty() && !fz_formula.empty()) {
          throw ConfigError("at term level give --formula or --prior-formula, not both");
        }
        opt.prior = parse_prior_formula(!fz_formula.empty() ? fz_formula
                                        : !fz_prior.empty() ? fz_prior
                                                            : "max_sub");
      } else {
        opt.prior = parse_prior_formula(fz_prior.empty() ? "max_sub" : fz_prior);
        opt.sentence = parse_sentence_formula(fz_formula.empty() ? "max_max" : fz_formula);
      }
      const auto corpus = load_inputs(fz_in, opt.sentence, level, variant);
      emit(fz_out, dataset_csv(featurize(corpus, opt)));
    } else if (*train_cmd) {
      const Dataset data = load_dataset_csv(tr_in);
      const Model model = train(resolve(tr_cls), data, tr_seed);
      io::write_file_atomic(tr_out, serialize_model(model));
    } else if (*evaluate) {
      const Dataset data = load_dataset_csv(ev_features);
      auto report = run_cv(data, resolve(ev_cls), ev_folds, ev_seed);
      emit(ev_out, report_json(report));
    } else if (*pipeline) {
      if (!pl_config.empty()) apply_config_file(pipeline, pl_config);
      if (pl_out.empty()) throw ConfigError("--out is required");
      PipelineConfig cfg;
      cfg.corpus = pl_in.corpus;
      cfg.lexicon = pl_in.lexicon;
      cfg.dictionary = pl_in.lemmas;
      cfg.negations = pl_in.negations;
      cfg.intensifiers = pl_in.intensifiers;
      cfg.rules = pl_in.rules;
      cfg.window = pl_in.window;
      cfg.level = parse_level(pl_level);
      cfg.variant = parse_variant(pl_variant.empty() ? (cfg.level == Level::term ? "8" : "7") : pl_variant);
      cfg.prior = parse_prior_formula(pl_prior);
      if (!pl_sentence.empty()) cfg.sentence = parse_sentence_formula(pl_sentence);
      cfg.classifier = resolve(pl_cls);
      cfg.k = pl_folds;
      cfg.seed = pl_seed;
      cfg.out_dir = pl_out;
      cfg.validate();
      const auto result = run_pipeline(cfg);
      const auto& avg = result.report.average_test;
      std::cout << "test F pos " << io::format_double(avg.pos.f) << " neg "
                << io::format_double(avg.neg.f) << "\nreport\t" << (fs::path(pl_out) / "report.json").string()
                << "\n";
    } else if (*sweep_cmd) {
      SweepGrid grid;
      grid.priors.clear();
      for (const auto& s : split_list(sw_priors)) grid.priors.push_back(parse_prior_formula(s));
      grid.variants.clear();
      for (const auto& s : split_list(sw_variants)) grid.variants.push_back(parse_variant(s));
      grid.sentences.clear();
      for (const auto& s : split_list(sw_sentences)) grid.sentences.push_back(parse_sentence_formula(s));
      grid.rules.clear();
      for (const auto& s : split_list(sw_rules)) {
        if (s != "0" && s != "1") throw ConfigError("--rules-grid entries must be 0 or 1");
        grid.rules.push_back(s == "1");
      }
      grid.classifiers.clear();
      for (const auto& s : split_list(sw_classifiers)) grid.classifiers.push_back(parse_classifier(s));

      PipelineConfig base;
      base.corpus = sw_in.corpus;
      base.lexicon = sw_in.lexicon;
      base.dictionary = sw_in.lemmas;
      base.negations = sw_in.negations;
      base.intensifiers = sw_in.intensifiers;
      base.window = sw_in.window;
      base.classifier = resolve(sw_cls);
      base.k = sw_folds;
      base.seed = sw_seed;
      const auto result = sweep(base, grid);
      emit(sw_out, sweep_csv(result));
      if (!sw_out.empty() && sw_out != "-") {
        const auto& best = result.rows[result.best];
        std::cerr << "best: " << to_string(best.config.variant) << ' ' << to_string(best.config.prior)
                  << ' ' << to_string(best.config.classifier.kind) << " test_mean_f "
                  << io::format_double(best.test_mean_f()) << '\n';
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

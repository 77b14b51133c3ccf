#include "mlsa/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "mlsa/corpus_io.hpp"
#include "mlsa/error.hpp"
#include "mlsa/io_util.hpp"
#include "mlsa/rng.hpp"

namespace fs = std::filesystem;

namespace mlsa {

namespace {

// Letters only: lookup keys trim non-letter edges, so digits would collide.
std::string lemma_name(const char* prefix, std::size_t i) {
  std::string tail(4, 'a');
  for (std::size_t k = 4; k-- > 0; i /= 26) tail[k] = static_cast<char>('a' + i % 26);
  return prefix + tail;
}

std::string file_name(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%04zu.txt", prefix, i);
  return buf;
}

std::string surface_of(const std::string& lemma, CounterRng& rng) {
  return rng.bernoulli(0.5) ? lemma : lemma + "_s";
}

// ArSenL-style scores are multiples of 1/8.
double eighths(CounterRng& rng, int lo, int hi) {
  return static_cast<double>(rng.between(lo, hi)) / 8.0;
}

struct Vocab {
  std::vector<std::string> positive, negative, neutral;
  std::vector<double> neutral_cdf;  // Zipf-shaped draw over neutral lemmas

  const std::string& pick_neutral(CounterRng& rng) const {
    const double u = rng.uniform();
    auto it = std::upper_bound(neutral_cdf.begin(), neutral_cdf.end(), u);
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - neutral_cdf.begin()),
                                           neutral.size() - 1);
    return neutral[idx];
  }
};

}  // namespace

void SynthConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError("synth: " + m); };
  if (positive_lemmas == 0 || negative_lemmas == 0 || neutral_lemmas == 0) {
    fail("every vocabulary needs at least one lemma");
  }
  if (docs_per_class == 0) fail("docs_per_class must be >= 1");
  if (min_tokens == 0 || min_tokens > max_tokens) fail("need 1 <= min_tokens <= max_tokens");
  if (min_sentence == 0 || min_sentence > max_sentence) fail("need 1 <= min_sentence <= max_sentence");
  for (double d : {positive_density, negative_density}) {
    if (!(d >= 0.0 && d < 1.0)) fail("densities must lie in [0, 1)");
  }
  if (!(polarity_bias > 0.5 && polarity_bias <= 1.0)) fail("polarity_bias must lie in (0.5, 1]");
  if (!(rule_fraction >= 0.0 && rule_fraction <= 1.0)) fail("rule_fraction must lie in [0, 1]");
  if (!(noise_fraction >= 0.0 && noise_fraction < 1.0)) fail("noise_fraction must lie in [0, 1)");
  if (min_senses == 0 || min_senses > max_senses) fail("need 1 <= min_senses <= max_senses");
}

SynthConfig SynthConfig::separable(std::uint64_t seed) {
  SynthConfig c;
  c.positive_density = 0.4;
  c.negative_density = 0.4;
  c.polarity_bias = 1.0;
  c.seed = seed;
  return c;
}

SynthOutput generate(const SynthConfig& cfg, const fs::path& out_dir) {
  cfg.validate();
  SynthOutput out{out_dir / "corpus", out_dir / "lexicon.tsv", out_dir / "lemmas.tsv",
                  out_dir / "negations.txt", out_dir / "intensifiers.txt"};

  Vocab v;
  for (std::size_t i = 0; i < cfg.positive_lemmas; ++i) v.positive.push_back(lemma_name("pos", i));
  for (std::size_t i = 0; i < cfg.negative_lemmas; ++i) v.negative.push_back(lemma_name("neg", i));
  for (std::size_t i = 0; i < cfg.neutral_lemmas; ++i) v.neutral.push_back(lemma_name("neu", i));
  double total = 0.0;
  for (std::size_t r = 1; r <= v.neutral.size(); ++r) total += 1.0 / static_cast<double>(r);
  double acc = 0.0;
  for (std::size_t r = 1; r <= v.neutral.size(); ++r) {
    acc += 1.0 / static_cast<double>(r) / total;
    v.neutral_cdf.push_back(acc);
  }

  // Lexicon: dominant side in [3/8, 1], other side in [0, 2/8], so the
  // dominant column maximum always wins. Half the neutral lemmas are listed
  // with balanced scores.
  {
    CounterRng rng(derive_seed(cfg.seed, "synth-lexicon"));
    std::ostringstream lex;
    auto senses = [&](const std::string& lemma, int sign) {
      const auto count = rng.between(static_cast<std::int64_t>(cfg.min_senses),
                                     static_cast<std::int64_t>(cfg.max_senses));
      for (std::int64_t s = 0; s < count; ++s) {
        double strong = eighths(rng, 3, 8);
        double weak = eighths(rng, 0, 2);
        if (sign == 0) strong = weak;
        const double pos = sign >= 0 ? strong : weak;
        const double neg = sign >= 0 ? weak : strong;
        lex << lemma << '\t' << io::format_double(pos) << '\t' << io::format_double(neg) << '\n';
      }
    };
    for (const auto& l : v.positive) senses(l, +1);
    for (const auto& l : v.negative) senses(l, -1);
    for (std::size_t i = 0; i < v.neutral.size(); i += 2) senses(v.neutral[i], 0);
    io::write_file_atomic(out.lexicon, lex.str());
  }

  {
    std::ostringstream dict;
    dict << "# surface<TAB>lemma\n";
    for (const auto* list : {&v.positive, &v.negative, &v.neutral}) {
      for (const auto& l : *list) dict << l << '\t' << l << '\n' << l << "_s\t" << l << '\n';
    }
    io::write_file_atomic(out.dictionary, dict.str());
  }

  const std::vector<std::string> negations =
      cfg.arabic_tool_words ? std::vector<std::string>{"لا", "لن", "لم", "ليس"}
                            : std::vector<std::string>{"la", "lan", "lam", "laysa"};
  const std::vector<std::string> intensifiers =
      cfg.arabic_tool_words ? std::vector<std::string>{"إفراط", "جدا", "كبيراً", "مطلق"}
                            : std::vector<std::string>{"ifrat", "jiddan", "kabiran", "mutlaq"};
  {
    std::string n, i;
    for (const auto& w : negations) n += w + "\n";
    for (const auto& w : intensifiers) i += w + "\n";
    io::write_file_atomic(out.negations, n);
    io::write_file_atomic(out.intensifiers, i);
  }

  // Stale documents from an earlier, larger run would leak into the corpus.
  for (const char* sub : {"pos", "neg"}) {
    const fs::path dir = out.corpus_dir / sub;
    if (!fs::is_directory(dir)) continue;
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.is_regular_file() && e.path().extension() == ".txt") fs::remove(e.path());
    }
  }

  static const char* kNoise[] = {"123", "10/1", "%", "2017", "--", "3:5", "#", "(7)"};
  static const char* kEnds[] = {".", ".", ".", "!", "?", "\n"};

  for (Label cls : {Label::positive, Label::negative}) {
    const bool positive_doc = cls == Label::positive;
    const double density = positive_doc ? cfg.positive_density : cfg.negative_density;
    const fs::path dir = out.corpus_dir / (positive_doc ? "pos" : "neg");
    fs::create_directories(dir);

    for (std::size_t d = 0; d < cfg.docs_per_class; ++d) {
      CounterRng rng(derive_seed(cfg.seed, std::string("synth-doc-") + (positive_doc ? "pos-" : "neg-") +
                                               std::to_string(d)));
      const auto n_tokens = static_cast<std::size_t>(rng.between(
          static_cast<std::int64_t>(cfg.min_tokens), static_cast<std::int64_t>(cfg.max_tokens)));

      std::string text;
      std::size_t emitted = 0;
      while (emitted < n_tokens) {
        const auto len = static_cast<std::size_t>(rng.between(
            static_cast<std::int64_t>(cfg.min_sentence), static_cast<std::int64_t>(cfg.max_sentence)));
        std::vector<std::string> words;
        for (std::size_t t = 0; t < len && emitted < n_tokens; ++t, ++emitted) {
          if (rng.bernoulli(cfg.noise_fraction)) {
            words.emplace_back(kNoise[rng.below(std::size(kNoise))]);
          } else if (rng.bernoulli(density)) {
            bool own_side = rng.bernoulli(cfg.polarity_bias);
            const bool ruled = rng.bernoulli(cfg.rule_fraction);
            const bool negated = ruled && rng.bernoulli(0.5);
            // A negated term is drawn from the opposite side so that, once
            // the negation is applied, it still supports the document label.
            if (negated) own_side = !own_side;
            const bool positive_term = own_side == positive_doc;
            const auto& pool = positive_term ? v.positive : v.negative;
            if (negated) words.push_back(negations[rng.below(negations.size())]);
            words.push_back(surface_of(pool[rng.below(pool.size())], rng));
            if (ruled && !negated) words.push_back(intensifiers[rng.below(intensifiers.size())]);
          } else {
            words.push_back(surface_of(v.pick_neutral(rng), rng));
          }
        }
        for (std::size_t w = 0; w < words.size(); ++w) {
          if (w) text += ' ';
          text += words[w];
        }
        const std::string end = kEnds[rng.below(std::size(kEnds))];
        text += end;
        if (end != "\n") text += ' ';
      }
      text += '\n';
      io::write_file_atomic(dir / file_name(positive_doc ? "pos_" : "neg_", d), text);
    }
  }
  return out;
}

}  // namespace mlsa

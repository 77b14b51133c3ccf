#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "mlsa/error.hpp"
#include "mlsa/lexicon.hpp"
#include "mlsa/rng.hpp"
#include "mlsa/scoring.hpp"
#include "test_support.hpp"

using namespace mlsa;

namespace {

// Words separated by spaces; "|" closes a sentence. Lemma = surface.
TokenizedDocument make_doc(const std::vector<std::string>& words) {
  TokenizedDocument d{"d", Label::positive, {}, {}, {}};
  std::size_t begin = 0;
  for (const auto& w : words) {
    if (w == "|") {
      if (d.tokens.size() > begin) d.sentences.push_back({begin, d.tokens.size()});
      begin = d.tokens.size();
      continue;
    }
    d.tokens.push_back({w, d.tokens.size()});
    d.lemmas.push_back(w);
  }
  if (d.tokens.size() > begin) d.sentences.push_back({begin, d.tokens.size()});
  return d;
}

std::vector<double> adjusted(const std::vector<ScoredToken>& s) {
  std::vector<double> out;
  for (const auto& t : s) out.push_back(t.adjusted);
  return out;
}

std::vector<double> run(const std::vector<std::string>& words, const PriorMap& priors,
                        const RuleConfig& cfg) {
  auto doc = make_doc(words);
  return adjusted(apply_rules(score_tokens(doc, priors, cfg), doc, cfg));
}

PolarityPair oracle_s_max(const std::vector<double>& xs) {
  PolarityPair p{0, 0};
  for (double x : xs) {
    if (x > 0 && x > p.pos) p.pos = x;
    if (x < 0 && -x > p.neg) p.neg = -x;
  }
  return p;
}

}  // namespace

TEST_CASE("score_tokens looks up priors") {
  const std::vector<SenseScore> saxin{
      {0.375, 0.25}, {0.75, 0.125}, {0.5, 0.375}, {0.25, 0.25}, {0.125, 0.0}};
  PriorMap priors{{"sAxin", aggregate_prior(saxin, PriorFormula::max_sub)}};
  auto doc = make_doc({"sAxin", "other"});
  auto s = score_tokens(doc, priors);
  REQUIRE(s.size() == 2);
  CHECK(s[0].prior == 0.375);
  CHECK(s[0].adjusted == 0.375);
  CHECK(s[1].prior == 0.0);
  CHECK(s[1].index == 1);
  CHECK(score_tokens(make_doc({}), priors).empty());
}

TEST_CASE("tool words get prior zero") {
  auto cfg = RuleConfig::arabic_defaults();
  PriorMap priors{{"جدا", 0.5}, {"لم", -0.25}, {"جيد", 0.4}};
  auto doc = make_doc({"جدا", "لم", "جيد"});
  auto s = score_tokens(doc, priors, cfg);
  CHECK(s[0].prior == 0.0);
  CHECK(s[1].prior == 0.0);
  CHECK(s[2].prior == 0.4);
}

TEST_CASE("negation and intensification examples") {
  auto cfg = RuleConfig::arabic_defaults();
  PriorMap priors{{"X", 0.4}, {"N", -0.3}};
  CHECK(run({"لم", "X"}, priors, cfg) == std::vector<double>{0, -0.4});
  CHECK(run({"X", "جدا"}, priors, cfg) == std::vector<double>{1.0, 0});
  CHECK(run({"لم", "X", "جدا"}, priors, cfg) == std::vector<double>{0, -1.0, 0});
  CHECK(run({"جدا", "N"}, priors, cfg) == std::vector<double>{0, -1.0});
  CHECK(run({"لا", "N", "جدا"}, priors, cfg) == std::vector<double>{0, 1.0, 0});
  // negation after the term does nothing
  CHECK(run({"X", "لم"}, priors, cfg) == std::vector<double>{0.4, 0});
  // diacritized and punctuated tool words still match
  CHECK(run({"كَبِيراً", "X"}, priors, cfg) == std::vector<double>{0, 1.0});
  CHECK(run({"X", "جدا،"}, priors, cfg) == std::vector<double>{1.0, 0});
}

TEST_CASE("rules stay inside sentences") {
  auto cfg = RuleConfig::arabic_defaults();
  PriorMap priors{{"X", 0.4}};
  CHECK(run({"لم", "|", "X"}, priors, cfg) == std::vector<double>{0, 0.4});
  CHECK(run({"X", "|", "جدا"}, priors, cfg) == std::vector<double>{0.4, 0});
  CHECK(run({"جدا", "|", "X", "|", "لم"}, priors, cfg) == std::vector<double>{0, 0.4, 0});
}

TEST_CASE("rule window") {
  auto cfg = RuleConfig::arabic_defaults();
  PriorMap priors{{"X", 0.4}};
  CHECK(run({"لم", "a", "X"}, priors, cfg) == std::vector<double>{0, 0, 0.4});
  cfg.window = 2;
  CHECK(run({"لم", "a", "X"}, priors, cfg) == std::vector<double>{0, 0, -0.4});
  CHECK(run({"X", "a", "جدا"}, priors, cfg) == std::vector<double>{1.0, 0, 0});
}

TEST_CASE("rule properties on random sentences") {
  auto cfg = RuleConfig::arabic_defaults();
  const char* tools[] = {"لا", "لن", "لم", "ليس", "إفراط", "جدا", "كبيراً", "مطلق"};
  CounterRng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    PriorMap priors;
    std::vector<std::string> words;
    const auto n = 1 + rng.below(15);
    for (std::size_t i = 0; i < n; ++i) {
      const auto kind = rng.below(4);
      if (kind == 0) {
        words.push_back(tools[rng.below(8)]);
      } else if (kind == 1) {
        words.push_back("|");
      } else {
        const std::string w = "w" + std::to_string(i);
        priors[w] = kind == 2 ? 0.0 : rng.uniform(-1.0, 1.0);
        words.push_back(w);
      }
    }
    auto doc = make_doc(words);
    auto scored = score_tokens(doc, priors, cfg);
    auto ruled = apply_rules(scored, doc, cfg);
    REQUIRE(ruled.size() == scored.size());
    for (std::size_t i = 0; i < ruled.size(); ++i) {
      CHECK(std::abs(ruled[i].adjusted) <= 1.0);
      if (scored[i].prior == 0.0) CHECK(ruled[i].adjusted == 0.0);
      if (std::abs(ruled[i].adjusted) == 1.0 && std::abs(scored[i].prior) != 1.0) {
        // only an intensifier can push a score to full magnitude
        bool near = false;
        for (std::size_t j = 0; j < doc.tokens.size(); ++j) {
          if (cfg.is_intensifier(doc.tokens[j].surface) && (j + 1 == i || i + 1 == j)) near = true;
        }
        CHECK(near);
      }
    }
    // bit-identical when scored twice
    auto again = score_tokens(doc, priors, cfg);
    for (std::size_t i = 0; i < scored.size(); ++i) {
      CHECK(std::memcmp(&again[i].adjusted, &scored[i].adjusted, sizeof(double)) == 0);
    }
  }
}

TEST_CASE("double negation and intensification sign") {
  CounterRng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const double s = rng.uniform(-1.0, 1.0);
    CHECK(negate(negate(s)) == s);
  }
  auto cfg = RuleConfig::arabic_defaults();
  for (double p : {0.1, -0.1, 0.9, -0.9, 1.0, -1.0}) {
    PriorMap priors{{"X", p}};
    const double got = run({"X", "جدا"}, priors, cfg)[0];
    CHECK(std::abs(got) == 1.0);
    CHECK(std::signbit(got) == std::signbit(p));
  }
}

TEST_CASE("s_max and sentence_score examples") {
  CHECK(s_max(std::vector<double>{0.3, -0.5, 0.2}) == PolarityPair{0.3, 0.5});
  CHECK(s_max(std::vector<double>{}) == PolarityPair{0, 0});
  CHECK(s_max(std::vector<double>{0.7}) == PolarityPair{0.7, 0});
  CHECK(sentence_score({0.3, 0.5}, SentenceFormula::max_sub) == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(sentence_score({0.3, 0.5}, SentenceFormula::max_max) == -0.5);
  CHECK(sentence_score({0, 0}, SentenceFormula::max_sub) == 0.0);
  CHECK(sentence_score({0, 0}, SentenceFormula::max_max) == 0.0);
  CHECK(sentence_score({0.4, 0.4}, SentenceFormula::max_max) == 0.4);
}

TEST_CASE("sentence scores match enumeration oracle") {
  CounterRng rng(31);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> xs(rng.below(12));
    for (auto& x : xs) x = rng.bernoulli(0.2) ? 0.0 : rng.uniform(-1.0, 1.0);
    const auto pair = s_max(xs);
    const auto o = oracle_s_max(xs);
    CHECK(pair == o);
    const double sub = sentence_score(pair, SentenceFormula::max_sub);
    const double mx = sentence_score(pair, SentenceFormula::max_max);
    CHECK(sub == o.pos - o.neg);
    CHECK(mx == (o.pos >= o.neg ? o.pos : -o.neg));
    CHECK((sub >= 0) == (mx >= 0));
    CHECK(std::abs(sub) <= 1.0);
    CHECK(std::abs(mx) <= 1.0);

    // single-sign sentences
    std::vector<double> one_sign(1 + rng.below(8));
    const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
    double biggest = 0;
    for (auto& x : one_sign) {
      x = sign * rng.uniform(0.01, 1.0);
      biggest = std::max(biggest, std::abs(x));
    }
    const auto p1 = s_max(one_sign);
    CHECK(std::abs(sentence_score(p1, SentenceFormula::max_sub)) == biggest);
    CHECK(std::abs(sentence_score(p1, SentenceFormula::max_max)) == biggest);
  }
}

TEST_CASE("sentence_scores per document") {
  auto doc = make_doc({"A", "B", "|", "C", "|", "D"});
  PriorMap priors{{"A", 0.3}, {"B", -0.5}, {"C", 0.2}};
  auto scored = score_tokens(doc, priors);
  auto s = sentence_scores(doc, scored, SentenceFormula::max_max);
  REQUIRE(s.size() == 3);
  CHECK(s[0].value == -0.5);
  CHECK(s[1].value == 0.2);
  CHECK(s[2].value == 0.0);
  CHECK(s[2].index == 2);
  CHECK(s[0].formula == SentenceFormula::max_max);
}

TEST_CASE("rule config validation and loading") {
  RuleConfig cfg;
  cfg.add_negation("no");
  cfg.add_intensifier("very");
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.is_tool_word("no"));
  CHECK_FALSE(cfg.is_tool_word("yes"));
  cfg.add_intensifier("no");
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  RuleConfig w = RuleConfig::arabic_defaults();
  w.window = 0;
  CHECK_THROWS_AS(w.validate(), ConfigError);

  testing::TempDir dir("rules");
  testing::write_text(dir / "neg.txt", "# negations\nla\nlam\n");
  testing::write_text(dir / "int.txt", "jiddan\n");
  auto loaded = RuleConfig::load(dir / "neg.txt", dir / "int.txt", 2);
  CHECK(loaded.negation_words.size() == 2);
  CHECK(loaded.is_intensifier("jiddan"));
  CHECK(loaded.window == 2);
  testing::write_text(dir / "int2.txt", "la\n");
  CHECK_THROWS_AS(RuleConfig::load(dir / "neg.txt", dir / "int2.txt"), ConfigError);
}

TEST_CASE("sentence formula names") {
  for (auto f : kAllSentenceFormulas) CHECK(parse_sentence_formula(to_string(f)) == f);
  CHECK(parse_sentence_formula("D_Max_Max") == SentenceFormula::max_max);
  CHECK_THROWS_AS(parse_sentence_formula("avg"), ConfigError);
}

#include "mlsa/scoring.hpp"

#include <algorithm>
#include <cctype>

#include "mlsa/error.hpp"
#include "mlsa/io_util.hpp"
#include "mlsa/text.hpp"

namespace mlsa {

namespace {

std::unordered_set<std::string> load_word_list(const std::filesystem::path& path) {
  const std::string contents = io::read_file(path);
  if (auto bad = text::find_invalid_utf8(contents)) {
    throw DataError("decode error: " + path.string() + " is not valid UTF-8 (byte offset " +
                    std::to_string(*bad) + ")");
  }
  std::unordered_set<std::string> words;
  for (const auto& line : io::lines(contents)) {
    if (line.empty() || line.front() == '#') continue;
    std::string key = text::lookup_key(line);
    if (!key.empty()) words.insert(std::move(key));
  }
  return words;
}

}  // namespace

RuleConfig RuleConfig::arabic_defaults() {
  RuleConfig cfg;
  for (auto w : {"لا", "لن", "لم", "ليس"}) cfg.add_negation(w);
  for (auto w : {"إفراط", "جدا", "كبيراً", "مطلق"}) cfg.add_intensifier(w);
  return cfg;
}

RuleConfig RuleConfig::load(const std::filesystem::path& negations,
                            const std::filesystem::path& intensifiers, std::size_t window) {
  RuleConfig cfg;
  cfg.negation_words = load_word_list(negations);
  cfg.intensifier_words = load_word_list(intensifiers);
  cfg.window = window;
  cfg.validate();
  return cfg;
}

void RuleConfig::add_negation(std::string_view word) { negation_words.insert(text::lookup_key(word)); }

void RuleConfig::add_intensifier(std::string_view word) {
  intensifier_words.insert(text::lookup_key(word));
}

bool RuleConfig::is_negation(std::string_view surface) const {
  return negation_words.count(text::lookup_key(surface)) > 0;
}

bool RuleConfig::is_intensifier(std::string_view surface) const {
  return intensifier_words.count(text::lookup_key(surface)) > 0;
}

bool RuleConfig::is_tool_word(std::string_view surface) const {
  const auto key = text::lookup_key(surface);
  return negation_words.count(key) > 0 || intensifier_words.count(key) > 0;
}

void RuleConfig::validate() const {
  if (window == 0) throw ConfigError("rule window must be >= 1");
  for (const auto& w : negation_words) {
    if (intensifier_words.count(w)) {
      throw ConfigError("word '" + w + "' is listed both as negation and intensifier");
    }
  }
}

std::string_view to_string(SentenceFormula f) {
  return f == SentenceFormula::max_sub ? "max_sub" : "max_max";
}

SentenceFormula parse_sentence_formula(std::string_view name) {
  std::string n;
  for (char c : name) {
    if (c == '-') c = '_';
    n += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (n.rfind("d_", 0) == 0) n.erase(0, 2);
  if (n == "max_sub") return SentenceFormula::max_sub;
  if (n == "max_max") return SentenceFormula::max_max;
  throw ConfigError("unknown sentence formula '" + std::string(name) +
                    "' (expected max_sub or max_max)");
}

std::vector<ScoredToken> score_tokens(const TokenizedDocument& doc, const PriorMap& priors) {
  std::vector<ScoredToken> out;
  out.reserve(doc.tokens.size());
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    double prior = 0.0;
    if (auto it = priors.find(doc.lemmas[i]); it != priors.end()) prior = it->second;
    out.push_back({i, prior, prior});
  }
  return out;
}

std::vector<ScoredToken> score_tokens(const TokenizedDocument& doc, const PriorMap& priors,
                                      const RuleConfig& rules) {
  auto out = score_tokens(doc, priors);
  for (auto& t : out) {
    if (rules.is_tool_word(doc.tokens[t.index].surface)) t.prior = t.adjusted = 0.0;
  }
  return out;
}

std::vector<ScoredToken> apply_rules(const std::vector<ScoredToken>& scored,
                                     const TokenizedDocument& doc, const RuleConfig& cfg) {
  cfg.validate();
  const std::size_t n = doc.tokens.size();
  if (scored.size() != n) throw DomainError("apply_rules: score list does not match document");

  std::vector<char> negation(n);
  std::vector<char> intensifier(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto key = text::lookup_key(doc.tokens[i].surface);
    negation[i] = cfg.negation_words.count(key) > 0;
    intensifier[i] = cfg.intensifier_words.count(key) > 0;
  }

  std::vector<ScoredToken> out = scored;
  for (const auto& sentence : doc.sentences) {
    for (std::size_t i = sentence.begin; i < sentence.end; ++i) {
      auto& tok = out[i];
      if (tok.prior == 0.0) continue;
      const std::size_t lo = i >= sentence.begin + cfg.window ? i - cfg.window : sentence.begin;
      const std::size_t hi = std::min(sentence.end, i + cfg.window + 1);

      double score = tok.prior;
      if (std::any_of(negation.begin() + lo, negation.begin() + i, [](char c) { return c; })) {
        score = negate(score);
      }
      const bool boosted =
          std::any_of(intensifier.begin() + lo, intensifier.begin() + i, [](char c) { return c; }) ||
          std::any_of(intensifier.begin() + i + 1, intensifier.begin() + hi, [](char c) { return c; });
      if (boosted) score = score > 0 ? 1.0 : -1.0;
      tok.adjusted = score;
    }
  }
  return out;
}

PolarityPair s_max(std::span<const double> term_scores) {
  PolarityPair p{0.0, 0.0};
  for (double s : term_scores) {
    if (s > 0) p.pos = std::max(p.pos, s);
    if (s < 0) p.neg = std::max(p.neg, -s);
  }
  return p;
}

double sentence_score(PolarityPair pair, SentenceFormula formula) {
  if (formula == SentenceFormula::max_sub) return pair.pos - pair.neg;
  return pair.pos >= pair.neg ? pair.pos : -pair.neg;
}

std::vector<SentenceScore> sentence_scores(const TokenizedDocument& doc,
                                           const std::vector<ScoredToken>& scored,
                                           SentenceFormula formula) {
  std::vector<SentenceScore> out;
  out.reserve(doc.sentences.size());
  std::vector<double> buf;
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    const auto& range = doc.sentences[s];
    buf.clear();
    for (std::size_t i = range.begin; i < range.end; ++i) buf.push_back(scored.at(i).adjusted);
    out.push_back({s, sentence_score(s_max(buf), formula), formula});
  }
  return out;
}

}  // namespace mlsa

#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mlsa/corpus_io.hpp"
#include "mlsa/lexicon.hpp"

namespace mlsa {

/// Negation and intensification tool words. Words are stored in lookup-key
/// form (diacritics removed) and matched against token surfaces, not lemmas.
struct RuleConfig {
  std::unordered_set<std::string> negation_words;
  std::unordered_set<std::string> intensifier_words;
  std::size_t window = 1;

  /// لا لن لم ليس / إفراط جدا كبيراً مطلق
  static RuleConfig arabic_defaults();
  /// One word per line; blank and '#' lines skipped.
  static RuleConfig load(const std::filesystem::path& negations,
                         const std::filesystem::path& intensifiers, std::size_t window = 1);

  void add_negation(std::string_view word);
  void add_intensifier(std::string_view word);
  bool is_negation(std::string_view surface) const;
  bool is_intensifier(std::string_view surface) const;
  bool is_tool_word(std::string_view surface) const;

  /// Throws ConfigError when the lists overlap or window is 0.
  void validate() const;
};

struct ScoredToken {
  std::size_t index;
  double prior;
  double adjusted;
};

enum class SentenceFormula { max_sub, max_max };

inline constexpr SentenceFormula kAllSentenceFormulas[] = {SentenceFormula::max_max,
                                                           SentenceFormula::max_sub};

std::string_view to_string(SentenceFormula f);
/// Accepts "max_sub", "D_Max_Max", ...
SentenceFormula parse_sentence_formula(std::string_view name);

struct SentenceScore {
  std::size_t index;
  double value;
  SentenceFormula formula;
};

using PriorMap = std::unordered_map<std::string, double>;

/// prior = priors[lemma] if present, else 0. adjusted starts equal to prior.
std::vector<ScoredToken> score_tokens(const TokenizedDocument& doc, const PriorMap& priors);
/// As above, but tool words from `rules` always get prior 0.
std::vector<ScoredToken> score_tokens(const TokenizedDocument& doc, const PriorMap& priors,
                                      const RuleConfig& rules);

inline double negate(double score) { return -score; }

/// For each token with a nonzero prior: a negation word up to `window`
/// tokens before it flips the sign; then an intensifier up to `window`
/// tokens before or after it pushes the score to +1 or -1 by current sign.
/// Neither rule looks across a sentence boundary.
std::vector<ScoredToken> apply_rules(const std::vector<ScoredToken>& scored,
                                     const TokenizedDocument& doc, const RuleConfig& cfg);

/// (max positive score, max |negative score|), zeros when absent.
PolarityPair s_max(std::span<const double> term_scores);

/// max_sub: pos - neg.  max_max: pos if pos >= neg, else -neg.
double sentence_score(PolarityPair pair, SentenceFormula formula);

/// One score per sentence of `doc`, built from the adjusted token scores.
std::vector<SentenceScore> sentence_scores(const TokenizedDocument& doc,
                                           const std::vector<ScoredToken>& scored,
                                           SentenceFormula formula);

}  // namespace mlsa

#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mlsa {

/// One posterior (per-sense) polarity pair, each in [0, 1].
struct SenseScore {
  double positive;
  double negative;
};

struct LexiconEntry {
  std::string lemma;
  std::vector<SenseScore> senses;  // file order, never empty
};

/// Ordered by lemma so that emitted prior tables are deterministic.
using Lexicon = std::map<std::string, LexiconEntry, std::less<>>;

struct PolarityPair {
  double pos;
  double neg;
  friend bool operator==(const PolarityPair&, const PolarityPair&) = default;
};

enum class PriorFormula { avg_max, max_max, avg_sub, max_sub, avg_avg };

inline constexpr PriorFormula kAllPriorFormulas[] = {
    PriorFormula::max_max, PriorFormula::avg_max, PriorFormula::avg_sub,
    PriorFormula::max_sub, PriorFormula::avg_avg};

struct PriorScore {
  std::string lemma;
  double value;
  PriorFormula formula;
};

std::string_view to_string(PriorFormula f);
/// Accepts "max_sub", "M_Max_Sub", "m-max-sub" and similar spellings.
PriorFormula parse_prior_formula(std::string_view name);

/// TSV `lemma<TAB>positive<TAB>negative`; repeated lemmas accumulate senses.
/// Blank and '#' lines are skipped. Throws ParseError with the line number.
Lexicon load_lexicon(const std::filesystem::path& path);
Lexicon parse_lexicon(std::string_view contents, const std::string& source_name = "<lexicon>");

/// Column-wise mean of |positive| and |negative|.
PolarityPair f_avg(std::span<const SenseScore> senses);
/// Column-wise max of |positive| and |negative|.
PolarityPair f_max(std::span<const SenseScore> senses);

/// Collapses a sense list into a prior polarity in [-1, 1]:
///   avg_max / max_max  larger of the pair, negated when neg strictly wins
///   avg_sub / max_sub  pos - neg
///   avg_avg            (pos + (-neg)) / 2
double aggregate_prior(std::span<const SenseScore> senses, PriorFormula formula);

PriorScore prior_score(const LexiconEntry& entry, PriorFormula formula);

/// lemma -> prior for every lexicon entry.
std::unordered_map<std::string, double> prior_table(const Lexicon& lexicon, PriorFormula formula);

/// `lemma<TAB>prior` lines in lemma order.
std::string priors_tsv(const Lexicon& lexicon, PriorFormula formula);

}  // namespace mlsa

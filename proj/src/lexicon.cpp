#include "mlsa/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "mlsa/error.hpp"
#include "mlsa/io_util.hpp"
#include "mlsa/text.hpp"

namespace mlsa {

std::string_view to_string(PriorFormula f) {
  switch (f) {
    case PriorFormula::avg_max: return "avg_max";
    case PriorFormula::max_max: return "max_max";
    case PriorFormula::avg_sub: return "avg_sub";
    case PriorFormula::max_sub: return "max_sub";
    case PriorFormula::avg_avg: return "avg_avg";
  }
  return "?";
}

PriorFormula parse_prior_formula(std::string_view name) {
  std::string n;
  for (char c : name) {
    if (c == '-') c = '_';
    n += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (n.rfind("m_", 0) == 0) n.erase(0, 2);
  for (auto f : kAllPriorFormulas) {
    if (n == to_string(f)) return f;
  }
  throw ConfigError("unknown prior formula '" + std::string(name) +
                    "' (expected avg_max, max_max, avg_sub, max_sub or avg_avg)");
}

Lexicon parse_lexicon(std::string_view contents, const std::string& source_name) {
  Lexicon lex;
  const auto all = io::lines(contents);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::string& line = all[i];
    if (line.empty() || line.front() == '#') continue;
    const auto fields = text::split_tabs(line);
    if (fields.size() != 3 || fields[0].empty()) {
      throw ParseError(source_name, i + 1, "expected 'lemma<TAB>positive<TAB>negative'");
    }
    SenseScore s{};
    if (!io::parse_double(fields[1], s.positive) || !io::parse_double(fields[2], s.negative)) {
      throw ParseError(source_name, i + 1, "score is not a number");
    }
    auto in_range = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
    if (!in_range(s.positive) || !in_range(s.negative)) {
      throw ParseError(source_name, i + 1, "score outside [0, 1]");
    }
    const std::string lemma(fields[0]);
    auto [it, inserted] = lex.try_emplace(lemma, LexiconEntry{lemma, {}});
    it->second.senses.push_back(s);
  }
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  const std::string contents = io::read_file(path);
  if (auto bad = text::find_invalid_utf8(contents)) {
    throw DataError("decode error: " + path.string() + " is not valid UTF-8 (byte offset " +
                    std::to_string(*bad) + ")");
  }
  return parse_lexicon(contents, path.string());
}

PolarityPair f_avg(std::span<const SenseScore> senses) {
  if (senses.empty()) throw DomainError("f_avg: empty sense list");
  PolarityPair p{0.0, 0.0};
  for (const auto& s : senses) {
    p.pos += std::abs(s.positive);
    p.neg += std::abs(s.negative);
  }
  const auto n = static_cast<double>(senses.size());
  return {p.pos / n, p.neg / n};
}

PolarityPair f_max(std::span<const SenseScore> senses) {
  if (senses.empty()) throw DomainError("f_max: empty sense list");
  PolarityPair p{0.0, 0.0};
  for (const auto& s : senses) {
    p.pos = std::max(p.pos, std::abs(s.positive));
    p.neg = std::max(p.neg, std::abs(s.negative));
  }
  return p;
}

namespace {

// Ties go to the positive side: the sign is restored only when negative wins.
double signed_max(PolarityPair p) { return p.neg > p.pos ? -p.neg : p.pos; }

}  // namespace

double aggregate_prior(std::span<const SenseScore> senses, PriorFormula formula) {
  switch (formula) {
    case PriorFormula::avg_max: return signed_max(f_avg(senses));
    case PriorFormula::max_max: return signed_max(f_max(senses));
    case PriorFormula::avg_sub: {
      const auto p = f_avg(senses);
      return p.pos - p.neg;
    }
    case PriorFormula::max_sub: {
      const auto p = f_max(senses);
      return p.pos - p.neg;
    }
    case PriorFormula::avg_avg: {
      const auto p = f_avg(senses);
      return (p.pos + (-p.neg)) / 2.0;
    }
  }
  throw DomainError("aggregate_prior: unknown formula");
}

PriorScore prior_score(const LexiconEntry& entry, PriorFormula formula) {
  return {entry.lemma, aggregate_prior(entry.senses, formula), formula};
}

std::unordered_map<std::string, double> prior_table(const Lexicon& lexicon, PriorFormula formula) {
  std::unordered_map<std::string, double> out;
  out.reserve(lexicon.size());
  for (const auto& [lemma, entry] : lexicon) out.emplace(lemma, aggregate_prior(entry.senses, formula));
  return out;
}

std::string priors_tsv(const Lexicon& lexicon, PriorFormula formula) {
  std::ostringstream out;
  for (const auto& [lemma, entry] : lexicon) {
    out << lemma << '\t' << io::format_double(aggregate_prior(entry.senses, formula)) << '\n';
  }
  return std::move(out).str();
}

}  // namespace mlsa

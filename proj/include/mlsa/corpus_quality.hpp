#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mlsa/corpus_io.hpp"

namespace mlsa {

struct FrequencyEntry {
  std::string word;
  std::size_t count;
  std::size_t rank;  // 1-based
};

/// Sorted by count descending, ties by word ascending; ranks 1..N.
using FrequencyTable = std::vector<FrequencyEntry>;

enum class LogBase { natural, base2 };

struct QualityReport {
  double kl_raw = 0.0;   // ideal frequencies vs raw counts, no normalisation
  double kl_prob = 0.0;  // both sides normalised to probability vectors
  double zipf_exponent_a = 1.0;
  std::string table_path;
};

FrequencyTable rank_frequencies(const std::vector<TokenizedDocument>& docs);
FrequencyTable rank_frequencies(const std::vector<std::string>& words);

/// Zipf's law: c / r^a.
double ideal_zipf_frequency(double c, double a, std::size_t r);

enum class Smoothing { additive, none };

/// Sum over p(i) > 0 of p(i) * log(p(i) / q(i)). With Smoothing::additive a
/// q containing zeros gets +1e-12 per cell and is renormalised; with
/// Smoothing::none a zero q(i) under a positive p(i) throws DomainError.
double kl_divergence(std::span<const double> p, std::span<const double> q,
                     LogBase base = LogBase::natural, Smoothing smoothing = Smoothing::additive);

/// Same sum without any normalisation; used for the raw-frequency variant.
/// Not bounded below by zero when p and q have different totals.
double kl_unnormalized(std::span<const double> p, std::span<const double> q,
                       LogBase base = LogBase::natural);

/// CSV: rank,word,actual_count,ideal_frequency,log_rank,log_actual,log_ideal
std::string quality_csv(const FrequencyTable& table, double a, LogBase base = LogBase::natural);

/// Builds the ideal Zipf curve over ranks 1..N with C = top count, computes
/// both KL variants with the ideal distribution as P, and writes the
/// rank table to csv_path when it is non-empty.
QualityReport quality_report(const FrequencyTable& table, double a,
                             const std::string& csv_path = {},
                             LogBase base = LogBase::natural);

}  // namespace mlsa

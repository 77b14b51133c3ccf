#include "mlsa/corpus_quality.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "mlsa/error.hpp"
#include "mlsa/io_util.hpp"

namespace mlsa {

namespace {

constexpr double kSmoothing = 1e-12;

double log_in(double x, LogBase base) {
  return base == LogBase::natural ? std::log(x) : std::log2(x);
}

}  // namespace

FrequencyTable rank_frequencies(const std::vector<std::string>& words) {
  if (words.empty()) throw DomainError("rank_frequencies: corpus has no tokens");
  std::map<std::string, std::size_t> counts;
  for (const auto& w : words) ++counts[w];

  FrequencyTable table;
  table.reserve(counts.size());
  for (auto& [w, c] : counts) table.push_back({w, c, 0});
  // std::map iteration is already word-ascending, so a stable sort on count
  // keeps the lexicographic tie order.
  std::stable_sort(table.begin(), table.end(),
                   [](const auto& a, const auto& b) { return a.count > b.count; });
  for (std::size_t i = 0; i < table.size(); ++i) table[i].rank = i + 1;
  return table;
}

FrequencyTable rank_frequencies(const std::vector<TokenizedDocument>& docs) {
  std::vector<std::string> words;
  for (const auto& d : docs) {
    for (const auto& t : d.tokens) words.push_back(t.surface);
  }
  return rank_frequencies(words);
}

double ideal_zipf_frequency(double c, double a, std::size_t r) {
  if (r == 0) throw DomainError("ideal_zipf_frequency: rank must be >= 1");
  if (!(c > 0)) throw DomainError("ideal_zipf_frequency: c must be > 0");
  return c / std::pow(static_cast<double>(r), a);
}

double kl_divergence(std::span<const double> p, std::span<const double> q, LogBase base,
                     Smoothing smoothing) {
  if (p.size() != q.size()) throw DomainError("kl_divergence: length mismatch");
  if (p.empty()) throw DomainError("kl_divergence: empty distributions");
  const double psum = std::accumulate(p.begin(), p.end(), 0.0);
  if (std::abs(psum - 1.0) > 1e-9) throw DomainError("kl_divergence: p does not sum to 1");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0 || q[i] < 0) throw DomainError("kl_divergence: negative probability");
  }

  std::vector<double> qs(q.begin(), q.end());
  if (smoothing == Smoothing::none) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] > 0 && qs[i] == 0.0) {
        throw DomainError("kl_divergence: q(" + std::to_string(i) + ") is zero where p is positive");
      }
    }
  } else if (std::any_of(qs.begin(), qs.end(), [](double v) { return v == 0.0; })) {
    for (auto& v : qs) v += kSmoothing;
    const double total = std::accumulate(qs.begin(), qs.end(), 0.0);
    for (auto& v : qs) v /= total;
  }

  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0) d += p[i] * log_in(p[i] / qs[i], base);
  }
  // Rounding can leave a tiny negative residue for p == q.
  return std::max(d, 0.0);
}

double kl_unnormalized(std::span<const double> p, std::span<const double> q, LogBase base) {
  if (p.size() != q.size()) throw DomainError("kl_unnormalized: length mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) continue;
    if (q[i] <= 0) throw DomainError("kl_unnormalized: q is zero where p is positive");
    d += p[i] * log_in(p[i] / q[i], base);
  }
  return d;
}

std::string quality_csv(const FrequencyTable& table, double a, LogBase base) {
  if (table.empty()) throw DomainError("quality_csv: empty frequency table");
  const double c = static_cast<double>(table.front().count);
  std::ostringstream out;
  out << "rank,word,actual_count,ideal_frequency,log_rank,log_actual,log_ideal\n";
  for (const auto& e : table) {
    const double ideal = ideal_zipf_frequency(c, a, e.rank);
    out << e.rank << ',' << io::csv_field(e.word) << ',' << e.count << ','
        << io::format_double(ideal) << ','
        << io::format_double(log_in(static_cast<double>(e.rank), base)) << ','
        << io::format_double(log_in(static_cast<double>(e.count), base)) << ','
        << io::format_double(log_in(ideal, base)) << '\n';
  }
  return std::move(out).str();
}

QualityReport quality_report(const FrequencyTable& table, double a, const std::string& csv_path,
                             LogBase base) {
  if (table.empty()) throw DomainError("quality_report: empty frequency table");
  const double c = static_cast<double>(table.front().count);

  std::vector<double> ideal(table.size());
  std::vector<double> actual(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    ideal[i] = ideal_zipf_frequency(c, a, table[i].rank);
    actual[i] = static_cast<double>(table[i].count);
  }

  QualityReport report;
  report.zipf_exponent_a = a;
  report.kl_raw = kl_unnormalized(ideal, actual, base);

  const double ideal_total = std::accumulate(ideal.begin(), ideal.end(), 0.0);
  const double actual_total = std::accumulate(actual.begin(), actual.end(), 0.0);
  for (auto& v : ideal) v /= ideal_total;
  for (auto& v : actual) v /= actual_total;
  report.kl_prob = kl_divergence(ideal, actual, base);

  if (!csv_path.empty()) {
    io::write_file_atomic(csv_path, quality_csv(table, a, base));
    report.table_path = csv_path;
  }
  return report;
}

}  // namespace mlsa

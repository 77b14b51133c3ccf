#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mlsa/corpus_io.hpp"
#include "mlsa/scoring.hpp"

namespace mlsa {

enum class FeatureVariant { term8, term6, doc7, doc5, doc4 };
enum class Level { term, document };

std::size_t width(FeatureVariant v);
Level level_of(FeatureVariant v);
const std::vector<std::string>& feature_names(FeatureVariant v);
/// "8", "6", "7", "5", "4" or "term8", "doc7", ...
FeatureVariant parse_variant(std::string_view s);
std::string_view to_string(FeatureVariant v);
std::string_view to_string(Level l);
Level parse_level(std::string_view s);

struct TermFeatureVector {
  std::size_t count_pos = 0;
  std::size_t count_neg = 0;
  double sum_pos = 0.0;
  double sum_neg = 0.0;  // <= 0
  double avg_pos = 0.0;
  double avg_neg = 0.0;  // <= 0
  double first_subj = 0.0;
  double last_subj = 0.0;
  Label label = Label::negative;

  /// TERM8 is the full vector; TERM6 drops first_subj and last_subj.
  std::vector<double> row(FeatureVariant v) const;
};

struct DocFeatureVector {
  std::size_t count_pos_sent = 0;
  std::size_t count_neg_sent = 0;
  double max_pos = 0.0;
  double max_neg = 0.0;  // most negative sentence score, <= 0
  double first_score = 0.0;
  double middle_score = 0.0;  // sentence index (n - 1) / 2
  double last_score = 0.0;
  Label label = Label::negative;

  /// DOC7 full; DOC5 drops max_pos/max_neg; DOC4 keeps the first four.
  std::vector<double> row(FeatureVariant v) const;
};

TermFeatureVector term_features(std::span<const double> scores, Label label);
TermFeatureVector term_features(const std::vector<ScoredToken>& scored, Label label);

DocFeatureVector doc_features(std::span<const double> sentence_scores, Label label);
DocFeatureVector doc_features(const std::vector<SentenceScore>& sentences, Label label);

/// Fixed-width numeric rows with binary labels, stored row-major.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(FeatureVariant variant) : variant_(variant), width_(mlsa::width(variant)) {}
  /// Free-form dataset (toy problems, tests): names are f0..f{width-1}.
  static Dataset raw(std::size_t width);

  void add(std::span<const double> row, Label label, std::string id = {});

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  std::size_t width() const { return width_; }
  std::optional<FeatureVariant> variant() const { return variant_; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * width_, width_};
  }
  Label label(std::size_t i) const { return labels_[i]; }
  const std::vector<Label>& labels() const { return labels_; }
  const std::string& id(std::size_t i) const { return ids_[i]; }
  std::vector<std::string> names() const;

  std::size_t count(Label l) const;
  /// Rows at the given indices, in that order.
  Dataset subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::optional<FeatureVariant> variant_;
  std::size_t width_ = 0;
  std::vector<double> values_;
  std::vector<Label> labels_;
  std::vector<std::string> ids_;
};

/// Header `label,<feature names>`, one row per document, full precision.
std::string dataset_csv(const Dataset& data);
Dataset parse_dataset_csv(std::string_view contents, const std::string& source_name = "<features>");
Dataset load_dataset_csv(const std::filesystem::path& path);

}  // namespace mlsa

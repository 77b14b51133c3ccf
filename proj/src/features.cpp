#include "mlsa/features.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mlsa/error.hpp"
#include "mlsa/io_util.hpp"

namespace mlsa {

namespace {

const std::vector<std::string> kTerm8 = {"count_pos", "count_neg", "sum_pos",    "sum_neg",
                                         "avg_pos",   "avg_neg",   "first_subj", "last_subj"};
const std::vector<std::string> kTerm6 = {kTerm8.begin(), kTerm8.begin() + 6};
const std::vector<std::string> kDoc7 = {"count_pos_sent", "count_neg_sent", "max_pos",   "max_neg",
                                        "first_score",    "middle_score",   "last_score"};
const std::vector<std::string> kDoc5 = {"count_pos_sent", "count_neg_sent", "first_score",
                                        "middle_score", "last_score"};
const std::vector<std::string> kDoc4 = {kDoc7.begin(), kDoc7.begin() + 4};

constexpr FeatureVariant kVariants[] = {FeatureVariant::term8, FeatureVariant::term6,
                                        FeatureVariant::doc7, FeatureVariant::doc5,
                                        FeatureVariant::doc4};

}  // namespace

std::size_t width(FeatureVariant v) { return feature_names(v).size(); }

Level level_of(FeatureVariant v) {
  return v == FeatureVariant::term8 || v == FeatureVariant::term6 ? Level::term : Level::document;
}

const std::vector<std::string>& feature_names(FeatureVariant v) {
  switch (v) {
    case FeatureVariant::term8: return kTerm8;
    case FeatureVariant::term6: return kTerm6;
    case FeatureVariant::doc7: return kDoc7;
    case FeatureVariant::doc5: return kDoc5;
    case FeatureVariant::doc4: return kDoc4;
  }
  throw DomainError("unknown feature variant");
}

std::string_view to_string(FeatureVariant v) {
  switch (v) {
    case FeatureVariant::term8: return "term8";
    case FeatureVariant::term6: return "term6";
    case FeatureVariant::doc7: return "doc7";
    case FeatureVariant::doc5: return "doc5";
    case FeatureVariant::doc4: return "doc4";
  }
  return "?";
}

FeatureVariant parse_variant(std::string_view s) {
  if (s == "8") return FeatureVariant::term8;
  if (s == "6") return FeatureVariant::term6;
  if (s == "7") return FeatureVariant::doc7;
  if (s == "5") return FeatureVariant::doc5;
  if (s == "4") return FeatureVariant::doc4;
  for (auto v : kVariants) {
    if (s == to_string(v)) return v;
  }
  throw ConfigError("unknown feature variant '" + std::string(s) + "' (expected 8, 6, 7, 5 or 4)");
}

std::string_view to_string(Level l) { return l == Level::term ? "term" : "document"; }

Level parse_level(std::string_view s) {
  if (s == "term") return Level::term;
  if (s == "document" || s == "doc") return Level::document;
  throw ConfigError("unknown level '" + std::string(s) + "' (expected term or document)");
}

std::vector<double> TermFeatureVector::row(FeatureVariant v) const {
  std::vector<double> r = {static_cast<double>(count_pos), static_cast<double>(count_neg),
                           sum_pos, sum_neg, avg_pos, avg_neg, first_subj, last_subj};
  if (v == FeatureVariant::term6) {
    r.resize(6);
  } else if (v != FeatureVariant::term8) {
    throw ConfigError("term features need variant 8 or 6");
  }
  return r;
}

std::vector<double> DocFeatureVector::row(FeatureVariant v) const {
  const double cp = static_cast<double>(count_pos_sent);
  const double cn = static_cast<double>(count_neg_sent);
  switch (v) {
    case FeatureVariant::doc7:
      return {cp, cn, max_pos, max_neg, first_score, middle_score, last_score};
    case FeatureVariant::doc5: return {cp, cn, first_score, middle_score, last_score};
    case FeatureVariant::doc4: return {cp, cn, max_pos, max_neg};
    default: throw ConfigError("document features need variant 7, 5 or 4");
  }
}

TermFeatureVector term_features(std::span<const double> scores, Label label) {
  TermFeatureVector f;
  f.label = label;
  bool seen = false;
  for (double s : scores) {
    if (s == 0.0) continue;
    if (s > 0) {
      ++f.count_pos;
      f.sum_pos += s;
    } else {
      ++f.count_neg;
      f.sum_neg += s;
    }
    if (!seen) f.first_subj = s;
    f.last_subj = s;
    seen = true;
  }
  if (f.count_pos) f.avg_pos = f.sum_pos / static_cast<double>(f.count_pos);
  if (f.count_neg) f.avg_neg = f.sum_neg / static_cast<double>(f.count_neg);
  return f;
}

TermFeatureVector term_features(const std::vector<ScoredToken>& scored, Label label) {
  std::vector<double> scores;
  scores.reserve(scored.size());
  for (const auto& t : scored) scores.push_back(t.adjusted);
  return term_features(scores, label);
}

DocFeatureVector doc_features(std::span<const double> scores, Label label) {
  DocFeatureVector f;
  f.label = label;
  if (scores.empty()) return f;
  for (double s : scores) {
    if (s > 0) {
      ++f.count_pos_sent;
      f.max_pos = std::max(f.max_pos, s);
    } else if (s < 0) {
      ++f.count_neg_sent;
      f.max_neg = std::min(f.max_neg, s);
    }
  }
  const std::size_t n = scores.size();
  f.first_score = scores.front();
  f.middle_score = scores[(n - 1) / 2];
  f.last_score = scores.back();
  return f;
}

DocFeatureVector doc_features(const std::vector<SentenceScore>& sentences, Label label) {
  std::vector<double> scores;
  scores.reserve(sentences.size());
  for (const auto& s : sentences) scores.push_back(s.value);
  return doc_features(scores, label);
}

Dataset Dataset::raw(std::size_t width) {
  Dataset d;
  d.width_ = width;
  return d;
}

void Dataset::add(std::span<const double> row, Label label, std::string id) {
  if (row.size() != width_) {
    throw DomainError("dataset row has width " + std::to_string(row.size()) + ", expected " +
                      std::to_string(width_));
  }
  values_.insert(values_.end(), row.begin(), row.end());
  labels_.push_back(label);
  ids_.push_back(std::move(id));
}

std::vector<std::string> Dataset::names() const {
  if (variant_) return feature_names(*variant_);
  std::vector<std::string> n;
  for (std::size_t i = 0; i < width_; ++i) n.push_back("f" + std::to_string(i));
  return n;
}

std::size_t Dataset::count(Label l) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), l));
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out;
  out.variant_ = variant_;
  out.width_ = width_;
  out.values_.reserve(indices.size() * width_);
  for (auto i : indices) out.add(row(i), labels_.at(i), ids_.at(i));
  return out;
}

std::string dataset_csv(const Dataset& data) {
  std::ostringstream out;
  out << "label";
  for (const auto& n : data.names()) out << ',' << n;
  out << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << to_int(data.label(i));
    for (double v : data.row(i)) out << ',' << io::format_double(v);
    out << '\n';
  }
  return std::move(out).str();
}

Dataset parse_dataset_csv(std::string_view contents, const std::string& source_name) {
  const auto all = io::lines(contents);
  if (all.empty() || all.front().empty()) throw ParseError(source_name, 1, "missing header");
  const auto header = io::split_csv(all.front());
  if (header.front() != "label") throw ParseError(source_name, 1, "first column must be 'label'");
  const std::vector<std::string> names(header.begin() + 1, header.end());
  if (names.empty()) throw ParseError(source_name, 1, "no feature columns");

  Dataset data = Dataset::raw(names.size());
  for (auto v : kVariants) {
    if (feature_names(v) == names) data = Dataset(v);
  }
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i].empty()) continue;
    const auto fields = io::split_csv(all[i]);
    if (fields.size() != names.size() + 1) {
      throw ParseError(source_name, i + 1, "expected " + std::to_string(names.size() + 1) + " fields");
    }
    Label label;
    if (fields[0] == "0") {
      label = Label::negative;
    } else if (fields[0] == "1") {
      label = Label::positive;
    } else {
      throw ParseError(source_name, i + 1, "label must be 0 or 1");
    }
    std::vector<double> row(names.size());
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (!io::parse_double(fields[k + 1], row[k]) || !std::isfinite(row[k])) {
        throw ParseError(source_name, i + 1, "bad number in column '" + names[k] + "'");
      }
    }
    data.add(row, label, "row" + std::to_string(i));
  }
  return data;
}

Dataset load_dataset_csv(const std::filesystem::path& path) {
  return parse_dataset_csv(io::read_file(path), path.string());
}

}  // namespace mlsa

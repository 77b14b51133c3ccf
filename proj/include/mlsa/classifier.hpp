#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "mlsa/ann.hpp"
#include "mlsa/dtree.hpp"
#include "mlsa/svm.hpp"

namespace mlsa {

enum class ClassifierKind { ann, dtree, svm };

inline constexpr ClassifierKind kAllClassifiers[] = {ClassifierKind::ann, ClassifierKind::dtree,
                                                     ClassifierKind::svm};

std::string_view to_string(ClassifierKind k);
ClassifierKind parse_classifier(std::string_view s);

struct ClassifierConfig {
  ClassifierKind kind = ClassifierKind::ann;
  AnnConfig ann;
  TreeConfig tree;
  SvmConfig svm;
};

using Model = std::variant<AnnModel, TreeModel, SvmModel>;

struct Prediction {
  Label label;
  double score;
};

/// The seed only matters for the ANN; the tree and SVM are deterministic.
Model train(const ClassifierConfig& config, const Dataset& train, std::uint64_t seed);

/// label = positive iff score >= 0. Scores: ANN output, SVM decision value,
/// tree leaf positive proportion - 0.5. Throws DomainError on width mismatch.
Prediction predict(const Model& model, std::span<const double> row);

ClassifierKind kind_of(const Model& model);
std::size_t input_width(const Model& model);

inline constexpr int kModelFormatVersion = 1;

/// Versioned JSON: {"format_version", "kind", "hyperparameters", ...}.
std::string serialize_model(const Model& model);
Model deserialize_model(std::string_view json_text);

}  // namespace mlsa

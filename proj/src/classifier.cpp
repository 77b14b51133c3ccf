#include "mlsa/classifier.hpp"

#include <json.hpp>

#include "mlsa/error.hpp"

using nlohmann::json;

namespace mlsa {

std::string_view to_string(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::ann: return "ann";
    case ClassifierKind::dtree: return "dtree";
    case ClassifierKind::svm: return "svm";
  }
  return "?";
}

ClassifierKind parse_classifier(std::string_view s) {
  for (auto k : kAllClassifiers) {
    if (s == to_string(k)) return k;
  }
  if (s == "tree" || s == "d-tree") return ClassifierKind::dtree;
  throw ConfigError("unknown classifier '" + std::string(s) + "' (expected ann, dtree or svm)");
}

Model train(const ClassifierConfig& config, const Dataset& data, std::uint64_t seed) {
  switch (config.kind) {
    case ClassifierKind::ann: return train_ann(data, config.ann, seed);
    case ClassifierKind::dtree: return train_dtree(data, config.tree);
    case ClassifierKind::svm: return train_svm(data, config.svm);
  }
  throw ConfigError("unknown classifier kind");
}

namespace {

struct Predictor {
  std::span<const double> row;

  Prediction operator()(const AnnModel& m) const { return from_score(ann_decision(m, row)); }
  Prediction operator()(const SvmModel& m) const { return from_score(svm_decision(m, row)); }
  Prediction operator()(const TreeModel& m) const { return from_score(tree_decision(m, row)); }

  static Prediction from_score(double s) {
    return {s >= 0 ? Label::positive : Label::negative, s};
  }
};

json norm_json(const NormalizationParams& n) { return {{"min", n.min}, {"max", n.max}}; }

NormalizationParams norm_from(const json& j) {
  return {j.at("min").get<std::vector<double>>(), j.at("max").get<std::vector<double>>()};
}

json to_json(const AnnModel& m) {
  const auto& c = m.config;
  return {{"kind", "ann"},
          {"hyperparameters",
           {{"hidden", c.hidden},
            {"restarts", c.restarts},
            {"max_epochs", c.max_epochs},
            {"lr", c.lr},
            {"momentum", c.momentum},
            {"lr_up", c.lr_up},
            {"lr_down", c.lr_down},
            {"max_perf_inc", c.max_perf_inc},
            {"min_grad", c.min_grad}}},
          {"activations", {{"hidden", "tanh"}, {"output", "tanh"}}},
          {"inputs", m.net.inputs},
          {"weights", m.net.params},
          {"normalization", norm_json(m.norm)},
          {"seed", m.seed},
          {"training_error", m.training_error},
          {"epochs_run", m.epochs_run}};
}

json to_json(const TreeModel& m) {
  json nodes = json::array();
  for (const auto& n : m.nodes) {
    nodes.push_back({{"feature", n.feature},
                     {"threshold", n.threshold},
                     {"left", n.left},
                     {"right", n.right},
                     {"pos", n.pos},
                     {"neg", n.neg}});
  }
  return {{"kind", "dtree"},
          {"hyperparameters",
           {{"confidence", m.config.confidence},
            {"min_leaf", m.config.min_leaf},
            {"prune", m.config.prune}}},
          {"inputs", m.inputs},
          {"nodes", nodes}};
}

json to_json(const SvmModel& m) {
  return {{"kind", "svm"},
          {"hyperparameters", {{"C", m.C}, {"gamma", m.gamma}, {"kernel", "rbf"}}},
          {"inputs", m.inputs},
          {"support_vectors", m.support_vectors},
          {"alphas", m.alphas},
          {"labels", m.labels},
          {"bias", m.bias},
          {"normalization", norm_json(m.norm)},
          {"iterations", m.iterations},
          {"converged", m.converged}};
}

AnnModel ann_from(const json& j) {
  AnnModel m;
  const auto& h = j.at("hyperparameters");
  m.config.hidden = h.at("hidden");
  m.config.restarts = h.at("restarts");
  m.config.max_epochs = h.at("max_epochs");
  m.config.lr = h.at("lr");
  m.config.momentum = h.at("momentum");
  m.config.lr_up = h.at("lr_up");
  m.config.lr_down = h.at("lr_down");
  m.config.max_perf_inc = h.at("max_perf_inc");
  m.config.min_grad = h.at("min_grad");
  m.net.inputs = j.at("inputs");
  m.net.hidden = m.config.hidden;
  m.net.params = j.at("weights").get<std::vector<double>>();
  if (m.net.params.size() != AnnNet::param_count(m.net.inputs, m.net.hidden)) {
    throw DataError("ann model: weight count does not match layer sizes");
  }
  m.norm = norm_from(j.at("normalization"));
  m.seed = j.at("seed");
  m.training_error = j.at("training_error");
  m.epochs_run = j.at("epochs_run");
  return m;
}

TreeModel tree_from(const json& j) {
  TreeModel m;
  const auto& h = j.at("hyperparameters");
  m.config.confidence = h.at("confidence");
  m.config.min_leaf = h.at("min_leaf");
  m.config.prune = h.at("prune");
  m.inputs = j.at("inputs");
  for (const auto& n : j.at("nodes")) {
    TreeNode node;
    node.feature = n.at("feature");
    node.threshold = n.at("threshold");
    node.left = n.at("left");
    node.right = n.at("right");
    node.pos = n.at("pos");
    node.neg = n.at("neg");
    m.nodes.push_back(node);
  }
  const auto count = static_cast<int>(m.nodes.size());
  if (count == 0) throw DataError("dtree model: no nodes");
  for (const auto& n : m.nodes) {
    if (!n.is_leaf() && (n.left <= 0 || n.left >= count || n.right <= 0 || n.right >= count ||
                         n.feature >= static_cast<int>(m.inputs))) {
      throw DataError("dtree model: dangling child link");
    }
  }
  return m;
}

SvmModel svm_from(const json& j) {
  SvmModel m;
  const auto& h = j.at("hyperparameters");
  m.C = h.at("C");
  m.gamma = h.at("gamma");
  m.inputs = j.at("inputs");
  m.support_vectors = j.at("support_vectors").get<std::vector<std::vector<double>>>();
  m.alphas = j.at("alphas").get<std::vector<double>>();
  m.labels = j.at("labels").get<std::vector<int>>();
  m.bias = j.at("bias");
  m.norm = norm_from(j.at("normalization"));
  m.iterations = j.at("iterations");
  m.converged = j.at("converged");
  if (m.alphas.size() != m.support_vectors.size() || m.labels.size() != m.alphas.size()) {
    throw DataError("svm model: support vector arrays differ in length");
  }
  return m;
}

}  // namespace

Prediction predict(const Model& model, std::span<const double> row) {
  if (row.size() != input_width(model)) {
    throw DomainError("row width " + std::to_string(row.size()) + " does not match model width " +
                      std::to_string(input_width(model)));
  }
  return std::visit(Predictor{row}, model);
}

ClassifierKind kind_of(const Model& model) {
  return static_cast<ClassifierKind>(model.index());
}

std::size_t input_width(const Model& model) {
  return std::visit(
      [](const auto& m) -> std::size_t {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AnnModel>) {
          return m.net.inputs;
        } else {
          return m.inputs;
        }
      },
      model);
}

std::string serialize_model(const Model& model) {
  json j = std::visit([](const auto& m) { return to_json(m); }, model);
  j["format_version"] = kModelFormatVersion;
  return j.dump(2) + "\n";
}

Model deserialize_model(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
    if (j.at("format_version").get<int>() != kModelFormatVersion) {
      throw DataError("unsupported model format_version " + j.at("format_version").dump());
    }
    const std::string kind = j.at("kind");
    if (kind == "ann") return ann_from(j);
    if (kind == "dtree") return tree_from(j);
    if (kind == "svm") return svm_from(j);
    throw DataError("unknown model kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model JSON: ") + e.what());
  }
}

}  // namespace mlsa

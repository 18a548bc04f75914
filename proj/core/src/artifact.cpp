#include "meshgnn/artifact.hpp"

#include <json.hpp>

#include "meshgnn/errors.hpp"
#include "meshgnn/mesh_io.hpp"

namespace meshgnn {

namespace {

using nlohmann::json;

constexpr const char* kFormatTag = "meshgnn-model";

json matrix_to_json(const DenseMatrix& m) {
  return {{"rows", m.rows()},
          {"cols", m.cols()},
          {"data", std::vector<double>(m.data().begin(), m.data().end())}};
}

DenseMatrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw ParseError(where + ": expected {rows, cols, data}");
  }
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  auto data = j.at("data").get<std::vector<double>>();
  if (data.size() != rows * cols) {
    throw ParseError(where + ": data length " + std::to_string(data.size()) +
                     " inconsistent with shape " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
  return DenseMatrix(rows, cols, std::move(data));
}

json layers_to_json(const std::vector<AffineLayer>& layers) {
  json arr = json::array();
  for (const auto& l : layers) {
    arr.push_back({{"weight", matrix_to_json(l.weight)}, {"bias", matrix_to_json(l.bias)}});
  }
  return arr;
}

std::vector<AffineLayer> layers_from_json(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_array()) {
    throw ParseError(std::string("model: missing layer list '") + key + "'");
  }
  std::vector<AffineLayer> layers;
  const json& arr = doc.at(key);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
    if (!arr[i].is_object() || !arr[i].contains("weight") || !arr[i].contains("bias")) {
      throw ParseError(where + ": expected {weight, bias}");
    }
    layers.push_back({matrix_from_json(arr[i].at("weight"), where + ".weight"),
                      matrix_from_json(arr[i].at("bias"), where + ".bias")});
  }
  return layers;
}

json scaler_to_json(const FeatureScaler& s) { return {{"mean", s.mean}, {"std", s.std}}; }

FeatureScaler scaler_from_json(const json& doc) {
  if (!doc.contains("scaler")) throw ParseError("model: missing 'scaler'");
  const json& s = doc.at("scaler");
  FeatureScaler out{s.at("mean").get<std::vector<double>>(),
                    s.at("std").get<std::vector<double>>()};
  for (const double v : out.std) {
    if (!(v > 0.0)) throw ParseError("model: scaler std entries must be > 0");
  }
  return out;
}

template <class T>
T required(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("model: missing '") + key + "'");
  return doc.at(key).get<T>();
}

}  // namespace

std::string_view kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kGnn: return "gnn";
    case ModelKind::kPointNet: return "pointnet";
    case ModelKind::kDgcnn: return "dgcnn";
  }
  return "gnn";
}

ModelKind parse_kind(std::string_view name) {
  if (name == "gnn") return ModelKind::kGnn;
  if (name == "pointnet") return ModelKind::kPointNet;
  if (name == "dgcnn") return ModelKind::kDgcnn;
  throw ConfigError("unknown model kind '" + std::string(name) +
                    "' (expected gnn, pointnet or dgcnn)");
}

ModelKind kind_of(const AnyModel& model) { return static_cast<ModelKind>(model.index()); }

AnyModel make_model(ModelKind kind, const ModelOptions& options, Prng& rng) {
  switch (kind) {
    case ModelKind::kGnn:
      return make_surrogate(options.gnn_dims, options.dropout_p, rng);
    case ModelKind::kPointNet:
      return make_pointnet({5, 64, 128, 256}, {512, 128, 1}, options.dropout_p, rng);
    case ModelKind::kDgcnn:
      return make_dgcnn(options.dgcnn_k, {5, 64, 64}, {64, 32, 1}, options.dropout_p, rng);
  }
  throw ConfigError("unknown model kind");
}

TrainedModel train_model(ModelKind kind, const Dataset& dataset, const TrainConfig& config,
                         const ModelOptions& options, const EpochCallback& on_epoch) {
  validate_train_config(config);
  if (dataset.train.empty()) throw ConfigError("training set is empty");
  TrainConfig effective = config;
  if (kind != ModelKind::kGnn && !effective.early_stopping) {
    effective.early_stopping = EarlyStopping{};
  }
  Prng rng(config.seed);
  TrainedModel out{make_model(kind, options, rng), {}};
  out.history = std::visit(
      [&](auto& m) { return fit(m, dataset.train, dataset.test, effective, rng, on_epoch); },
      out.model);
  return out;
}

TrainedModel train(const Dataset& dataset, const TrainConfig& config,
                   const ModelOptions& options) {
  return train_model(ModelKind::kGnn, dataset, config, options);
}

TrainedModel train_baseline(ModelKind kind, const Dataset& dataset, const TrainConfig& config,
                            const ModelOptions& options) {
  if (kind == ModelKind::kGnn) throw ConfigError("train_baseline expects pointnet or dgcnn");
  return train_model(kind, dataset, config, options);
}

DenseMatrix predict(const AnyModel& model, const Graph& graph) {
  Prng unused(0);
  return std::visit([&](const auto& m) { return forward(m, graph, Mode::kEval, unused); },
                    model);
}

std::size_t input_width(const AnyModel& model) {
  return std::visit([](const auto& m) { return input_width(m); }, model);
}

std::string save_model(const AnyModel& model) {
  json doc;
  doc["format"] = kFormatTag;
  doc["version"] = kModelFormatVersion;
  doc["kind"] = std::string(kind_name(kind_of(model)));
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        doc["dropout_p"] = m.dropout_p;
        doc["scaler"] = scaler_to_json(m.scaler);
        if constexpr (std::is_same_v<T, SurrogateModel>) {
          doc["dims"] = m.dims;
          doc["layers"] = layers_to_json(m.layers);
        } else if constexpr (std::is_same_v<T, PointNetModel>) {
          doc["point_dims"] = m.point_dims;
          doc["head_dims"] = m.head_dims;
          doc["point_layers"] = layers_to_json(m.point_layers);
          doc["head_layers"] = layers_to_json(m.head_layers);
        } else {
          doc["k"] = m.k;
          doc["node_dims"] = m.node_dims;
          doc["head_dims"] = m.head_dims;
          doc["edge_layers"] = layers_to_json(m.edge_layers);
          doc["head_layers"] = layers_to_json(m.head_layers);
        }
      },
      model);
  return doc.dump() + "\n";
}

AnyModel load_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model document is not well-formed: ") + e.what());
  }
  try {
    if (!doc.is_object() || doc.value("format", "") != kFormatTag) {
      throw ParseError("not a meshgnn model document");
    }
    const int version = required<int>(doc, "version");
    if (version != kModelFormatVersion) {
      throw ParseError("unsupported model version " + std::to_string(version) + " (expected " +
                       std::to_string(kModelFormatVersion) + ")");
    }
    const ModelKind kind = parse_kind(required<std::string>(doc, "kind"));
    const double dropout_p = required<double>(doc, "dropout_p");
    switch (kind) {
      case ModelKind::kGnn: {
        SurrogateModel m;
        m.dims = required<std::vector<std::size_t>>(doc, "dims");
        m.layers = layers_from_json(doc, "layers");
        m.dropout_p = dropout_p;
        m.scaler = scaler_from_json(doc);
        validate_model(m);
        return m;
      }
      case ModelKind::kPointNet: {
        PointNetModel m;
        m.point_dims = required<std::vector<std::size_t>>(doc, "point_dims");
        m.head_dims = required<std::vector<std::size_t>>(doc, "head_dims");
        m.point_layers = layers_from_json(doc, "point_layers");
        m.head_layers = layers_from_json(doc, "head_layers");
        m.dropout_p = dropout_p;
        m.scaler = scaler_from_json(doc);
        validate_model(m);
        return m;
      }
      case ModelKind::kDgcnn: {
        DgcnnModel m;
        m.k = required<std::size_t>(doc, "k");
        m.node_dims = required<std::vector<std::size_t>>(doc, "node_dims");
        m.head_dims = required<std::vector<std::size_t>>(doc, "head_dims");
        m.edge_layers = layers_from_json(doc, "edge_layers");
        m.head_layers = layers_from_json(doc, "head_layers");
        m.dropout_p = dropout_p;
        m.scaler = scaler_from_json(doc);
        validate_model(m);
        return m;
      }
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("inconsistent model document: ") + e.what());
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model document: ") + e.what());
  }
  throw ParseError("unknown model kind");
}

void save_model_file(const std::filesystem::path& path, const AnyModel& model) {
  write_text_file(path, save_model(model));
}

AnyModel load_model_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return load_model(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace meshgnn

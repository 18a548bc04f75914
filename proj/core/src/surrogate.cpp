#include "meshgnn/surrogate.hpp"

#include <string>

#include "meshgnn/adjacency.hpp"
#include "meshgnn/errors.hpp"

namespace meshgnn {

FeatureScaler identity_scaler(std::size_t width) {
  return {std::vector<double>(width, 0.0), std::vector<double>(width, 1.0)};
}

SurrogateModel make_surrogate(std::vector<std::size_t> dims, double dropout_p, Prng& rng) {
  if (dims.size() < 2) throw ConfigError("surrogate needs at least an input and output width");
  for (const auto d : dims) {
    if (d == 0) throw ConfigError("surrogate layer widths must be >= 1");
  }
  validate_dropout_probability(dropout_p);
  SurrogateModel m;
  m.dims = std::move(dims);
  m.dropout_p = dropout_p;
  for (std::size_t l = 0; l + 1 < m.dims.size(); ++l) {
    m.layers.push_back(make_affine(m.dims[l], m.dims[l + 1], rng));
  }
  m.scaler = identity_scaler(m.dims.front());
  return m;
}

void validate_model(const SurrogateModel& model) {
  check_layer_dims(model.layers, model.dims, "gnn");
  validate_dropout_probability(model.dropout_p);
  if (model.scaler.width() != model.dims.front() || model.scaler.std.size() != model.dims.front()) {
    throw ShapeError("gnn scaler width " + std::to_string(model.scaler.width()) +
                     " does not match input width " + std::to_string(model.dims.front()));
  }
}

DenseMatrix model_inputs(const FeatureScaler& scaler, const Graph& graph,
                         std::size_t expected_width) {
  if (graph.node_features.cols() != expected_width) {
    throw ShapeError("graph '" + graph.name + "' has " +
                     std::to_string(graph.node_features.cols()) +
                     " node features but the model expects " + std::to_string(expected_width));
  }
  if (graph.node_features.rows() != graph.num_nodes) {
    throw ShapeError("graph '" + graph.name + "': feature rows do not match node count");
  }
  if (graph.features_scaled) return graph.node_features;
  return scale_features(scaler, graph.node_features);
}

namespace {

struct Trace {
  std::vector<DenseMatrix> aggregated;  // per layer
  std::vector<DenseMatrix> pre;         // per layer, pre-activation
  std::vector<DenseMatrix> masks;       // per hidden layer
  DenseMatrix output;
};

Trace run_forward(const SurrogateModel& model, const NormalizedAdjacency& adj,
                  DenseMatrix h, Mode mode, Prng& rng) {
  Trace t;
  const std::size_t n_layers = model.layers.size();
  for (std::size_t l = 0; l < n_layers; ++l) {
    GcnForward f = gcn_layer_forward(model.layers[l], adj, h, l);
    t.aggregated.push_back(std::move(f.aggregated));
    if (l + 1 < n_layers) {
      DropoutResult d = dropout(relu(f.output), model.dropout_p, mode, rng);
      t.masks.push_back(std::move(d.mask));
      h = std::move(d.output);
    } else {
      t.output = relu(f.output);
    }
    t.pre.push_back(std::move(f.output));
  }
  return t;
}

}  // namespace

DenseMatrix forward(const SurrogateModel& model, const Graph& graph, Mode mode, Prng& rng) {
  DenseMatrix x = model_inputs(model.scaler, graph, model.dims.front());
  const NormalizedAdjacency adj(graph);
  return run_forward(model, adj, std::move(x), mode, rng).output;
}

LossAndGrads loss_and_gradients(const SurrogateModel& model, const Graph& graph, Mode mode,
                                Prng& rng) {
  if (!graph.target) {
    throw ConfigError("graph '" + graph.name + "' has no target; cannot compute a loss");
  }
  DenseMatrix x = model_inputs(model.scaler, graph, model.dims.front());
  const NormalizedAdjacency adj(graph);
  Trace t = run_forward(model, adj, std::move(x), mode, rng);

  LossAndGrads out;
  DenseMatrix g;
  out.loss = mse_loss(t.output, *graph.target, &g);

  const std::size_t n_layers = model.layers.size();
  out.grads.resize(2 * n_layers);
  g = relu_backward(t.pre.back(), g);
  for (std::size_t l = n_layers; l-- > 0;) {
    AffineGrads lg = gcn_layer_backward(model.layers[l], adj, t.aggregated[l], g, l > 0);
    out.grads[2 * l] = std::move(lg.weight);
    out.grads[2 * l + 1] = std::move(lg.bias);
    if (l > 0) {
      g = dropout_backward(t.masks[l - 1], lg.input);
      g = relu_backward(t.pre[l - 1], g);
    }
  }
  return out;
}

std::vector<DenseMatrix*> parameters(SurrogateModel& model) {
  std::vector<DenseMatrix*> p;
  for (auto& l : model.layers) {
    p.push_back(&l.weight);
    p.push_back(&l.bias);
  }
  return p;
}

std::vector<std::string> parameter_names(const SurrogateModel& model) {
  std::vector<std::string> names;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    names.push_back("gcn" + std::to_string(l) + ".weight");
    names.push_back("gcn" + std::to_string(l) + ".bias");
  }
  return names;
}

}  // namespace meshgnn

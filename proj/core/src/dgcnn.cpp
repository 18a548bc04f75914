#include "meshgnn/dgcnn.hpp"

#include <string>

#include "meshgnn/errors.hpp"
#include "meshgnn/knn.hpp"
#include "meshgnn/surrogate.hpp"

namespace meshgnn {

namespace {

struct EdgeConvTrace {
  DenseMatrix input;
  DenseMatrix pre;                   // P_i + max_j Q_j, before ReLU
  std::vector<std::uint32_t> arg;    // N x C: neighbour attaining the max
  DenseMatrix mask;
};

struct Trace {
  std::vector<EdgeConvTrace> edge;
  std::vector<DenseMatrix> head_in;
  std::vector<DenseMatrix> head_pre;
  std::vector<DenseMatrix> head_mask;
  DenseMatrix output;
};

// Splits an edge weight [W_self; W_delta] (2F x C) into the node-wise maps
// U = W_self - W_delta (applied to x_i) and V = W_delta (applied to x_j).
void split_edge_weight(const DenseMatrix& w, DenseMatrix& u, DenseMatrix& v) {
  const std::size_t f = w.rows() / 2;
  const std::size_t c = w.cols();
  u = DenseMatrix(f, c);
  v = DenseMatrix(f, c);
  for (std::size_t r = 0; r < f; ++r) {
    for (std::size_t j = 0; j < c; ++j) {
      v(r, j) = w(f + r, j);
      u(r, j) = w(r, j) - w(f + r, j);
    }
  }
}

EdgeConvTrace edge_conv(const AffineLayer& layer, std::size_t k, const DenseMatrix& x,
                        std::size_t index) {
  if (2 * x.cols() != layer.in_dim()) {
    throw ShapeError("edgeconv layer " + std::to_string(index) + ": input " + x.shape_string() +
                     " does not match weight " + layer.weight.shape_string());
  }
  const auto nbrs = knn_graph(x, k);
  DenseMatrix u, v;
  split_edge_weight(layer.weight, u, v);
  DenseMatrix p = matmul(x, u);
  add_row_inplace(p, layer.bias);
  const DenseMatrix q = matmul(x, v);

  const std::size_t n = x.rows(), c = layer.out_dim();
  EdgeConvTrace t;
  t.arg.resize(n * c);
  for (std::size_t i = 0; i < n; ++i) {
    auto prow = p.row(i);
    std::uint32_t* arg = t.arg.data() + i * c;
    const double* q0 = q.row(nbrs[i][0]).data();
    for (std::size_t ch = 0; ch < c; ++ch) arg[ch] = nbrs[i][0];
    std::vector<double> best(q0, q0 + c);
    for (std::size_t r = 1; r < nbrs[i].size(); ++r) {
      const std::uint32_t j = nbrs[i][r];
      const double* qj = q.row(j).data();
      for (std::size_t ch = 0; ch < c; ++ch) {
        if (qj[ch] > best[ch]) {
          best[ch] = qj[ch];
          arg[ch] = j;
        }
      }
    }
    for (std::size_t ch = 0; ch < c; ++ch) prow[ch] += best[ch];
  }
  t.pre = std::move(p);
  t.input = x;
  return t;
}

Trace run_forward(const DgcnnModel& model, DenseMatrix h, Mode mode, Prng& rng) {
  Trace t;
  for (std::size_t l = 0; l < model.edge_layers.size(); ++l) {
    EdgeConvTrace e = edge_conv(model.edge_layers[l], model.k, h, l);
    DropoutResult d = dropout(relu(e.pre), model.dropout_p, mode, rng);
    e.mask = std::move(d.mask);
    t.edge.push_back(std::move(e));
    h = std::move(d.output);
  }
  const std::size_t n_head = model.head_layers.size();
  for (std::size_t l = 0; l < n_head; ++l) {
    DenseMatrix z = affine_forward(model.head_layers[l], h, model.edge_layers.size() + l);
    t.head_in.push_back(std::move(h));
    if (l + 1 == n_head) {
      t.output = relu(z);
      t.head_pre.push_back(std::move(z));
    } else {
      DropoutResult d = dropout(relu(z), model.dropout_p, mode, rng);
      t.head_pre.push_back(std::move(z));
      t.head_mask.push_back(std::move(d.mask));
      h = std::move(d.output);
    }
  }
  return t;
}

}  // namespace

DenseMatrix edge_feature(const DenseMatrix& x, std::size_t i, std::size_t j) {
  const std::size_t f = x.cols();
  DenseMatrix e(1, 2 * f);
  for (std::size_t c = 0; c < f; ++c) {
    e(0, c) = x(i, c);
    e(0, f + c) = x(j, c) - x(i, c);
  }
  return e;
}

DgcnnModel make_dgcnn(std::size_t k, std::vector<std::size_t> node_dims,
                      std::vector<std::size_t> head_dims, double dropout_p, Prng& rng) {
  if (k == 0) throw ConfigError("dgcnn: k must be >= 1");
  if (node_dims.size() < 2 || head_dims.size() < 2) {
    throw ConfigError("dgcnn needs at least one edge layer and one head layer");
  }
  for (const auto d : node_dims)
    if (d == 0) throw ConfigError("dgcnn widths must be >= 1");
  for (const auto d : head_dims)
    if (d == 0) throw ConfigError("dgcnn widths must be >= 1");
  if (head_dims.front() != node_dims.back()) {
    throw ConfigError("dgcnn head input width must equal the last edge layer width");
  }
  validate_dropout_probability(dropout_p);
  DgcnnModel m;
  m.k = k;
  m.node_dims = std::move(node_dims);
  m.head_dims = std::move(head_dims);
  m.dropout_p = dropout_p;
  for (std::size_t l = 0; l + 1 < m.node_dims.size(); ++l)
    m.edge_layers.push_back(make_affine(2 * m.node_dims[l], m.node_dims[l + 1], rng));
  for (std::size_t l = 0; l + 1 < m.head_dims.size(); ++l)
    m.head_layers.push_back(make_affine(m.head_dims[l], m.head_dims[l + 1], rng));
  m.scaler = identity_scaler(m.node_dims.front());
  return m;
}

void validate_model(const DgcnnModel& model) {
  if (model.k == 0) throw ShapeError("dgcnn: k must be >= 1");
  if (model.node_dims.size() < 2 || model.edge_layers.size() != model.node_dims.size() - 1) {
    throw ShapeError("dgcnn: edge layer count does not match declared widths");
  }
  for (std::size_t l = 0; l < model.edge_layers.size(); ++l) {
    const auto& layer = model.edge_layers[l];
    if (layer.weight.rows() != 2 * model.node_dims[l] ||
        layer.weight.cols() != model.node_dims[l + 1] || layer.bias.rows() != 1 ||
        layer.bias.cols() != model.node_dims[l + 1]) {
      throw ShapeError("dgcnn edge layer " + std::to_string(l) +
                       " inconsistent with declared widths");
    }
  }
  check_layer_dims(model.head_layers, model.head_dims, "dgcnn head");
  if (model.head_dims.front() != model.node_dims.back()) {
    throw ShapeError("dgcnn head input width does not match last edge width");
  }
  validate_dropout_probability(model.dropout_p);
  if (model.scaler.width() != model.node_dims.front() ||
      model.scaler.std.size() != model.node_dims.front()) {
    throw ShapeError("dgcnn scaler width does not match input width");
  }
}

DenseMatrix dgcnn_forward(const DgcnnModel& model, const Graph& graph, Mode mode, Prng& rng) {
  DenseMatrix x = model_inputs(model.scaler, graph, model.node_dims.front());
  return run_forward(model, std::move(x), mode, rng).output;
}

LossAndGrads loss_and_gradients(const DgcnnModel& model, const Graph& graph, Mode mode,
                                Prng& rng) {
  if (!graph.target) {
    throw ConfigError("graph '" + graph.name + "' has no target; cannot compute a loss");
  }
  DenseMatrix x = model_inputs(model.scaler, graph, model.node_dims.front());
  Trace t = run_forward(model, std::move(x), mode, rng);

  LossAndGrads out;
  DenseMatrix g;
  out.loss = mse_loss(t.output, *graph.target, &g);

  const std::size_t n_edge = model.edge_layers.size();
  const std::size_t n_head = model.head_layers.size();
  out.grads.resize(2 * (n_edge + n_head));

  g = relu_backward(t.head_pre.back(), g);
  for (std::size_t l = n_head; l-- > 0;) {
    AffineGrads lg = affine_backward(model.head_layers[l], t.head_in[l], g, true);
    out.grads[2 * (n_edge + l)] = std::move(lg.weight);
    out.grads[2 * (n_edge + l) + 1] = std::move(lg.bias);
    g = std::move(lg.input);
    if (l > 0) {
      g = dropout_backward(t.head_mask[l - 1], g);
      g = relu_backward(t.head_pre[l - 1], g);
    }
  }

  for (std::size_t l = n_edge; l-- > 0;) {
    const EdgeConvTrace& e = t.edge[l];
    g = dropout_backward(e.mask, g);
    const DenseMatrix d_pre = relu_backward(e.pre, g);
    const std::size_t n = d_pre.rows(), c = d_pre.cols();
    DenseMatrix d_q(n, c);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t* arg = e.arg.data() + i * c;
      for (std::size_t ch = 0; ch < c; ++ch) d_q(arg[ch], ch) += d_pre(i, ch);
    }
    DenseMatrix u, v;
    split_edge_weight(model.edge_layers[l].weight, u, v);
    const DenseMatrix d_u = matmul_at_b(e.input, d_pre);
    const DenseMatrix d_v = matmul_at_b(e.input, d_q);
    const std::size_t f = e.input.cols();
    DenseMatrix d_w(2 * f, c);
    for (std::size_t r = 0; r < f; ++r) {
      for (std::size_t ch = 0; ch < c; ++ch) {
        d_w(r, ch) = d_u(r, ch);
        d_w(f + r, ch) = d_v(r, ch) - d_u(r, ch);
      }
    }
    out.grads[2 * l] = std::move(d_w);
    out.grads[2 * l + 1] = column_sums(d_pre);
    if (l > 0) {
      g = matmul_a_bt(d_pre, u);
      add_inplace(g, matmul_a_bt(d_q, v));
    }
  }
  return out;
}

std::vector<DenseMatrix*> parameters(DgcnnModel& model) {
  std::vector<DenseMatrix*> p;
  for (auto& l : model.edge_layers) {
    p.push_back(&l.weight);
    p.push_back(&l.bias);
  }
  for (auto& l : model.head_layers) {
    p.push_back(&l.weight);
    p.push_back(&l.bias);
  }
  return p;
}

std::vector<std::string> parameter_names(const DgcnnModel& model) {
  std::vector<std::string> names;
  for (std::size_t l = 0; l < model.edge_layers.size(); ++l) {
    names.push_back("edgeconv" + std::to_string(l) + ".weight");
    names.push_back("edgeconv" + std::to_string(l) + ".bias");
  }
  for (std::size_t l = 0; l < model.head_layers.size(); ++l) {
    names.push_back("head" + std::to_string(l) + ".weight");
    names.push_back("head" + std::to_string(l) + ".bias");
  }
  return names;
}

}  // namespace meshgnn

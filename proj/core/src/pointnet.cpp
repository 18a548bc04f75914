#include "meshgnn/pointnet.hpp"

#include <string>

#include "meshgnn/errors.hpp"
#include "meshgnn/surrogate.hpp"

namespace meshgnn {

namespace {

DenseMatrix row_block(const DenseMatrix& m, std::size_t first, std::size_t count) {
  DenseMatrix out(count, m.cols());
  for (std::size_t i = 0; i < count; ++i) {
    const auto src = m.row(first + i);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

DenseMatrix vstack(const DenseMatrix& top, const DenseMatrix& bottom) {
  DenseMatrix out(top.rows() + bottom.rows(), top.cols());
  std::copy(top.data().begin(), top.data().end(), out.data().begin());
  std::copy(bottom.data().begin(), bottom.data().end(),
            out.data().begin() + static_cast<std::ptrdiff_t>(top.size()));
  return out;
}

struct Trace {
  std::vector<DenseMatrix> point_in;   // input to each point layer
  std::vector<DenseMatrix> point_pre;  // pre-activation
  std::vector<DenseMatrix> point_mask;
  DenseMatrix local;
  DenseMatrix global;
  std::vector<std::size_t> argmax;
  std::vector<DenseMatrix> head_in;  // head_in[0] unused (split input)
  std::vector<DenseMatrix> head_pre;
  std::vector<DenseMatrix> head_mask;
  DenseMatrix output;
};

Trace run_forward(const PointNetModel& model, DenseMatrix h, Mode mode, Prng& rng) {
  Trace t;
  for (std::size_t l = 0; l < model.point_layers.size(); ++l) {
    DenseMatrix z = affine_forward(model.point_layers[l], h, l);
    t.point_in.push_back(std::move(h));
    DropoutResult d = dropout(relu(z), model.dropout_p, mode, rng);
    t.point_pre.push_back(std::move(z));
    t.point_mask.push_back(std::move(d.mask));
    h = std::move(d.output);
  }
  t.local = std::move(h);
  t.global = column_max(t.local, &t.argmax);

  const std::size_t c = t.local.cols();
  const AffineLayer& first = model.head_layers.front();
  // [local | 1 global] W = local W_top + 1 (global W_bottom)
  DenseMatrix z = matmul(t.local, row_block(first.weight, 0, c));
  DenseMatrix shift = matmul(t.global, row_block(first.weight, c, c));
  add_inplace(shift, first.bias);
  add_row_inplace(z, shift);

  const std::size_t n_head = model.head_layers.size();
  t.head_in.emplace_back();
  for (std::size_t l = 0;; ++l) {
    if (l + 1 == n_head) {
      t.output = relu(z);
      t.head_pre.push_back(std::move(z));
      break;
    }
    DropoutResult d = dropout(relu(z), model.dropout_p, mode, rng);
    t.head_pre.push_back(std::move(z));
    t.head_mask.push_back(std::move(d.mask));
    z = affine_forward(model.head_layers[l + 1], d.output, model.point_layers.size() + l + 1);
    t.head_in.push_back(std::move(d.output));
  }
  return t;
}

}  // namespace

PointNetModel make_pointnet(std::vector<std::size_t> point_dims,
                            std::vector<std::size_t> head_dims, double dropout_p, Prng& rng) {
  if (point_dims.size() < 2 || head_dims.size() < 2) {
    throw ConfigError("pointnet needs at least one point layer and one head layer");
  }
  for (const auto d : point_dims)
    if (d == 0) throw ConfigError("pointnet widths must be >= 1");
  for (const auto d : head_dims)
    if (d == 0) throw ConfigError("pointnet widths must be >= 1");
  if (head_dims.front() != 2 * point_dims.back()) {
    throw ConfigError("pointnet head input width must be 2 x last point width (" +
                      std::to_string(2 * point_dims.back()) + ")");
  }
  validate_dropout_probability(dropout_p);
  PointNetModel m;
  m.point_dims = std::move(point_dims);
  m.head_dims = std::move(head_dims);
  m.dropout_p = dropout_p;
  for (std::size_t l = 0; l + 1 < m.point_dims.size(); ++l)
    m.point_layers.push_back(make_affine(m.point_dims[l], m.point_dims[l + 1], rng));
  for (std::size_t l = 0; l + 1 < m.head_dims.size(); ++l)
    m.head_layers.push_back(make_affine(m.head_dims[l], m.head_dims[l + 1], rng));
  m.scaler = identity_scaler(m.point_dims.front());
  return m;
}

void validate_model(const PointNetModel& model) {
  check_layer_dims(model.point_layers, model.point_dims, "pointnet point");
  check_layer_dims(model.head_layers, model.head_dims, "pointnet head");
  if (model.head_dims.front() != 2 * model.point_dims.back()) {
    throw ShapeError("pointnet head input width does not equal local + global width");
  }
  validate_dropout_probability(model.dropout_p);
  if (model.scaler.width() != model.point_dims.front() ||
      model.scaler.std.size() != model.point_dims.front()) {
    throw ShapeError("pointnet scaler width does not match input width");
  }
}

DenseMatrix pointnet_forward(const PointNetModel& model, const Graph& graph, Mode mode,
                             Prng& rng) {
  DenseMatrix x = model_inputs(model.scaler, graph, model.point_dims.front());
  return run_forward(model, std::move(x), mode, rng).output;
}

LossAndGrads loss_and_gradients(const PointNetModel& model, const Graph& graph, Mode mode,
                                Prng& rng) {
  if (!graph.target) {
    throw ConfigError("graph '" + graph.name + "' has no target; cannot compute a loss");
  }
  DenseMatrix x = model_inputs(model.scaler, graph, model.point_dims.front());
  Trace t = run_forward(model, std::move(x), mode, rng);

  LossAndGrads out;
  DenseMatrix g;
  out.loss = mse_loss(t.output, *graph.target, &g);

  const std::size_t n_point = model.point_layers.size();
  const std::size_t n_head = model.head_layers.size();
  out.grads.resize(2 * (n_point + n_head));

  g = relu_backward(t.head_pre.back(), g);
  for (std::size_t l = n_head; l-- > 1;) {
    AffineGrads lg = affine_backward(model.head_layers[l], t.head_in[l], g, true);
    out.grads[2 * (n_point + l)] = std::move(lg.weight);
    out.grads[2 * (n_point + l) + 1] = std::move(lg.bias);
    g = dropout_backward(t.head_mask[l - 1], lg.input);
    g = relu_backward(t.head_pre[l - 1], g);
  }

  // First head layer, split into local and global halves.
  const std::size_t c = t.local.cols();
  const AffineLayer& first = model.head_layers.front();
  const DenseMatrix w_top = row_block(first.weight, 0, c);
  const DenseMatrix w_bottom = row_block(first.weight, c, c);
  const DenseMatrix g_sum = column_sums(g);
  out.grads[2 * n_point] = vstack(matmul_at_b(t.local, g), matmul_at_b(t.global, g_sum));
  out.grads[2 * n_point + 1] = g_sum;
  DenseMatrix d_local = matmul_a_bt(g, w_top);
  const DenseMatrix d_global = matmul_a_bt(g_sum, w_bottom);
  for (std::size_t j = 0; j < c; ++j) d_local(t.argmax[j], j) += d_global(0, j);

  g = std::move(d_local);
  for (std::size_t l = n_point; l-- > 0;) {
    g = dropout_backward(t.point_mask[l], g);
    g = relu_backward(t.point_pre[l], g);
    AffineGrads lg = affine_backward(model.point_layers[l], t.point_in[l], g, l > 0);
    out.grads[2 * l] = std::move(lg.weight);
    out.grads[2 * l + 1] = std::move(lg.bias);
    if (l > 0) g = std::move(lg.input);
  }
  return out;
}

std::vector<DenseMatrix*> parameters(PointNetModel& model) {
  std::vector<DenseMatrix*> p;
  for (auto& l : model.point_layers) {
    p.push_back(&l.weight);
    p.push_back(&l.bias);
  }
  for (auto& l : model.head_layers) {
    p.push_back(&l.weight);
    p.push_back(&l.bias);
  }
  return p;
}

std::vector<std::string> parameter_names(const PointNetModel& model) {
  std::vector<std::string> names;
  for (std::size_t l = 0; l < model.point_layers.size(); ++l) {
    names.push_back("point" + std::to_string(l) + ".weight");
    names.push_back("point" + std::to_string(l) + ".bias");
  }
  for (std::size_t l = 0; l < model.head_layers.size(); ++l) {
    names.push_back("head" + std::to_string(l) + ".weight");
    names.push_back("head" + std::to_string(l) + ".bias");
  }
  return names;
}

}  // namespace meshgnn

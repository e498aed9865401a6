#include "gazener/nn/autodiff.hpp"

#include <stdexcept>

#include "gazener/nn/crf.hpp"

namespace gazener::nn {

int ParameterSet::add(std::string name, Matrix value, bool sparse_columns) {
  if (find(name) >= 0) throw std::invalid_argument("duplicate parameter " + name);
  params_.push_back({std::move(name), std::move(value), sparse_columns, true});
  return static_cast<int>(params_.size()) - 1;
}

int ParameterSet::find(const std::string& name) const {
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (params_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

Gradients::Gradients(const ParameterSet& params)
    : params_(&params), entries_(static_cast<std::size_t>(params.size())) {}

void Gradients::clear() {
  for (auto& e : entries_) {
    if (!e.touched) continue;
    e.touched = false;
    e.columns.clear();
    if (e.dense.size() > 0) e.dense.setZero();
  }
}

Matrix& Gradients::dense(int id) {
  auto& e = entries_.at(static_cast<std::size_t>(id));
  const auto& p = (*params_)[id];
  if (e.dense.rows() != p.value.rows() || e.dense.cols() != p.value.cols()) {
    e.dense = Matrix::Zero(p.value.rows(), p.value.cols());
  }
  e.touched = true;
  return e.dense;
}

void Gradients::add_to_column(int id, int column, const Eigen::Ref<const Vector>& gradient) {
  auto& e = entries_.at(static_cast<std::size_t>(id));
  e.touched = true;
  auto [it, inserted] = e.columns.try_emplace(column);
  if (inserted) it->second = gradient;
  else it->second += gradient;
}

Matrix Gradients::to_dense(int id) const {
  const auto& p = (*params_)[id];
  Matrix out = Matrix::Zero(p.value.rows(), p.value.cols());
  const auto& e = entries_.at(static_cast<std::size_t>(id));
  if (!e.touched) return out;
  if (e.dense.size() > 0) out += e.dense;
  for (const auto& [col, g] : e.columns) out.col(col) += g;
  return out;
}

Expr Graph::push(Node node) {
  nodes_.push_back(std::move(node));
  return Expr{static_cast<int>(nodes_.size()) - 1};
}

const Matrix& Graph::val(int i) const {
  const Node& n = nodes_[static_cast<std::size_t>(i)];
  return n.borrowed ? *n.borrowed : n.value;
}

const Matrix& Graph::value(Expr e) const { return val(e.index); }

Matrix& Graph::grad_of(int i) {
  Node& n = nodes_[static_cast<std::size_t>(i)];
  if (!n.has_grad) {
    const Matrix& v = val(i);
    n.grad = Matrix::Zero(v.rows(), v.cols());
    n.has_grad = true;
  }
  return n.grad;
}

Expr Graph::constant(Matrix value) {
  Node n;
  n.op = Op::Constant;
  n.value = std::move(value);
  return push(std::move(n));
}

Expr Graph::parameter(int id) {
  Node n;
  n.op = Op::Parameter;
  n.param_id = id;
  n.borrowed = &(*params_)[id].value;
  return push(std::move(n));
}

Expr Graph::gather(int table_id, std::span<const int> ids) {
  const Matrix& table = (*params_)[table_id].value;
  Node n;
  n.op = Op::Gather;
  n.param_id = table_id;
  n.ids.assign(ids.begin(), ids.end());
  n.value.resize(table.rows(), static_cast<Eigen::Index>(ids.size()));
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (ids[k] < 0 || ids[k] >= table.cols()) {
      throw std::out_of_range("gather: id " + std::to_string(ids[k]) + " outside " +
                              (*params_)[table_id].name);
    }
    n.value.col(static_cast<Eigen::Index>(k)) = table.col(ids[k]);
  }
  return push(std::move(n));
}

Expr Graph::matmul(Expr a, Expr b) {
  Node n;
  n.op = Op::MatMul;
  n.inputs = {a.index, b.index};
  if (val(a.index).cols() != val(b.index).rows()) throw std::invalid_argument("matmul: shape mismatch");
  n.value.noalias() = val(a.index) * val(b.index);
  return push(std::move(n));
}

Expr Graph::add(Expr a, Expr b) {
  Node n;
  n.op = Op::Add;
  n.inputs = {a.index, b.index};
  const Matrix& x = val(a.index);
  const Matrix& y = val(b.index);
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw std::invalid_argument("add: shape mismatch");
  n.value = x + y;
  return push(std::move(n));
}

Expr Graph::add_column(Expr m, Expr bias) {
  Node n;
  n.op = Op::AddColumn;
  n.inputs = {m.index, bias.index};
  const Matrix& x = val(m.index);
  const Matrix& b = val(bias.index);
  if (b.cols() != 1 || b.rows() != x.rows()) throw std::invalid_argument("add_column: shape mismatch");
  n.value = x.colwise() + b.col(0);
  return push(std::move(n));
}

Expr Graph::concat_rows(std::span<const Expr> parts) {
  Node n;
  n.op = Op::ConcatRows;
  Eigen::Index rows = 0;
  const Eigen::Index cols = parts.empty() ? 0 : val(parts.front().index).cols();
  for (const Expr p : parts) {
    if (val(p.index).cols() != cols) throw std::invalid_argument("concat_rows: column mismatch");
    rows += val(p.index).rows();
    n.inputs.push_back(p.index);
  }
  n.value.resize(rows, cols);
  Eigen::Index offset = 0;
  for (const Expr p : parts) {
    const Matrix& v = val(p.index);
    n.value.middleRows(offset, v.rows()) = v;
    offset += v.rows();
  }
  return push(std::move(n));
}

Expr Graph::concat_cols(std::span<const Expr> parts) {
  Node n;
  n.op = Op::ConcatCols;
  Eigen::Index cols = 0;
  const Eigen::Index rows = parts.empty() ? 0 : val(parts.front().index).rows();
  for (const Expr p : parts) {
    if (val(p.index).rows() != rows) throw std::invalid_argument("concat_cols: row mismatch");
    cols += val(p.index).cols();
    n.inputs.push_back(p.index);
  }
  n.value.resize(rows, cols);
  Eigen::Index offset = 0;
  for (const Expr p : parts) {
    const Matrix& v = val(p.index);
    n.value.middleCols(offset, v.cols()) = v;
    offset += v.cols();
  }
  return push(std::move(n));
}

Expr Graph::column(Expr m, int j) {
  Node n;
  n.op = Op::Column;
  n.inputs = {m.index};
  n.index = j;
  n.value = val(m.index).col(j);
  return push(std::move(n));
}

Expr Graph::mask(Expr m, Matrix mask) {
  Node n;
  n.op = Op::Mask;
  n.inputs = {m.index};
  if (mask.rows() != val(m.index).rows() || mask.cols() != val(m.index).cols()) {
    throw std::invalid_argument("mask: shape mismatch");
  }
  n.value = val(m.index).cwiseProduct(mask);
  n.cache.push_back(std::move(mask));
  return push(std::move(n));
}

Expr Graph::tanh(Expr m) {
  Node n;
  n.op = Op::Tanh;
  n.inputs = {m.index};
  n.value = val(m.index).array().tanh().matrix();
  return push(std::move(n));
}

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

Expr Graph::lstm(Expr gate_inputs, Expr recurrent, bool reverse) {
  const Matrix& pre = val(gate_inputs.index);
  const Matrix& wh = val(recurrent.index);
  const Eigen::Index hidden = wh.cols();
  const Eigen::Index steps = pre.cols();
  if (wh.rows() != 4 * hidden || pre.rows() != 4 * hidden) throw std::invalid_argument("lstm: shape mismatch");

  Node n;
  n.op = Op::Lstm;
  n.inputs = {gate_inputs.index, recurrent.index};
  n.reverse = reverse;
  n.value = Matrix::Zero(hidden, steps);
  Matrix gates(4 * hidden, steps);  // activated i, f, o, g
  Matrix cells(hidden, steps);
  Matrix cell_tanh(hidden, steps);
  Vector h = Vector::Zero(hidden);
  Vector c = Vector::Zero(hidden);
  Vector z(4 * hidden);
  for (Eigen::Index k = 0; k < steps; ++k) {
    const Eigen::Index t = reverse ? steps - 1 - k : k;
    z.noalias() = pre.col(t) + wh * h;
    for (Eigen::Index r = 0; r < 3 * hidden; ++r) z[r] = sigmoid(z[r]);
    for (Eigen::Index r = 3 * hidden; r < 4 * hidden; ++r) z[r] = std::tanh(z[r]);
    c = z.segment(hidden, hidden).cwiseProduct(c) +
        z.head(hidden).cwiseProduct(z.segment(3 * hidden, hidden));
    const Vector ct = c.array().tanh().matrix();
    h = z.segment(2 * hidden, hidden).cwiseProduct(ct);
    gates.col(t) = z;
    cells.col(t) = c;
    cell_tanh.col(t) = ct;
    n.value.col(t) = h;
  }
  n.cache = {std::move(gates), std::move(cells), std::move(cell_tanh)};
  return push(std::move(n));
}

Expr Graph::crf_nll(Expr emissions, Expr transitions, Expr start, Expr stop, std::vector<int> gold) {
  CrfScores scores{val(emissions.index), val(transitions.index), val(start.index), val(stop.index)};
  if (static_cast<Eigen::Index>(gold.size()) != scores.emissions.cols()) {
    throw std::invalid_argument("crf_nll: gold length differs from emission columns");
  }
  const CrfMarginals marginals = crf_marginals(scores);
  Node n;
  n.op = Op::CrfNll;
  n.inputs = {emissions.index, transitions.index, start.index, stop.index};
  n.value = Matrix::Constant(1, 1, marginals.log_partition - crf_path_score(scores, gold));
  n.ids = std::move(gold);
  n.cache = {marginals.unary, marginals.pairwise};
  return push(std::move(n));
}

void Graph::backward(Expr loss, Gradients& out) {
  if (val(loss.index).size() != 1) throw std::invalid_argument("backward: loss must be a scalar");
  for (auto& n : nodes_) {
    n.has_grad = false;
    n.grad.resize(0, 0);
  }
  grad_of(loss.index)(0, 0) = 1.0;
  for (int i = loss.index; i >= 0; --i) {
    Node& n = nodes_[static_cast<std::size_t>(i)];
    if (!n.has_grad) continue;
    backprop(n, out);
  }
}

void Graph::backprop(Node& n, Gradients& out) {
  const Matrix& g = n.grad;
  switch (n.op) {
    case Op::Constant:
      break;
    case Op::Parameter:
      out.dense(n.param_id) += g;
      break;
    case Op::Gather:
      for (std::size_t k = 0; k < n.ids.size(); ++k) {
        out.add_to_column(n.param_id, n.ids[k], g.col(static_cast<Eigen::Index>(k)));
      }
      break;
    case Op::MatMul: {
      const int a = n.inputs[0];
      const int b = n.inputs[1];
      grad_of(a).noalias() += g * val(b).transpose();
      grad_of(b).noalias() += val(a).transpose() * g;
      break;
    }
    case Op::Add:
      grad_of(n.inputs[0]) += g;
      grad_of(n.inputs[1]) += g;
      break;
    case Op::AddColumn:
      grad_of(n.inputs[0]) += g;
      grad_of(n.inputs[1]) += g.rowwise().sum();
      break;
    case Op::ConcatRows: {
      Eigen::Index offset = 0;
      for (const int in : n.inputs) {
        const Eigen::Index rows = val(in).rows();
        grad_of(in) += g.middleRows(offset, rows);
        offset += rows;
      }
      break;
    }
    case Op::ConcatCols: {
      Eigen::Index offset = 0;
      for (const int in : n.inputs) {
        const Eigen::Index cols = val(in).cols();
        grad_of(in) += g.middleCols(offset, cols);
        offset += cols;
      }
      break;
    }
    case Op::Column:
      grad_of(n.inputs[0]).col(n.index) += g.col(0);
      break;
    case Op::Mask:
      grad_of(n.inputs[0]) += g.cwiseProduct(n.cache[0]);
      break;
    case Op::Tanh:
      grad_of(n.inputs[0]) += g.cwiseProduct((1.0 - n.value.array().square()).matrix());
      break;
    case Op::Lstm: {
      const Matrix& wh = val(n.inputs[1]);
      const Matrix& gates = n.cache[0];
      const Matrix& cells = n.cache[1];
      const Matrix& cell_tanh = n.cache[2];
      const Eigen::Index hidden = wh.cols();
      const Eigen::Index steps = n.value.cols();
      Matrix& d_pre = grad_of(n.inputs[0]);
      Matrix& d_wh = grad_of(n.inputs[1]);
      Vector dh_next = Vector::Zero(hidden);
      Vector dc_next = Vector::Zero(hidden);
      Vector dz(4 * hidden);
      for (Eigen::Index k = steps - 1; k >= 0; --k) {
        const Eigen::Index t = n.reverse ? steps - 1 - k : k;
        const Eigen::Index prev = n.reverse ? t + 1 : t - 1;
        const bool has_prev = k > 0;
        const auto i_gate = gates.col(t).head(hidden).array();
        const auto f_gate = gates.col(t).segment(hidden, hidden).array();
        const auto o_gate = gates.col(t).segment(2 * hidden, hidden).array();
        const auto g_gate = gates.col(t).segment(3 * hidden, hidden).array();
        const auto ct = cell_tanh.col(t).array();
        const Vector dh = g.col(t) + dh_next;
        const Vector dc = (dh.array() * o_gate * (1.0 - ct.square())).matrix() + dc_next;
        const Vector c_prev = has_prev ? Vector(cells.col(prev)) : Vector::Zero(hidden);
        dz.head(hidden) = (dc.array() * g_gate * i_gate * (1.0 - i_gate)).matrix();
        dz.segment(hidden, hidden) = (dc.array() * c_prev.array() * f_gate * (1.0 - f_gate)).matrix();
        dz.segment(2 * hidden, hidden) = (dh.array() * ct * o_gate * (1.0 - o_gate)).matrix();
        dz.segment(3 * hidden, hidden) = (dc.array() * i_gate * (1.0 - g_gate.square())).matrix();
        d_pre.col(t) += dz;
        if (has_prev) d_wh.noalias() += dz * n.value.col(prev).transpose();
        dh_next.noalias() = wh.transpose() * dz;
        dc_next = (dc.array() * f_gate).matrix();
      }
      break;
    }
    case Op::CrfNll: {
      const double scale = g(0, 0);
      const Matrix& unary = n.cache[0];
      const Matrix& pairwise = n.cache[1];
      Matrix d_em = unary;
      Matrix d_tr = pairwise;
      Vector d_start = unary.col(0);
      Vector d_stop = unary.col(unary.cols() - 1);
      for (std::size_t t = 0; t < n.ids.size(); ++t) {
        d_em(n.ids[t], static_cast<Eigen::Index>(t)) -= 1.0;
        if (t > 0) d_tr(n.ids[t - 1], n.ids[t]) -= 1.0;
      }
      d_start[n.ids.front()] -= 1.0;
      d_stop[n.ids.back()] -= 1.0;
      grad_of(n.inputs[0]) += scale * d_em;
      grad_of(n.inputs[1]) += scale * d_tr;
      grad_of(n.inputs[2]) += scale * d_start;
      grad_of(n.inputs[3]) += scale * d_stop;
      break;
    }
  }
}

}  // namespace gazener::nn

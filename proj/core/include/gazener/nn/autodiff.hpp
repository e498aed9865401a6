#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gazener::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Parameter {
  std::string name;
  Matrix value;
  // Embedding tables are stored one entry per column; their gradients are
  // kept per touched column.
  bool sparse_columns = false;
  bool trainable = true;
};

// Owns all trainable tensors of a model. Ids are stable for the set's lifetime.
class ParameterSet {
 public:
  int add(std::string name, Matrix value, bool sparse_columns = false);

  Parameter& operator[](int id) { return params_.at(static_cast<std::size_t>(id)); }
  const Parameter& operator[](int id) const { return params_.at(static_cast<std::size_t>(id)); }
  int size() const noexcept { return static_cast<int>(params_.size()); }
  // -1 if absent.
  int find(const std::string& name) const;

  std::vector<Parameter>::iterator begin() { return params_.begin(); }
  std::vector<Parameter>::iterator end() { return params_.end(); }
  std::vector<Parameter>::const_iterator begin() const { return params_.begin(); }
  std::vector<Parameter>::const_iterator end() const { return params_.end(); }

 private:
  std::vector<Parameter> params_;
};

// Gradient accumulator for one ParameterSet. Dense parameters get a full
// matrix; sparse ones a map column -> gradient.
class Gradients {
 public:
  explicit Gradients(const ParameterSet& params);

  void clear();
  Matrix& dense(int id);
  void add_to_column(int id, int column, const Eigen::Ref<const Vector>& gradient);

  bool touched(int id) const { return entries_[static_cast<std::size_t>(id)].touched; }
  const Matrix& dense_value(int id) const { return entries_[static_cast<std::size_t>(id)].dense; }
  const std::map<int, Vector>& columns(int id) const { return entries_[static_cast<std::size_t>(id)].columns; }

  // Full-shape copy, zeros where nothing was accumulated.
  Matrix to_dense(int id) const;

  int size() const noexcept { return static_cast<int>(entries_.size()); }

 private:
  struct Entry {
    Matrix dense;
    std::map<int, Vector> columns;
    bool touched = false;
  };
  const ParameterSet* params_;
  std::vector<Entry> entries_;
};

struct Expr {
  int index = -1;
};

// A single-use computation tape. Values are computed eagerly as nodes are
// added; backward() walks the tape in reverse.
class Graph {
 public:
  explicit Graph(const ParameterSet& params) : params_(&params) {}

  Expr constant(Matrix value);
  Expr parameter(int id);
  // Columns `ids` of an embedding table, side by side (rows x ids.size()).
  Expr gather(int table_id, std::span<const int> ids);

  Expr matmul(Expr a, Expr b);
  Expr add(Expr a, Expr b);
  // Adds column vector `bias` to every column of `m`.
  Expr add_column(Expr m, Expr bias);
  Expr concat_rows(std::span<const Expr> parts);
  Expr concat_cols(std::span<const Expr> parts);
  Expr column(Expr m, int j);
  // Element-wise product with a constant (dropout mask).
  Expr mask(Expr m, Matrix mask);
  Expr tanh(Expr m);

  // Single-layer LSTM over the columns of `gate_inputs` (4H x T, input
  // projection plus bias already applied; gate order i, f, o, g) with
  // recurrent weights `recurrent` (4H x H). Zero initial state. Returns the
  // H x T hidden states; with `reverse` the sequence is read right to left
  // and column t holds the state after consuming t..T-1.
  Expr lstm(Expr gate_inputs, Expr recurrent, bool reverse);

  // Linear-chain CRF negative log-likelihood of `gold` (scalar 1x1).
  // emissions: L x T, transitions: L x L indexed [from, to], start/stop: L x 1.
  Expr crf_nll(Expr emissions, Expr transitions, Expr start, Expr stop, std::vector<int> gold);

  const Matrix& value(Expr e) const;
  double scalar(Expr e) const { return value(e)(0, 0); }
  int node_count() const noexcept { return static_cast<int>(nodes_.size()); }

  // Seeds d(loss)/d(loss) = 1 and accumulates parameter gradients into `out`.
  void backward(Expr loss, Gradients& out);

 private:
  enum class Op {
    Constant, Parameter, Gather, MatMul, Add, AddColumn, ConcatRows, ConcatCols,
    Column, Mask, Tanh, Lstm, CrfNll,
  };
  struct Node {
    Op op = Op::Constant;
    std::vector<int> inputs;
    Matrix value;
    const Matrix* borrowed = nullptr;  // parameter nodes alias the parameter value
    Matrix grad;
    bool has_grad = false;
    int param_id = -1;
    int index = 0;            // Column: column index
    bool reverse = false;     // Lstm direction
    std::vector<int> ids;     // Gather ids, CRF gold path
    std::vector<Matrix> cache;
  };

  Expr push(Node node);
  Node& node(Expr e) { return nodes_[static_cast<std::size_t>(e.index)]; }
  const Matrix& val(int i) const;
  Matrix& grad_of(int i);
  void backprop(Node& n, Gradients& out);

  const ParameterSet* params_;
  std::vector<Node> nodes_;
};

}  // namespace gazener::nn

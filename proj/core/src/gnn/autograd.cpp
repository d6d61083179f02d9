#include "hgb/gnn/autograd.hpp"

#include <cmath>

#include "hgb/error.hpp"

namespace hgb::ad {

namespace {

void require_same_tape(Var a, Var b, const char* op) {
  if (&a.tape() != &b.tape()) throw ContractError(std::string(op) + ": operands on different tapes");
}

void require_shape(bool ok, const char* op, const char* what) {
  if (!ok) throw ContractError(std::string(op) + ": dimension mismatch (" + what + ")");
}

}  // namespace

const Matrix& Var::value() const { return tape_->value(id_); }
Matrix Var::grad() const { return tape_->grad(id_); }

Var Tape::constant(Matrix value) {
  nodes_.push_back({std::move(value), Matrix(), false, false, nullptr});
  return Var(this, nodes_.size() - 1);
}

Var Tape::variable(Matrix value) {
  nodes_.push_back({std::move(value), Matrix(), true, false, nullptr});
  return Var(this, nodes_.size() - 1);
}

Var Tape::record(Matrix value, std::initializer_list<Var> inputs, Backward backward) {
  bool needs = false;
  for (const Var& in : inputs) needs = needs || nodes_[in.id()].needs_grad;
  nodes_.push_back({std::move(value), Matrix(), needs, false, needs ? std::move(backward) : nullptr});
  return Var(this, nodes_.size() - 1);
}

Matrix Tape::grad(std::size_t id) const {
  const Node& node = nodes_[id];
  if (node.has_grad) return node.grad;
  return Matrix::Zero(node.value.rows(), node.value.cols());
}

Matrix& Tape::grad_buffer(std::size_t id) {
  Node& node = nodes_[id];
  if (!node.has_grad) {
    node.grad = Matrix::Zero(node.value.rows(), node.value.cols());
    node.has_grad = true;
  }
  return node.grad;
}

void Tape::accumulate(std::size_t id, const Matrix& delta) {
  if (!nodes_[id].needs_grad) return;
  grad_buffer(id) += delta;
}

void Tape::backward(Var output) {
  if (&output.tape() != this) throw ContractError("backward: output belongs to another tape");
  const std::size_t root = output.id();
  if (nodes_[root].value.size() != 1) throw ContractError("backward: output must be 1x1");
  for (Node& node : nodes_) {
    node.has_grad = false;
    node.grad.resize(0, 0);
  }
  if (!nodes_[root].needs_grad) return;
  grad_buffer(root).setConstant(1.0);
  for (std::size_t id = root + 1; id-- > 0;) {
    Node& node = nodes_[id];
    if (node.has_grad && node.backward) node.backward(*this, id);
  }
}

// ---------------------------------------------------------------------------

Var matmul(Var a, Var b) {
  require_same_tape(a, b, "matmul");
  require_shape(a.cols() == b.rows(), "matmul", "inner dimensions");
  Matrix out = a.value() * b.value();
  const std::size_t ia = a.id(), ib = b.id();
  return a.tape().record(std::move(out), {a, b}, [ia, ib](Tape& t, std::size_t self) {
    const Matrix& g = t.grad_buffer(self);
    if (t.needs_grad(ia)) t.accumulate(ia, g * t.value(ib).transpose());
    if (t.needs_grad(ib)) t.accumulate(ib, t.value(ia).transpose() * g);
  });
}

Var add(Var a, Var b) {
  require_same_tape(a, b, "add");
  require_shape(a.rows() == b.rows() && a.cols() == b.cols(), "add", "operand shapes");
  Matrix out = a.value() + b.value();
  const std::size_t ia = a.id(), ib = b.id();
  return a.tape().record(std::move(out), {a, b}, [ia, ib](Tape& t, std::size_t self) {
    const Matrix& g = t.grad_buffer(self);
    t.accumulate(ia, g);
    t.accumulate(ib, g);
  });
}

Var add_row(Var a, Var row) {
  require_same_tape(a, row, "add_row");
  require_shape(row.rows() == 1 && row.cols() == a.cols(), "add_row", "row width");
  Matrix out = a.value().rowwise() + row.value().row(0);
  const std::size_t ia = a.id(), ir = row.id();
  return a.tape().record(std::move(out), {a, row}, [ia, ir](Tape& t, std::size_t self) {
    const Matrix& g = t.grad_buffer(self);
    t.accumulate(ia, g);
    if (t.needs_grad(ir)) t.accumulate(ir, g.colwise().sum());
  });
}

Var scale(Var a, double factor) {
  Matrix out = a.value() * factor;
  const std::size_t ia = a.id();
  return a.tape().record(std::move(out), {a}, [ia, factor](Tape& t, std::size_t self) {
    t.accumulate(ia, t.grad_buffer(self) * factor);
  });
}

Var relu(Var a) {
  Matrix out = a.value().cwiseMax(0.0);
  const std::size_t ia = a.id();
  return a.tape().record(std::move(out), {a}, [ia](Tape& t, std::size_t self) {
    const Matrix& x = t.value(ia);
    t.accumulate(ia, (x.array() > 0.0).select(t.grad_buffer(self), 0.0).matrix());
  });
}

Var elu(Var a, double alpha) {
  const Matrix& x = a.value();
  Matrix out = (x.array() > 0.0).select(x, alpha * (x.array().exp() - 1.0)).matrix();
  const std::size_t ia = a.id();
  return a.tape().record(std::move(out), {a}, [ia, alpha](Tape& t, std::size_t self) {
    const Matrix& x = t.value(ia);
    const Matrix local = (x.array() > 0.0).select(Matrix::Ones(x.rows(), x.cols()),
                                                  (alpha * x.array().exp()).matrix());
    t.accumulate(ia, t.grad_buffer(self).cwiseProduct(local));
  });
}

Var leaky_relu(Var a, double slope) {
  const Matrix& x = a.value();
  Matrix out = (x.array() > 0.0).select(x, slope * x).matrix();
  const std::size_t ia = a.id();
  return a.tape().record(std::move(out), {a}, [ia, slope](Tape& t, std::size_t self) {
    const Matrix& x = t.value(ia);
    const Matrix& g = t.grad_buffer(self);
    t.accumulate(ia, (x.array() > 0.0).select(g, slope * g).matrix());
  });
}

namespace {

Matrix row_softmax(const Matrix& x) {
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double m = x.row(i).maxCoeff();
    out.row(i) = (x.row(i).array() - m).exp().matrix();
    out.row(i) /= out.row(i).sum();
  }
  return out;
}

}  // namespace

Var softmax_rows(Var a) {
  Matrix out = row_softmax(a.value());
  const std::size_t ia = a.id();
  return a.tape().record(std::move(out), {a}, [ia](Tape& t, std::size_t self) {
    const Matrix& y = t.value(self);
    const Matrix& g = t.grad_buffer(self);
    const Eigen::VectorXd dot = g.cwiseProduct(y).rowwise().sum();
    Matrix delta = y.cwiseProduct((g.colwise() - dot));
    t.accumulate(ia, delta);
  });
}

Var log_softmax_rows(Var a) {
  const Matrix& x = a.value();
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double m = x.row(i).maxCoeff();
    const double lse = m + std::log((x.row(i).array() - m).exp().sum());
    out.row(i) = (x.row(i).array() - lse).matrix();
  }
  const std::size_t ia = a.id();
  return a.tape().record(std::move(out), {a}, [ia](Tape& t, std::size_t self) {
    const Matrix softmax = t.value(self).array().exp().matrix();
    const Matrix& g = t.grad_buffer(self);
    const Eigen::VectorXd total = g.rowwise().sum();
    Matrix delta = g - (softmax.array().colwise() * total.array()).matrix();
    t.accumulate(ia, delta);
  });
}

Var dropout(Var a, double p, Rng& rng) {
  if (!(p >= 0.0 && p < 1.0)) throw ContractError("dropout: p must lie in [0, 1)");
  Matrix mask(a.rows(), a.cols());
  const double keep_scale = 1.0 / (1.0 - p);
  for (Eigen::Index i = 0; i < mask.size(); ++i)
    mask.data()[i] = rng.uniform() < p ? 0.0 : keep_scale;
  Matrix out = a.value().cwiseProduct(mask);
  const std::size_t ia = a.id();
  return a.tape().record(std::move(out), {a},
                         [ia, mask = std::move(mask)](Tape& t, std::size_t self) {
                           t.accumulate(ia, t.grad_buffer(self).cwiseProduct(mask));
                         });
}

Var concat_cols(Var a, Var b) {
  require_same_tape(a, b, "concat_cols");
  require_shape(a.rows() == b.rows(), "concat_cols", "row counts");
  Matrix out(a.rows(), a.cols() + b.cols());
  out << a.value(), b.value();
  const std::size_t ia = a.id(), ib = b.id();
  const Eigen::Index split = a.cols();
  return a.tape().record(std::move(out), {a, b}, [ia, ib, split](Tape& t, std::size_t self) {
    const Matrix& g = t.grad_buffer(self);
    if (t.needs_grad(ia)) t.accumulate(ia, g.leftCols(split));
    if (t.needs_grad(ib)) t.accumulate(ib, g.rightCols(g.cols() - split));
  });
}

Var mean(Var a) {
  const double count = static_cast<double>(a.value().size());
  if (count == 0) throw ContractError("mean: empty operand");
  Matrix out(1, 1);
  out(0, 0) = a.value().sum() / count;
  const std::size_t ia = a.id();
  return a.tape().record(std::move(out), {a}, [ia, count](Tape& t, std::size_t self) {
    const double g = t.grad_buffer(self)(0, 0) / count;
    const Matrix& x = t.value(ia);
    t.accumulate(ia, Matrix::Constant(x.rows(), x.cols(), g));
  });
}

// ---------------------------------------------------------------------------

Var spmm(std::shared_ptr<const SparseMatrix> s, Var a) {
  require_shape(s->cols() == a.rows(), "spmm", "sparse columns vs dense rows");
  Matrix out = (*s) * a.value();
  const std::size_t ia = a.id();
  return a.tape().record(std::move(out), {a}, [ia, s = std::move(s)](Tape& t, std::size_t self) {
    t.accumulate(ia, s->transpose() * t.grad_buffer(self));
  });
}

Var gather_rows(Var a, std::shared_ptr<const Index> index) {
  const Matrix& x = a.value();
  Matrix out(static_cast<Eigen::Index>(index->size()), x.cols());
  for (std::size_t i = 0; i < index->size(); ++i) {
    const Eigen::Index src = (*index)[i];
    require_shape(src >= 0 && src < x.rows(), "gather_rows", "index out of range");
    out.row(static_cast<Eigen::Index>(i)) = x.row(src);
  }
  const std::size_t ia = a.id();
  return a.tape().record(std::move(out), {a},
                         [ia, index = std::move(index)](Tape& t, std::size_t self) {
                           const Matrix& g = t.grad_buffer(self);
                           Matrix& target = t.grad_buffer(ia);
                           for (std::size_t i = 0; i < index->size(); ++i)
                             target.row((*index)[i]) += g.row(static_cast<Eigen::Index>(i));
                         });
}

Var scatter_add_rows(Var a, std::shared_ptr<const Index> index, Eigen::Index num_rows) {
  const Matrix& x = a.value();
  require_shape(static_cast<Eigen::Index>(index->size()) == x.rows(), "scatter_add_rows",
                "index length vs rows");
  Matrix out = Matrix::Zero(num_rows, x.cols());
  for (std::size_t i = 0; i < index->size(); ++i) {
    const Eigen::Index dst = (*index)[i];
    require_shape(dst >= 0 && dst < num_rows, "scatter_add_rows", "index out of range");
    out.row(dst) += x.row(static_cast<Eigen::Index>(i));
  }
  const std::size_t ia = a.id();
  return a.tape().record(std::move(out), {a},
                         [ia, index = std::move(index)](Tape& t, std::size_t self) {
                           const Matrix& g = t.grad_buffer(self);
                           Matrix delta(static_cast<Eigen::Index>(index->size()), g.cols());
                           for (std::size_t i = 0; i < index->size(); ++i)
                             delta.row(static_cast<Eigen::Index>(i)) = g.row((*index)[i]);
                           t.accumulate(ia, delta);
                         });
}

Var segment_softmax(Var scores, std::shared_ptr<const Index> segment, Eigen::Index num_segments) {
  const Matrix& s = scores.value();
  require_shape(s.cols() == 1 && static_cast<Eigen::Index>(segment->size()) == s.rows(),
                "segment_softmax", "scores must be a column matching the segment ids");
  Eigen::VectorXd max = Eigen::VectorXd::Constant(num_segments, -INFINITY);
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    const Eigen::Index g = (*segment)[static_cast<std::size_t>(i)];
    require_shape(g >= 0 && g < num_segments, "segment_softmax", "segment id out of range");
    max(g) = std::max(max(g), s(i, 0));
  }
  Matrix out(s.rows(), 1);
  Eigen::VectorXd total = Eigen::VectorXd::Zero(num_segments);
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    const Eigen::Index g = (*segment)[static_cast<std::size_t>(i)];
    out(i, 0) = std::exp(s(i, 0) - max(g));
    total(g) += out(i, 0);
  }
  for (Eigen::Index i = 0; i < s.rows(); ++i) out(i, 0) /= total((*segment)[static_cast<std::size_t>(i)]);

  const std::size_t is = scores.id();
  return scores.tape().record(
      std::move(out), {scores},
      [is, segment = std::move(segment), num_segments](Tape& t, std::size_t self) {
        const Matrix& y = t.value(self);
        const Matrix& g = t.grad_buffer(self);
        Eigen::VectorXd dot = Eigen::VectorXd::Zero(num_segments);
        for (Eigen::Index i = 0; i < y.rows(); ++i)
          dot((*segment)[static_cast<std::size_t>(i)]) += g(i, 0) * y(i, 0);
        Matrix delta(y.rows(), 1);
        for (Eigen::Index i = 0; i < y.rows(); ++i)
          delta(i, 0) = y(i, 0) * (g(i, 0) - dot((*segment)[static_cast<std::size_t>(i)]));
        t.accumulate(is, delta);
      });
}

Var mul_rows(Var a, Var s) {
  require_same_tape(a, s, "mul_rows");
  require_shape(s.cols() == 1 && s.rows() == a.rows(), "mul_rows", "scale column");
  Matrix out = (a.value().array().colwise() * s.value().col(0).array()).matrix();
  const std::size_t ia = a.id(), is = s.id();
  return a.tape().record(std::move(out), {a, s}, [ia, is](Tape& t, std::size_t self) {
    const Matrix& g = t.grad_buffer(self);
    if (t.needs_grad(ia))
      t.accumulate(ia, (g.array().colwise() * t.value(is).col(0).array()).matrix());
    if (t.needs_grad(is)) t.accumulate(is, g.cwiseProduct(t.value(ia)).rowwise().sum());
  });
}

// ---------------------------------------------------------------------------

Var bce_with_logits(Var logits, const Matrix& targets) {
  const Matrix& z = logits.value();
  require_shape(z.rows() == targets.rows() && z.cols() == targets.cols(), "bce_with_logits",
                "logits vs targets");
  const double count = static_cast<double>(z.size());
  if (count == 0) throw ContractError("bce_with_logits: empty input");
  const auto za = z.array();
  const double total =
      (za.max(0.0) - za * targets.array() + (-za.abs()).exp().log1p()).sum();
  Matrix out(1, 1);
  out(0, 0) = total / count;
  const std::size_t iz = logits.id();
  return logits.tape().record(std::move(out), {logits},
                              [iz, targets, count](Tape& t, std::size_t self) {
                                const double g = t.grad_buffer(self)(0, 0);
                                const Matrix sigmoid =
                                    (1.0 / (1.0 + (-t.value(iz).array()).exp())).matrix();
                                t.accumulate(iz, (sigmoid - targets) * (g / count));
                              });
}

Var mse(Var predictions, const Matrix& targets) {
  const Matrix& p = predictions.value();
  require_shape(p.rows() == targets.rows() && p.cols() == targets.cols(), "mse",
                "predictions vs targets");
  const double count = static_cast<double>(p.size());
  if (count == 0) throw ContractError("mse: empty input");
  Matrix out(1, 1);
  out(0, 0) = (p - targets).squaredNorm() / count;
  const std::size_t ip = predictions.id();
  return predictions.tape().record(std::move(out), {predictions},
                                   [ip, targets, count](Tape& t, std::size_t self) {
                                     const double g = t.grad_buffer(self)(0, 0);
                                     t.accumulate(ip, (t.value(ip) - targets) * (2.0 * g / count));
                                   });
}

}  // namespace hgb::ad

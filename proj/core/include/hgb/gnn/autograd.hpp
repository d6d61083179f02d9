#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "hgb/graph.hpp"
#include "hgb/matrices.hpp"
#include "hgb/rng.hpp"

namespace hgb::ad {

using Index = std::vector<Eigen::Index>;
using ColumnVector = Eigen::VectorXd;

class Tape;

/// Handle to a value recorded on a Tape. Cheap to copy; valid while the tape
/// lives.
class Var {
 public:
  Var() = default;

  const Matrix& value() const;
  /// Accumulated gradient; zeros if nothing flowed into this value.
  Matrix grad() const;
  Eigen::Index rows() const { return value().rows(); }
  Eigen::Index cols() const { return value().cols(); }
  Tape& tape() const { return *tape_; }
  std::size_t id() const { return id_; }
  bool valid() const { return tape_ != nullptr; }

 private:
  friend class Tape;
  Var(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}

  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

/// Records operations in execution order; backward() replays them in reverse.
class Tape {
 public:
  using Backward = std::function<void(Tape&, std::size_t self)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Leaf that never receives a gradient.
  Var constant(Matrix value);
  /// Leaf whose gradient is accumulated.
  Var variable(Matrix value);

  /// Seeds d(output)/d(output) = 1 for a 1x1 output and back-propagates.
  void backward(Var output);

  const Matrix& value(std::size_t id) const { return nodes_[id].value; }
  Matrix grad(std::size_t id) const;
  bool needs_grad(std::size_t id) const { return nodes_[id].needs_grad; }
  /// Adds `delta` into the gradient of node `id` (no-op for constants).
  void accumulate(std::size_t id, const Matrix& delta);
  /// Mutable gradient buffer of `id`, zero-initialised on first use.
  Matrix& grad_buffer(std::size_t id);

  /// Records an op result. `inputs` decide whether the result needs a gradient.
  Var record(Matrix value, std::initializer_list<Var> inputs, Backward backward);

  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    bool needs_grad = false;
    bool has_grad = false;
    Backward backward;
  };
  std::vector<Node> nodes_;
};

// ---------------------------------------------------------------------------
// Dense ops

Var matmul(Var a, Var b);
Var add(Var a, Var b);
/// a (n x d) + row (1 x d) broadcast over rows.
Var add_row(Var a, Var row);
Var scale(Var a, double factor);
Var relu(Var a);
Var elu(Var a, double alpha = 1.0);
Var leaky_relu(Var a, double slope = 0.2);
Var softmax_rows(Var a);
Var log_softmax_rows(Var a);
/// Inverted dropout: zeroes each entry with probability p and scales the
/// survivors by 1/(1-p).
Var dropout(Var a, double p, Rng& rng);
Var concat_cols(Var a, Var b);
/// Mean of all entries, as a 1x1 value.
Var mean(Var a);

// ---------------------------------------------------------------------------
// Graph ops. Index/sparse arguments are shared so the tape can outlive the
// caller's copies.

/// S * a for a constant sparse S.
Var spmm(std::shared_ptr<const SparseMatrix> s, Var a);
/// out[i] = a[index[i]].
Var gather_rows(Var a, std::shared_ptr<const Index> index);
/// out[index[i]] += a[i] for an output with `num_rows` rows.
Var scatter_add_rows(Var a, std::shared_ptr<const Index> index, Eigen::Index num_rows);
/// Softmax of a column of scores within groups sharing the same segment id.
Var segment_softmax(Var scores, std::shared_ptr<const Index> segment, Eigen::Index num_segments);
/// Row i of a scaled by s(i, 0). s is an (n x 1) Var.
Var mul_rows(Var a, Var s);

// ---------------------------------------------------------------------------
// Losses (mean reduction over all entries, 1x1 result)

/// -mean(y log sigmoid(z) + (1 - y) log(1 - sigmoid(z))), numerically stable.
Var bce_with_logits(Var logits, const Matrix& targets);
Var mse(Var predictions, const Matrix& targets);

}  // namespace hgb::ad

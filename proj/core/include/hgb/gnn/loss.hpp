#pragma once

#include "hgb/graph.hpp"

namespace hgb::gnn {

/// Mean over all entries of max(z, 0) - z y + log(1 + exp(-|z|)).
double bce_with_logits(const Matrix& y_true, const Matrix& y_raw);
/// Mean squared error over all entries.
double mse(const Matrix& y_true, const Matrix& y_pred);

}  // namespace hgb::gnn

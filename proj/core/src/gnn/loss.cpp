#include "hgb/gnn/loss.hpp"

#include "hgb/gnn/autograd.hpp"

namespace hgb::gnn {

double bce_with_logits(const Matrix& y_true, const Matrix& y_raw) {
  ad::Tape t;
  return ad::bce_with_logits(t.constant(y_raw), y_true).value()(0, 0);
}

double mse(const Matrix& y_true, const Matrix& y_pred) {
  ad::Tape t;
  return ad::mse(t.constant(y_pred), y_true).value()(0, 0);
}

}  // namespace hgb::gnn

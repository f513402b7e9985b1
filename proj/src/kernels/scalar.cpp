#include <algorithm>
#include <cmath>

#include "anosovlab/kernels/kernels.hpp"

namespace anosovlab::kernels::scalar {

void right_multiply_batch(const double* lhs, const double* rhs, double* out,
                          std::size_t count, int dim) {
  const std::size_t d = static_cast<std::size_t>(dim);
  const std::size_t stride = d * d;
  for (std::size_t m = 0; m < count; ++m) {
    const double* a = lhs + m * stride;
    double* c = out + m * stride;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < d; ++k) acc += a[i * d + k] * rhs[k * d + j];
        c[i * d + j] = acc;
      }
    }
  }
}

void left_multiply_batch(const double* lhs, const double* rhs, double* out,
                         std::size_t count, int dim) {
  const std::size_t d = static_cast<std::size_t>(dim);
  const std::size_t stride = d * d;
  for (std::size_t m = 0; m < count; ++m) {
    const double* b = rhs + m * stride;
    double* c = out + m * stride;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < d; ++k) acc += lhs[i * d + k] * b[k * d + j];
        c[i * d + j] = acc;
      }
    }
  }
}

double max_abs_diff(const double* a, const double* b, std::size_t len) {
  double worst = 0.0;
  for (std::size_t i = 0; i < len; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace anosovlab::kernels::scalar

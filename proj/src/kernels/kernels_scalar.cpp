#include <algorithm>
#include <cmath>

#include "kernel_impls.hpp"

namespace marelay::kernels::detail {
namespace {

double sum_shifted_squares_scalar(const double* r, const double* lambda, double kappa, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = r[i] + kappa * lambda[i];
    acc += z * z;
  }
  return acc;
}

double max_abs_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

double max_modulus_scalar(const double* z, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = z[2 * i];
    const double im = z[2 * i + 1];
    m = std::max(m, re * re + im * im);
  }
  return std::sqrt(m);
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

const KernelTable kScalarTable{sum_shifted_squares_scalar, max_abs_scalar, max_modulus_scalar, axpy_scalar};

}  // namespace marelay::kernels::detail

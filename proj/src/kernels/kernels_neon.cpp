#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "kernel_impls.hpp"

namespace marelay::kernels::detail {
namespace {

double sum_shifted_squares_neon(const double* r, const double* lambda, double kappa, std::size_t n) {
  const float64x2_t k = vdupq_n_f64(kappa);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t z = vfmaq_f64(vld1q_f64(r + i), k, vld1q_f64(lambda + i));
    acc = vfmaq_f64(acc, z, z);
  }
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double z = r[i] + kappa * lambda[i];
    out += z * z;
  }
  return out;
}

double max_abs_neon(const double* x, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(x + i)));
  double out = vmaxvq_f64(m);
  for (; i < n; ++i) out = std::max(out, std::abs(x[i]));
  return out;
}

double max_modulus_neon(const double* z, std::size_t n) {
  double out = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t v = vld1q_f64(z + 2 * i);
    out = std::max(out, vaddvq_f64(vmulq_f64(v, v)));
  }
  return std::sqrt(out);
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t a = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), a, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

const KernelTable kNeonTable{sum_shifted_squares_neon, max_abs_neon, max_modulus_neon, axpy_neon};

}  // namespace marelay::kernels::detail

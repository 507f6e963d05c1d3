#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "kernel_impls.hpp"

namespace marelay::kernels::detail {
namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

double sum_shifted_squares_avx2(const double* r, const double* lambda, double kappa, std::size_t n) {
  const __m256d k = _mm256_set1_pd(kappa);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d z0 = _mm256_fmadd_pd(k, _mm256_loadu_pd(lambda + i), _mm256_loadu_pd(r + i));
    const __m256d z1 = _mm256_fmadd_pd(k, _mm256_loadu_pd(lambda + i + 4), _mm256_loadu_pd(r + i + 4));
    acc0 = _mm256_fmadd_pd(z0, z0, acc0);
    acc1 = _mm256_fmadd_pd(z1, z1, acc1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d z = _mm256_fmadd_pd(k, _mm256_loadu_pd(lambda + i), _mm256_loadu_pd(r + i));
    acc0 = _mm256_fmadd_pd(z, z, acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double z = r[i] + kappa * lambda[i];
    acc += z * z;
  }
  return acc;
}

double max_abs_avx2(const double* x, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
  double out = hmax(m);
  for (; i < n; ++i) out = std::max(out, std::abs(x[i]));
  return out;
}

double max_modulus_avx2(const double* z, std::size_t n) {
  // Two complex entries per register; squared moduli land in both lanes of each pair.
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(z + 2 * i);
    const __m256d sq = _mm256_mul_pd(v, v);
    m = _mm256_max_pd(m, _mm256_hadd_pd(sq, sq));
  }
  double out = hmax(m);
  for (; i < n; ++i) out = std::max(out, z[2 * i] * z[2 * i] + z[2 * i + 1] * z[2 * i + 1]);
  return std::sqrt(out);
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

const KernelTable kAvx2Table{sum_shifted_squares_avx2, max_abs_avx2, max_modulus_avx2, axpy_avx2};

}  // namespace marelay::kernels::detail

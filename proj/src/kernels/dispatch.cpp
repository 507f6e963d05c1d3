#include <atomic>
#include <cassert>

#include "kernel_impls.hpp"

namespace marelay::kernels {
namespace {

Backend detect() {
#if defined(MARELAY_HAVE_AVX2_TU)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Backend::avx2;
#endif
#if defined(MARELAY_HAVE_NEON_TU)
  return Backend::neon;
#endif
  return Backend::scalar;
}

const KernelTable* table_for(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &detail::kScalarTable;
    case Backend::avx2:
#if defined(MARELAY_HAVE_AVX2_TU)
      return detect() == Backend::avx2 ? &detail::kAvx2Table : nullptr;
#else
      return nullptr;
#endif
    case Backend::neon:
#if defined(MARELAY_HAVE_NEON_TU)
      return &detail::kNeonTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

struct Active {
  std::atomic<Backend> backend{detect()};
};

Active& active() {
  static Active a;
  return a;
}

const KernelTable& current() { return *table_for(active().backend.load(std::memory_order_relaxed)); }

const double* as_doubles(const std::complex<double>* z) { return reinterpret_cast<const double*>(z); }
double* as_doubles(std::complex<double>* z) { return reinterpret_cast<double*>(z); }

}  // namespace

const KernelTable& scalar_table() { return detail::kScalarTable; }

const KernelTable* simd_table() {
  const Backend b = detect();
  return b == Backend::scalar ? nullptr : table_for(b);
}

Backend active_backend() { return active().backend.load(std::memory_order_relaxed); }

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "unknown";
}

bool force_backend(Backend b) {
  if (table_for(b) == nullptr) return false;
  active().backend.store(b, std::memory_order_relaxed);
  return true;
}

double sum_shifted_squares(std::span<const double> r, std::span<const double> lambda, double kappa) {
  assert(r.size() == lambda.size());
  return current().sum_shifted_squares(r.data(), lambda.data(), kappa, r.size());
}

double sum_shifted_squares(std::span<const std::complex<double>> r,
                           std::span<const std::complex<double>> lambda, double kappa) {
  assert(r.size() == lambda.size());
  return current().sum_shifted_squares(as_doubles(r.data()), as_doubles(lambda.data()), kappa, 2 * r.size());
}

double max_abs(std::span<const double> x) { return current().max_abs(x.data(), x.size()); }

double max_modulus(std::span<const std::complex<double>> z) {
  return current().max_modulus(as_doubles(z.data()), z.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  current().axpy(alpha, x.data(), y.data(), x.size());
}

void axpy(double alpha, std::span<const std::complex<double>> x, std::span<std::complex<double>> y) {
  assert(x.size() == y.size());
  current().axpy(alpha, as_doubles(x.data()), as_doubles(y.data()), 2 * x.size());
}

}  // namespace marelay::kernels

#pragma once

#include <complex>
#include <span>
#include <string_view>

namespace marelay::kernels {

enum class Backend { scalar, avx2, neon };

/// Reductions used on flattened residual and dual buffers.
/// Every backend must agree with the scalar reference to rounding.
struct KernelTable {
  /// sum_i (r_i + kappa * lambda_i)^2
  double (*sum_shifted_squares)(const double* r, const double* lambda, double kappa, std::size_t n);
  /// max_i |x_i|
  double (*max_abs)(const double* x, std::size_t n);
  /// max_i |z_i| over interleaved (re, im) pairs; n counts complex entries.
  double (*max_modulus)(const double* z, std::size_t n);
  /// y_i += alpha * x_i
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
};

const KernelTable& scalar_table();
/// Null when the backend was not compiled in or the CPU lacks it.
const KernelTable* simd_table();

Backend active_backend();
std::string_view backend_name(Backend b);
/// Test hook; returns false if the requested backend is unavailable.
bool force_backend(Backend b);

double sum_shifted_squares(std::span<const double> r, std::span<const double> lambda, double kappa);
double sum_shifted_squares(std::span<const std::complex<double>> r,
                           std::span<const std::complex<double>> lambda, double kappa);
double max_abs(std::span<const double> x);
double max_modulus(std::span<const std::complex<double>> z);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void axpy(double alpha, std::span<const std::complex<double>> x, std::span<std::complex<double>> y);

}  // namespace marelay::kernels

#include "marelay/surrogate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace marelay {

double AffineSurrogate::operator()(std::span<const double> x) const {
  if (x.size() != gradient.size()) throw std::invalid_argument("AffineSurrogate: dimension mismatch");
  double v = constant;
  for (std::size_t i = 0; i < x.size(); ++i) v += gradient[i] * (x[i] - anchor[i]);
  return v;
}

AffineSurrogate linearize_rate_bound(double eta_prev, RateTangentForm form) {
  if (!(eta_prev >= 0.0)) throw std::invalid_argument("linearize_rate_bound: eta_prev must be >= 0");
  const double slope = 1.0 / (std::numbers::ln2 * (1.0 + eta_prev));
  AffineSurrogate s;
  s.constant = std::log2(1.0 + eta_prev);
  s.gradient = {form == RateTangentForm::corrected ? slope : 0.5 * slope};
  s.anchor = {eta_prev};
  return s;
}

AffineSurrogate linearize_quadratic_over_linear(cplx u_prev, double eta_prev) {
  if (!(eta_prev > 0.0)) throw std::invalid_argument("linearize_quadratic_over_linear: eta_prev must be > 0");
  AffineSurrogate s;
  s.constant = std::norm(u_prev) / eta_prev;
  s.gradient = {2.0 * u_prev.real() / eta_prev, 2.0 * u_prev.imag() / eta_prev,
                -std::norm(u_prev) / (eta_prev * eta_prev)};
  s.anchor = {u_prev.real(), u_prev.imag(), eta_prev};
  return s;
}

double QuadOverLinearMinorant::operator()(const CVector& u, double eta) const {
  return 2.0 * u0.dot(u).real() / eta0 - u0.squaredNorm() * eta / (eta0 * eta0);
}

Halfspace linearize_min_distance(const Vec2& v_prev, double D) {
  const double n = v_prev.norm();
  if (!(n > 0.0)) throw std::invalid_argument("linearize_min_distance: zero anchor has no direction");
  return {v_prev / n, D};
}

double ProductLowerBound::operator()(double t, double C) const {
  const double p = t + C;
  const double m = t - C;
  return (2.0 * s0 * p - s0 * s0 - m * m) / 4.0;
}

double ProductUpperBound::operator()(double t, double C) const {
  const double p = t + C;
  const double m = t - C;
  return (p * p - 2.0 * d0 * m + d0 * d0) / 4.0;
}

ProductLowerBound product_lower_bound(double t0, double C0) { return {t0 + C0}; }
ProductUpperBound product_upper_bound(double t0, double C0) { return {t0 - C0}; }

}  // namespace marelay

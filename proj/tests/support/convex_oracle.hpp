#pragma once

#include <functional>
#include <vector>

#include "marelay/types.hpp"

namespace marelay::testing {

/// 0.5 x^T P x + q^T x + c.
struct Quadratic {
  RMatrix P;
  RVector q;
  double c = 0.0;

  double operator()(const RVector& x) const { return 0.5 * x.dot(P * x) + q.dot(x) + c; }
};

/// Recovers the coefficients of a black-box quadratic from unit-step
/// differences, which are exact for quadratics up to rounding.
Quadratic fit_quadratic(const std::function<double(const RVector&)>& f, int n);

/// Twice-differentiable convex function given with its derivatives.
struct Smooth {
  std::function<double(const RVector&)> value;
  std::function<RVector(const RVector&)> gradient;
  std::function<RMatrix(const RVector&)> hessian;

  static Smooth from(const Quadratic& q);
};

struct BarrierOptions {
  double t0 = 1.0;
  double growth = 8.0;
  double gap = 1e-12;  ///< stop once constraints / t falls below gap * max(1, |f|)
  int max_newton = 200;
};

/// Log-barrier interior-point method with damped Newton steps, finished by
/// Newton on the KKT system of the active set: min f(x) s.t. g_i(x) <= 0.
/// x0 must be strictly feasible.
RVector barrier_minimize(const Smooth& f, const std::vector<Smooth>& g, RVector x0, const BarrierOptions& opts = {});

/// Real and imaginary parts stacked.
RVector realify(const CVector& z);
CVector complexify(const RVector& x, Eigen::Index offset, Eigen::Index n);

}  // namespace marelay::testing

#pragma once

#include <span>
#include <vector>

#include "marelay/types.hpp"

namespace marelay {

/// f(anchor) + gradient . (x - anchor); constant holds f(anchor).
struct AffineSurrogate {
  double constant = 0.0;
  std::vector<double> gradient;
  std::vector<double> anchor;

  double operator()(std::span<const double> x) const;
};

enum class RateTangentForm {
  corrected,  ///< slope 1 / (ln2 (1 + eta0))
  printed,    ///< slope 1 / (2 ln2 (1 + eta0)); not a majorant-tangent of log2(1 + eta)
};

/// Affine in eta; the constraint C <= surrogate(eta) replaces C <= log2(1 + eta).
/// Throws std::invalid_argument for eta_prev < 0.
AffineSurrogate linearize_rate_bound(double eta_prev, RateTangentForm form = RateTangentForm::corrected);

/// Minorant of |u|^2 / eta over variables (Re u, Im u, eta), tight at the anchor.
/// Throws std::invalid_argument for eta_prev <= 0.
AffineSurrogate linearize_quadratic_over_linear(cplx u_prev, double eta_prev);

/// Vector form: 2 Re(u0^H u) / eta0 - ||u0||^2 eta / eta0^2 <= ||u||^2 / eta.
struct QuadOverLinearMinorant {
  CVector u0;
  double eta0 = 1.0;

  double operator()(const CVector& u, double eta) const;
};

/// {v : normal . v >= offset}.
struct Halfspace {
  Vec2 normal = Vec2::Zero();
  double offset = 0.0;

  bool contains(const Vec2& v, double tol = 0.0) const { return normal.dot(v) >= offset - tol; }
};

/// (v_prev . v) / ||v_prev|| >= D. Throws std::invalid_argument for v_prev = 0.
Halfspace linearize_min_distance(const Vec2& v_prev, double D);

/// Bounds on the product t*C written with p = t + C, m = t - C.
/// Lower: t*C >= (2 s0 p - s0^2 - m^2) / 4 with s0 = t0 + C0.
/// Upper: t*C <= (p^2 - 2 d0 m + d0^2) / 4 with d0 = t0 - C0.
/// Both are tight at (t0, C0).
struct ProductLowerBound {
  double s0 = 0.0;
  double operator()(double t, double C) const;
};
struct ProductUpperBound {
  double d0 = 0.0;
  double operator()(double t, double C) const;
};
ProductLowerBound product_lower_bound(double t0, double C0);
ProductUpperBound product_upper_bound(double t0, double C0);

}  // namespace marelay

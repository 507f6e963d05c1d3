#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "marelay/types.hpp"

namespace marelay::pdd {

/// Root search for a decreasing constraint function g(nu) on nu >= 0.
struct MultiplierSearch {
  double initial_upper = 1.0;
  int max_doublings = 60;
  double tolerance = 1e-10;  ///< accepted root residual
  int max_bisections = 200;
};

/// Returns 0 if g(0) <= 0, otherwise a nu with -tolerance <= g(nu) <= 0 (or the
/// feasible end of a collapsed bracket). nullopt when no bracket is found.
std::optional<double> find_multiplier(const std::function<double(double)>& g, const MultiplierSearch& opts = {});

/// Euclidean (Frobenius) projection onto {||x|| <= radius}.
CVector project_ball(const CVector& x, double radius);
CMatrix project_ball(const CMatrix& x, double radius);

/// b / |b|; for b = 0 keeps the previous entry when it is unit modulus, else 1.
cplx unit_phase(cplx b, cplx previous);

/// min (r - r0)^2 + (t - t0)^2 + (C - C0)^2 over r in [0, 1] subject to
///   lower: coef * r + offset <= LB(t, C), LB the product minorant at the anchor;
///   upper: UB(t, C) <= coef * r + offset, UB the product majorant at the anchor.
struct ProductGroupInput {
  double r0 = 0.0, t0 = 0.0, C0 = 0.0;
  double coef = 1.0, offset = 0.0;
  double anchor_t = 0.0, anchor_C = 0.0;
  bool upper = false;
};
struct ProductGroupResult {
  double r = 0.0, t = 0.0, C = 0.0, nu = 0.0;
  bool ok = true;
};
ProductGroupResult solve_product_group(const ProductGroupInput& in, const MultiplierSearch& opts = {});

/// min (r - r0)^2 + (t - t0)^2 over r in [0, 1] subject to e * r <= t.
struct PairResult {
  double r = 0.0, t = 0.0;
};
PairResult solve_edge_group(double r0, double t0, double e);

/// min s + (1/2kappa) [w_s (s - s0)^2 + sum_k (x_k - x0_k)^2] subject to sum_k x_k <= s, x >= 0,
/// with w_s the number of penalty terms on s.
struct SumGroupResult {
  double s = 0.0;
  RVector x;
};
SumGroupResult solve_sum_group(double s0, double w_s, const RVector& x0, double kappa);
/// Same with x >= lower in place of x >= 0; lower must be nonnegative.
SumGroupResult solve_sum_group(double s0, double w_s, const RVector& x0, double kappa, const RVector& lower);

/// min n (rho - rho0)^2 + sum_k (t_k - t0_k)^2 over rho in [0, 1] subject to
/// local * (1 - rho) <= sum_k t_k and t <= cap (when enforced); rho pinned when fixed.
/// cap must be nonnegative.
struct RhoGroupResult {
  double rho = 0.0;
  RVector t;
};
RhoGroupResult solve_rho_group(double rho0, double n, const RVector& t0, const RVector& cap, double local,
                               bool enforce, std::optional<double> fixed_rho);

/// min w_C (C - C0)^2 + (eta - e0)^2 subject to C <= log2(1 + eta), exactly.
struct RateGroupResult {
  double C = 0.0, eta = 0.0, nu = 0.0;
  bool ok = true;
};
RateGroupResult solve_rate_group(double C0, double w_C, double e0, const MultiplierSearch& opts = {});
/// Same objective with the tangent C <= c + slope (eta - anchor) in place of the log.
RateGroupResult solve_rate_group_affine(double C0, double w_C, double e0, double c, double slope, double anchor);

/// min ||x - y||^2 subject to normal . x >= offset.
Vec2 project_halfspace(const Vec2& y, const Vec2& normal, double offset);

/// SINR block: variables s_j (j = 0..K-1), row x (1 x N), eta.
///   min sum_j |s_j - x c_j + kl_j|^2 + (eta - e0)^2 + ||x - z||^2
///   s.t. sum_{j != k} |s_j|^2 + s2 ||x||^2 + noise - [2 Re(conj(s0) s_k) / eta0 - |s0|^2 eta / eta0^2] <= 0
/// where c_j are column vectors and kl_j the scaled duals.
struct UplinkSinrInput {
  int k = 0;
  std::vector<CVector> c;
  CVector kl;
  CRowVector z;
  double e0 = 0.0;
  cplx s0;
  double eta0 = 1.0;
  double s2 = 1.0;
  double noise = 0.0;
};
struct UplinkSinrResult {
  CVector s;
  CRowVector x;
  double eta = 0.0;
  double nu = 0.0;
  bool ok = true;
};
UplinkSinrResult solve_uplink_sinr_block(const UplinkSinrInput& in, const MultiplierSearch& opts = {});
double uplink_sinr_surrogate(const UplinkSinrInput& in, const CVector& s, const CRowVector& x, double eta);

/// D2D SINR block: vectors o_j with targets y_j, scalar eta with target e0.
///   min sum_j ||o_j - y_j||^2 + (eta - e0)^2
///   s.t. sum_{j != k} ||o_j||^2 + s2 - [2 Re(o0^H o_k) / eta0 - ||o0||^2 eta / eta0^2] <= 0
struct D2dSinrInput {
  int k = 0;
  std::vector<CVector> y;
  double e0 = 0.0;
  CVector o0;
  double eta0 = 1.0;
  double s2 = 1.0;
};
struct D2dSinrResult {
  std::vector<CVector> o;
  double eta = 0.0;
  double nu = 0.0;
  bool ok = true;
};
D2dSinrResult solve_d2d_sinr_block(const D2dSinrInput& in, const MultiplierSearch& opts = {});
double d2d_sinr_surrogate(const D2dSinrInput& in, const std::vector<CVector>& o, double eta);

/// min ||B q - y||^2 subject to s2 ||q||^2 <= budget; minimum-norm solution when
/// B is rank deficient. budget <= 0 yields q = 0.
struct CombinerResult {
  CVector q;
  double nu = 0.0;
  bool ok = true;
};
CombinerResult solve_ball_least_squares(const CMatrix& B, const CVector& y, double s2, double budget,
                                        const MultiplierSearch& opts = {});

/// min 0.5 v^T H v - g^T v over the box [-h, h]^2 with H symmetric PSD.
/// Among multiple minimizers returns the one closest to v_ref.
Vec2 solve_box_qp(const Eigen::Matrix2d& H, const Vec2& g, double h, const Vec2& v_ref);

}  // namespace marelay::pdd

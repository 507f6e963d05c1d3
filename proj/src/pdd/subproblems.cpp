#include "marelay/pdd/subproblems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace marelay::pdd {

std::optional<double> find_multiplier(const std::function<double(double)>& g, const MultiplierSearch& opts) {
  if (g(0.0) <= 0.0) return 0.0;
  double lo = 0.0;
  double hi = opts.initial_upper;
  double g_hi = g(hi);
  for (int d = 0; !(g_hi <= 0.0); ++d) {
    if (d >= opts.max_doublings) return std::nullopt;
    lo = hi;
    hi *= 2.0;
    g_hi = g(hi);
  }
  for (int i = 0; i < opts.max_bisections && g_hi < -opts.tolerance; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double g_mid = g(mid);
    if (g_mid <= 0.0) {
      hi = mid;
      g_hi = g_mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

CVector project_ball(const CVector& x, double radius) {
  const double n = x.norm();
  return n <= radius ? x : CVector(x * (radius / n));
}

CMatrix project_ball(const CMatrix& x, double radius) {
  const double n = x.norm();
  return n <= radius ? x : CMatrix(x * (radius / n));
}

cplx unit_phase(cplx b, cplx previous) {
  const double m = std::abs(b);
  if (m > 0.0 && std::isfinite(m)) return b / m;
  if (std::abs(std::abs(previous) - 1.0) < 1e-12) return previous;
  return {1.0, 0.0};
}

ProductGroupResult solve_product_group(const ProductGroupInput& in, const MultiplierSearch& opts) {
  const double P0 = in.t0 + in.C0;
  const double M0 = in.t0 - in.C0;
  ProductGroupResult out;
  auto eval = [&](double nu, double& r, double& p, double& m) {
    if (!in.upper) {
      const double s0 = in.anchor_t + in.anchor_C;
      r = std::clamp(in.r0 - 0.5 * nu * in.coef, 0.0, 1.0);
      p = P0 + 0.5 * nu * s0;
      m = M0 / (1.0 + 0.5 * nu);
      return in.coef * r + in.offset - (2.0 * s0 * p - s0 * s0 - m * m) / 4.0;
    }
    const double d0 = in.anchor_t - in.anchor_C;
    r = std::clamp(in.r0 + 0.5 * nu * in.coef, 0.0, 1.0);
    p = P0 / (1.0 + 0.5 * nu);
    m = M0 + 0.5 * nu * d0;
    return (p * p - 2.0 * d0 * m + d0 * d0) / 4.0 - in.coef * r - in.offset;
  };
  double r, p, m;
  const auto nu = find_multiplier([&](double v) { return eval(v, r, p, m); }, opts);
  if (!nu) {
    out.ok = false;
    return out;
  }
  eval(*nu, r, p, m);
  out.nu = *nu;
  out.r = r;
  out.t = 0.5 * (p + m);
  out.C = 0.5 * (p - m);
  return out;
}

PairResult solve_edge_group(double r0, double t0, double e) {
  auto r_of = [&](double nu) { return std::clamp(r0 - 0.5 * nu * e, 0.0, 1.0); };
  auto g = [&](double nu) { return e * r_of(nu) - (t0 + 0.5 * nu); };
  const double nu = find_multiplier(g, {1.0, 200, 0.0, 400}).value_or(0.0);
  return {r_of(nu), t0 + 0.5 * nu};
}

SumGroupResult solve_sum_group(double s0, double w_s, const RVector& x0, double kappa) {
  SumGroupResult out;
  const double s_free = s0 - kappa / w_s;
  const RVector x_free = x0.cwiseMax(0.0);
  if (x_free.sum() <= s_free) {
    out.s = s_free;
    out.x = x_free;
    return out;
  }
  // g(nu) = sum_k max(0, x0_k - nu/2) - s(nu) is piecewise linear; try each active set.
  std::vector<double> sorted(x0.data(), x0.data() + x0.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double nu = 2.0 * w_s * (kappa / w_s - s0);
  double head = 0.0;
  for (std::size_t m = 1; m <= sorted.size(); ++m) {
    head += sorted[m - 1];
    const double cand = (head - s_free) / (0.5 * static_cast<double>(m) + 0.5 / w_s);
    const bool last_active = sorted[m - 1] - 0.5 * cand > 0.0;
    const bool next_inactive = m == sorted.size() || sorted[m] - 0.5 * cand <= 0.0;
    if (last_active && next_inactive) {
      nu = cand;
      break;
    }
  }
  out.s = s_free + 0.5 * nu / w_s;
  out.x = (x0.array() - 0.5 * nu).cwiseMax(0.0);
  return out;
}

SumGroupResult solve_sum_group(double s0, double w_s, const RVector& x0, double kappa, const RVector& lower) {
  SumGroupResult out = solve_sum_group(s0 - lower.sum(), w_s, x0 - lower, kappa);
  out.s += lower.sum();
  out.x += lower;
  return out;
}

RhoGroupResult solve_rho_group(double rho0, double n, const RVector& t0, const RVector& cap, double local,
                               bool enforce, std::optional<double> fixed_rho) {
  RhoGroupResult out;
  auto t_of = [&](double nu) -> RVector { return (t0.array() + 0.5 * nu).cwiseMin(cap.array()); };
  if (!enforce) {
    out.rho = fixed_rho ? *fixed_rho : std::clamp(rho0, 0.0, 1.0);
    out.t = t0;
    return out;
  }
  if (fixed_rho) {
    out.rho = *fixed_rho;
    const double need = local * (1.0 - out.rho);
    if (cap.sum() <= need) {
      out.t = cap;
      return out;
    }
    const auto nu = find_multiplier([&](double v) { return need - t_of(v).sum(); }, {1.0, 200, 0.0, 400});
    out.t = t_of(nu.value_or(0.0));
    return out;
  }
  auto rho_of = [&](double nu) { return std::clamp(rho0 + 0.5 * nu * local / n, 0.0, 1.0); };
  auto h = [&](double nu) { return local * (1.0 - rho_of(nu)) - t_of(nu).sum(); };
  const double nu = find_multiplier(h, {1.0, 200, 0.0, 400}).value_or(0.0);
  out.rho = rho_of(nu);
  out.t = t_of(nu);
  return out;
}

RateGroupResult solve_rate_group(double C0, double w_C, double e0, const MultiplierSearch& opts) {
  auto C_of = [&](double nu) { return C0 - nu / (2.0 * w_C); };
  auto eta_of = [&](double nu) {
    const double s = nu / (2.0 * std::numbers::ln2);
    const double root = std::sqrt((1.0 + e0) * (1.0 + e0) + 4.0 * s);
    // 1 + eta = ((1 + e0) + root) / 2, rewritten to avoid cancellation when 1 + e0 < 0.
    const double one_plus = (1.0 + e0) >= 0.0 ? 0.5 * ((1.0 + e0) + root) : 2.0 * s / (root - (1.0 + e0));
    return one_plus - 1.0;
  };
  auto g = [&](double nu) { return C_of(nu) - std::log2(1.0 + eta_of(nu)); };
  RateGroupResult out;
  const auto nu = find_multiplier(g, opts);
  if (!nu) {
    out.ok = false;
    return out;
  }
  out.nu = *nu;
  out.C = C_of(*nu);
  out.eta = eta_of(*nu);
  return out;
}

RateGroupResult solve_rate_group_affine(double C0, double w_C, double e0, double c, double slope, double anchor) {
  const double beta = c - slope * anchor;
  const double excess = C0 - slope * e0 - beta;
  RateGroupResult out;
  out.nu = excess > 0.0 ? excess / (0.5 / w_C + 0.5 * slope * slope) : 0.0;
  out.C = C0 - out.nu / (2.0 * w_C);
  out.eta = e0 + 0.5 * out.nu * slope;
  return out;
}

Vec2 project_halfspace(const Vec2& y, const Vec2& normal, double offset) {
  const double s = normal.dot(y);
  if (s >= offset) return y;
  return y + (offset - s) / normal.squaredNorm() * normal;
}

namespace {

struct SinrEval {
  CVector s;
  CVector xi;
  double eta = 0.0;
};

}  // namespace

double uplink_sinr_surrogate(const UplinkSinrInput& in, const CVector& s, const CRowVector& x, double eta) {
  double q = in.s2 * x.squaredNorm() + in.noise;
  for (Eigen::Index j = 0; j < s.size(); ++j)
    if (j != in.k) q += std::norm(s(j));
  const double minorant =
      2.0 * (std::conj(in.s0) * s(in.k)).real() / in.eta0 - std::norm(in.s0) * eta / (in.eta0 * in.eta0);
  return q - minorant;
}

UplinkSinrResult solve_uplink_sinr_block(const UplinkSinrInput& in, const MultiplierSearch& opts) {
  const int K = static_cast<int>(in.c.size());
  const Eigen::Index N = in.z.size();
  std::vector<CVector> a(K);
  CMatrix Phi = CMatrix::Zero(N, N);
  CVector kl_sum = CVector::Zero(N);
  for (int j = 0; j < K; ++j) {
    a[j] = in.c[j].conjugate();
    if (j != in.k) {
      Phi.noalias() += a[j] * a[j].adjoint();
      kl_sum += in.kl(j) * a[j];
    }
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(Phi);
  const CMatrix& V = eig.eigenvectors();
  const RVector lam = eig.eigenvalues().cwiseMax(0.0);
  const CVector zt = in.z.transpose();
  const CVector Vz = V.adjoint() * zt;
  const CVector Vkl = V.adjoint() * kl_sum;
  const CVector Vak = V.adjoint() * a[in.k];
  const cplx ratio = in.s0 / in.eta0;

  auto solve_at = [&](double nu) {
    SinrEval e;
    const double frac = nu / (1.0 + nu);
    const CVector rhs = Vz + frac * Vkl + (nu * ratio) * Vak;
    CVector y(N);
    for (Eigen::Index i = 0; i < N; ++i) y(i) = rhs(i) / ((1.0 + nu * in.s2) + frac * lam(i));
    e.xi = V * y;
    e.s.resize(K);
    for (int j = 0; j < K; ++j) {
      const cplx proj = a[j].dot(e.xi);
      e.s(j) = j == in.k ? proj - in.kl(j) + nu * ratio : (proj - in.kl(j)) / (1.0 + nu);
    }
    e.eta = in.e0 - nu * std::norm(in.s0) / (2.0 * in.eta0 * in.eta0);
    return e;
  };
  auto g = [&](double nu) {
    const SinrEval e = solve_at(nu);
    return uplink_sinr_surrogate(in, e.s, e.xi.transpose(), e.eta);
  };
  UplinkSinrResult out;
  const auto nu = find_multiplier(g, opts);
  if (!nu) {
    out.ok = false;
    return out;
  }
  const SinrEval e = solve_at(*nu);
  out.nu = *nu;
  out.s = e.s;
  out.x = e.xi.transpose();
  out.eta = e.eta;
  return out;
}

double d2d_sinr_surrogate(const D2dSinrInput& in, const std::vector<CVector>& o, double eta) {
  double q = in.s2;
  for (std::size_t j = 0; j < o.size(); ++j)
    if (static_cast<int>(j) != in.k) q += o[j].squaredNorm();
  const double minorant =
      2.0 * in.o0.dot(o[in.k]).real() / in.eta0 - in.o0.squaredNorm() * eta / (in.eta0 * in.eta0);
  return q - minorant;
}

D2dSinrResult solve_d2d_sinr_block(const D2dSinrInput& in, const MultiplierSearch& opts) {
  auto solve_at = [&](double nu, std::vector<CVector>& o, double& eta) {
    o.resize(in.y.size());
    for (std::size_t j = 0; j < in.y.size(); ++j)
      o[j] = static_cast<int>(j) == in.k ? CVector(in.y[j] + (nu / in.eta0) * in.o0) : CVector(in.y[j] / (1.0 + nu));
    eta = in.e0 - nu * in.o0.squaredNorm() / (2.0 * in.eta0 * in.eta0);
  };
  std::vector<CVector> o;
  double eta = 0.0;
  auto g = [&](double nu) {
    solve_at(nu, o, eta);
    return d2d_sinr_surrogate(in, o, eta);
  };
  D2dSinrResult out;
  const auto nu = find_multiplier(g, opts);
  if (!nu) {
    out.ok = false;
    return out;
  }
  solve_at(*nu, out.o, out.eta);
  out.nu = *nu;
  return out;
}

CombinerResult solve_ball_least_squares(const CMatrix& B, const CVector& y, double s2, double budget,
                                        const MultiplierSearch& opts) {
  CombinerResult out;
  if (!(budget > 0.0)) {
    out.q = CVector::Zero(B.cols());
    out.ok = budget == 0.0;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(B.adjoint() * B);
  const CMatrix& V = eig.eigenvectors();
  const RVector lam = eig.eigenvalues();
  const double cutoff = std::max(lam.maxCoeff(), 1.0) * 1e-12 * static_cast<double>(B.cols());
  CVector b = V.adjoint() * (B.adjoint() * y);
  for (Eigen::Index i = 0; i < b.size(); ++i)
    if (lam(i) <= cutoff) b(i) = 0.0;
  auto q_of = [&](double nu) {
    CVector c(b.size());
    for (Eigen::Index i = 0; i < b.size(); ++i) {
      const double d = (lam(i) <= cutoff ? 0.0 : lam(i)) + nu * s2;
      c(i) = d > 0.0 ? b(i) / d : cplx{};
    }
    return CVector(V * c);
  };
  const auto nu = find_multiplier([&](double v) { return s2 * q_of(v).squaredNorm() - budget; }, opts);
  if (!nu) {
    out.ok = false;
    return out;
  }
  out.nu = *nu;
  out.q = q_of(*nu);
  return out;
}

Vec2 solve_box_qp(const Eigen::Matrix2d& H, const Vec2& g, double h, const Vec2& v_ref) {
  auto f = [&](const Vec2& v) { return 0.5 * v.dot(H * v) - g.dot(v); };
  auto inside = [&](const Vec2& v) { return std::abs(v(0)) <= h && std::abs(v(1)) <= h; };

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(H);
  const double scale = std::max(eig.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
  Vec2 stationary = v_ref;
  bool bounded = true;
  {
    // Pseudo-inverse step from v_ref keeps the minimizer nearest to v_ref.
    const Vec2 grad = g - H * v_ref;
    const Vec2 c = eig.eigenvectors().transpose() * grad;
    Vec2 step = Vec2::Zero();
    for (int i = 0; i < 2; ++i) {
      const double l = eig.eigenvalues()(i);
      if (l > 1e-12 * scale)
        step += (c(i) / l) * eig.eigenvectors().col(i);
      else if (std::abs(c(i)) > 1e-12 * std::max(1.0, grad.norm()))
        bounded = false;
    }
    stationary = v_ref + step;
  }
  if (bounded && inside(stationary)) return stationary;

  Vec2 best = v_ref.cwiseMax(-h).cwiseMin(h);
  double best_f = f(best);
  // Ties go to the candidate nearest v_ref.
  auto better = [&](const Vec2& v, double fv) {
    const double tol = 1e-14 * std::max(1.0, std::abs(best_f));
    if (fv < best_f - tol) return true;
    return fv <= best_f + tol && (v - v_ref).squaredNorm() < (best - v_ref).squaredNorm();
  };
  for (int axis = 0; axis < 2; ++axis) {
    const int other = 1 - axis;
    for (double side : {-h, h}) {
      Vec2 v;
      v(axis) = side;
      const double hii = H(other, other);
      const double lin = H(other, axis) * side - g(other);
      double t;
      if (hii > 1e-12 * scale)
        t = std::clamp(-lin / hii, -h, h);
      else if (lin > 0.0)
        t = -h;
      else if (lin < 0.0)
        t = h;
      else
        t = std::clamp(v_ref(other), -h, h);
      v(other) = t;
      const double fv = f(v);
      if (better(v, fv)) {
        best_f = fv;
        best = v;
      }
    }
  }
  return best;
}

}  // namespace marelay::pdd

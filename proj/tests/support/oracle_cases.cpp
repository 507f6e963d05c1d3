#include "oracle_cases.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "convex_oracle.hpp"
#include "marelay/pdd/subproblems.hpp"

namespace marelay::testing {

namespace {

using namespace marelay::pdd;

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen); }
  cplx cnormal() { return {normal() * std::sqrt(0.5), normal() * std::sqrt(0.5)}; }
  CVector cvec(Eigen::Index n) {
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = cnormal();
    return v;
  }
};

Smooth linear(const RVector& a, double b) {
  Quadratic q;
  q.P = RMatrix::Zero(a.size(), a.size());
  q.q = a;
  q.c = b;
  return Smooth::from(q);
}

/// Bound x_i <= hi (sign = 1) or x_i >= lo (sign = -1) as a linear constraint.
Smooth bound(int n, int i, double value, double sign) {
  RVector a = RVector::Zero(n);
  a(i) = sign;
  return linear(a, -sign * value);
}

Smooth fitted(const std::function<double(const RVector&)>& f, int n) { return Smooth::from(fit_quadratic(f, n)); }

void record(OracleReport& rep, double deviation) {
  ++rep.instances;
  rep.max_deviation = std::max(rep.max_deviation, std::isfinite(deviation) ? deviation : 1e300);
}

double max_abs(const RVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

OracleReport oracle_power_ball(int instances, std::uint64_t seed) {
  OracleReport rep{"chi1", "power-ball projection"};
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    const int n = rng.integer(1, 12);
    const CVector y = rng.cvec(n) * rng.uniform(0.1, 3.0);
    const double radius = rng.uniform(0.2, 2.0);
    const int d = 2 * n;
    auto f = fitted([&](const RVector& x) { return (complexify(x, 0, n) - y).squaredNorm(); }, d);
    auto g = fitted([&](const RVector& x) { return x.squaredNorm() - radius * radius; }, d);
    const RVector ref = barrier_minimize(f, {g}, RVector::Zero(d));
    record(rep, max_abs(realify(project_ball(y, radius)) - ref));
  }
  return rep;
}

OracleReport oracle_product_lower(int instances, std::uint64_t seed) {
  OracleReport rep{"chi3", "latency product minorant group"};
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    ProductGroupInput in;
    in.r0 = rng.uniform(-0.2, 1.2);
    in.t0 = rng.uniform(0.0, 3.0);
    in.C0 = rng.uniform(0.0, 3.0);
    in.coef = rng.uniform(-2.0, 2.0);
    in.offset = rng.uniform(-1.0, 2.0);
    in.anchor_t = rng.uniform(0.1, 3.0);
    in.anchor_C = rng.uniform(0.1, 3.0);
    const double s0 = in.anchor_t + in.anchor_C;
    auto f = fitted([&](const RVector& x) {
      return std::pow(x(0) - in.r0, 2) + std::pow(x(1) - in.t0, 2) + std::pow(x(2) - in.C0, 2);
    }, 3);
    auto g = fitted([&](const RVector& x) {
      const double p = x(1) + x(2), m = x(1) - x(2);
      return in.coef * x(0) + in.offset - (2.0 * s0 * p - s0 * s0 - m * m) / 4.0;
    }, 3);
    const double M = (std::abs(in.coef) + std::abs(in.offset) + 1.0 + s0 * s0 / 4.0) / s0 + 1.0;
    const RVector ref = barrier_minimize(f, {g, bound(3, 0, 0.0, -1.0), bound(3, 0, 1.0, 1.0)}, RVector{{0.5, M, M}});
    const auto got = solve_product_group(in);
    if (!got.ok) ++rep.failures;
    record(rep, max_abs(RVector{{got.r, got.t, got.C}} - ref));
  }
  return rep;
}

OracleReport oracle_product_upper(int instances, std::uint64_t seed) {
  OracleReport rep{"chi3", "latency product majorant group"};
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    ProductGroupInput in;
    in.upper = true;
    in.r0 = rng.uniform(-0.2, 1.2);
    in.t0 = rng.uniform(0.0, 3.0);
    in.C0 = rng.uniform(0.0, 3.0);
    in.coef = rng.uniform(-2.0, 2.0);
    in.offset = 0.5 * std::abs(in.coef) + rng.uniform(0.01, 2.0);
    in.anchor_t = rng.uniform(0.1, 3.0);
    in.anchor_C = rng.uniform(0.1, 3.0);
    const double d0 = in.anchor_t - in.anchor_C;
    auto f = fitted([&](const RVector& x) {
      return std::pow(x(0) - in.r0, 2) + std::pow(x(1) - in.t0, 2) + std::pow(x(2) - in.C0, 2);
    }, 3);
    auto g = fitted([&](const RVector& x) {
      const double p = x(1) + x(2), m = x(1) - x(2);
      return (p * p - 2.0 * d0 * m + d0 * d0) / 4.0 - in.coef * x(0) - in.offset;
    }, 3);
    const RVector ref =
        barrier_minimize(f, {g, bound(3, 0, 0.0, -1.0), bound(3, 0, 1.0, 1.0)}, RVector{{0.5, 0.5 * d0, -0.5 * d0}});
    const auto got = solve_product_group(in);
    if (!got.ok) ++rep.failures;
    record(rep, max_abs(RVector{{got.r, got.t, got.C}} - ref));
  }
  return rep;
}

OracleReport oracle_rho_group(int instances, std::uint64_t seed) {
  OracleReport rep{"chi3", "offload ratio and local-time group"};
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    const int K = rng.integer(1, 5);
    const double n = rng.integer(1, 4);
    const double rho0 = rng.uniform(-0.2, 1.2);
    const double local = rng.uniform(0.1, 3.0);
    RVector t0(K), cap(K);
    for (int k = 0; k < K; ++k) {
      t0(k) = rng.uniform(-0.5, 2.0);
      cap(k) = rng.uniform(0.05, 2.0);
    }
    const int d = K + 1;
    auto f = fitted([&](const RVector& x) { return n * std::pow(x(0) - rho0, 2) + (x.tail(K) - t0).squaredNorm(); }, d);
    RVector a = RVector::Constant(d, -1.0);
    a(0) = -local;
    std::vector<Smooth> g{linear(a, local), bound(d, 0, 0.0, -1.0), bound(d, 0, 1.0, 1.0)};
    for (int k = 0; k < K; ++k) g.push_back(bound(d, k + 1, cap(k), 1.0));
    RVector x0(d);
    x0(0) = 1.0 - std::min(0.5, 0.25 * cap.sum() / local);
    x0.tail(K) = 0.99 * cap;
    const RVector ref = barrier_minimize(f, g, x0);
    const auto got = solve_rho_group(rho0, n, t0, cap, local, true, std::nullopt);
    RVector v(d);
    v(0) = got.rho;
    v.tail(K) = got.t;
    record(rep, max_abs(v - ref));
  }
  return rep;
}

OracleReport oracle_rho_group_fixed(int instances, std::uint64_t seed) {
  OracleReport rep{"chi3", "local-time group at fixed ratio"};
  Rng rng(seed);
  while (rep.instances < instances) {
    const int K = rng.integer(1, 5);
    const double rho = rng.uniform(0.0, 1.0);
    const double local = rng.uniform(0.1, 3.0);
    RVector t0(K), cap(K);
    for (int k = 0; k < K; ++k) {
      t0(k) = rng.uniform(-0.5, 2.0);
      cap(k) = rng.uniform(0.05, 2.0);
    }
    const double need = local * (1.0 - rho);
    if (cap.sum() <= 1.05 * need) continue;
    auto f = fitted([&](const RVector& x) { return (x - t0).squaredNorm(); }, K);
    std::vector<Smooth> g{linear(RVector::Constant(K, -1.0), need)};
    for (int k = 0; k < K; ++k) g.push_back(bound(K, k, cap(k), 1.0));
    const double shrink = 1.0 - 0.5 * (1.0 - need / cap.sum());
    const RVector ref = barrier_minimize(f, g, RVector(shrink * cap));
    const auto got = solve_rho_group(0.5, 1.0, t0, cap, local, true, rho);
    record(rep, std::max(max_abs(got.t - ref), std::abs(got.rho - rho)));
  }
  return rep;
}

OracleReport oracle_edge_group(int instances, std::uint64_t seed) {
  OracleReport rep{"chi3", "edge-time group"};
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    const double r0 = rng.uniform(-0.2, 1.2);
    const double t0 = rng.uniform(-0.5, 2.0);
    const double e = rng.uniform(0.01, 3.0);
    auto f = fitted([&](const RVector& x) { return std::pow(x(0) - r0, 2) + std::pow(x(1) - t0, 2); }, 2);
    const RVector ref = barrier_minimize(
        f, {linear(RVector{{e, -1.0}}, 0.0), bound(2, 0, 0.0, -1.0), bound(2, 0, 1.0, 1.0)}, RVector{{0.5, e + 1.0}});
    const auto got = solve_edge_group(r0, t0, e);
    record(rep, max_abs(RVector{{got.r, got.t}} - ref));
  }
  return rep;
}

OracleReport oracle_rate_group(int instances, std::uint64_t seed) {
  OracleReport rep{"chi3", "rate bound C <= log2(1 + eta)"};
  Rng rng(seed);
  const double ln2 = std::numbers::ln2;
  for (int i = 0; i < instances; ++i) {
    const double C0 = rng.uniform(0.0, 4.0);
    const double w = rng.uniform(0.5, 3.0);
    const double e0 = rng.uniform(-0.5, 5.0);
    auto f = fitted([&](const RVector& x) { return w * std::pow(x(0) - C0, 2) + std::pow(x(1) - e0, 2); }, 2);
    Smooth g;
    g.value = [](const RVector& x) { return x(0) - std::log2(1.0 + x(1)); };
    g.gradient = [ln2](const RVector& x) -> RVector { return RVector{{1.0, -1.0 / (ln2 * (1.0 + x(1)))}}; };
    g.hessian = [ln2](const RVector& x) -> RMatrix {
      RMatrix h = RMatrix::Zero(2, 2);
      h(1, 1) = 1.0 / (ln2 * (1.0 + x(1)) * (1.0 + x(1)));
      return h;
    };
    const double eta_start = std::max(e0, 0.0) + 1.0;
    const RVector ref =
        barrier_minimize(f, {g, linear(RVector{{0.0, -1.0}}, -1.0)}, RVector{{std::log2(1.0 + eta_start) - 1.0, eta_start}});
    const auto got = solve_rate_group(C0, w, e0);
    if (!got.ok) ++rep.failures;
    record(rep, max_abs(RVector{{got.C, got.eta}} - ref));
  }
  return rep;
}

OracleReport oracle_sum_group(int instances, std::uint64_t seed) {
  OracleReport rep{"barchi1", "latency sum group with floors"};
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    const int K = rng.integer(1, 6);
    const double s0 = rng.uniform(-1.0, 4.0);
    const double ws = rng.integer(1, 3);
    const double kappa = std::pow(10.0, rng.uniform(-2.0, 0.5));
    RVector x0(K), lower(K);
    for (int k = 0; k < K; ++k) {
      x0(k) = rng.uniform(-1.0, 2.0);
      lower(k) = rng.integer(0, 1) ? rng.uniform(0.0, 1.0) : 0.0;
    }
    const int d = K + 1;
    auto f = fitted([&](const RVector& x) {
      return x(0) + (ws * std::pow(x(0) - s0, 2) + (x.tail(K) - x0).squaredNorm()) / (2.0 * kappa);
    }, d);
    RVector a = RVector::Constant(d, 1.0);
    a(0) = -1.0;
    std::vector<Smooth> g{linear(a, 0.0)};
    for (int k = 0; k < K; ++k) g.push_back(bound(d, k + 1, lower(k), -1.0));
    RVector start(d);
    start.tail(K) = lower.array() + 1.0;
    start(0) = start.tail(K).sum() + 1.0;
    const RVector ref = barrier_minimize(f, g, start);
    const auto got = solve_sum_group(s0, ws, x0, kappa, lower);
    RVector v(d);
    v(0) = got.s;
    v.tail(K) = got.x;
    record(rep, max_abs(v - ref));
  }
  return rep;
}

OracleReport oracle_halfspace(int instances, std::uint64_t seed) {
  OracleReport rep{"chi4", "spacing halfspace projection"};
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    const Vec2 y(rng.normal(), rng.normal());
    Vec2 n(rng.normal(), rng.normal());
    n /= n.norm();
    const double offset = rng.uniform(-1.0, 2.0);
    auto f = fitted([&](const RVector& x) { return (Vec2(x(0), x(1)) - y).squaredNorm(); }, 2);
    const Vec2 start = y + (std::max(0.0, offset - n.dot(y)) + 1.0) * n;
    const RVector ref = barrier_minimize(f, {linear(RVector(-n), offset)}, RVector(start));
    record(rep, max_abs(RVector(project_halfspace(y, n, offset)) - ref));
  }
  return rep;
}

OracleReport oracle_uplink_sinr(int instances, std::uint64_t seed) {
  OracleReport rep{"chi5", "uplink SINR block"};
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    UplinkSinrInput in;
    const int K = rng.integer(1, 4);
    const int N = rng.integer(1, 4);
    in.k = rng.integer(0, K - 1);
    for (int j = 0; j < K; ++j) in.c.push_back(rng.cvec(N));
    in.kl = rng.cvec(K) * 0.3;
    in.z = rng.cvec(N).transpose();
    in.e0 = rng.uniform(0.0, 3.0);
    in.s0 = rng.cnormal() + cplx(0.1, 0.0);
    in.eta0 = rng.uniform(0.2, 3.0);
    in.s2 = rng.uniform(0.1, 2.0);
    in.noise = rng.uniform(0.0, 1.0);
    const int d = 2 * K + 2 * N + 1;
    auto unpack = [&](const RVector& x, CVector& s, CRowVector& row, double& eta) {
      s = complexify(x, 0, K);
      row = complexify(x, 2 * K, N).transpose();
      eta = x(d - 1);
    };
    auto f = fitted([&](const RVector& x) {
      CVector s;
      CRowVector row;
      double eta;
      unpack(x, s, row, eta);
      double v = std::pow(eta - in.e0, 2) + (row - in.z).squaredNorm();
      for (int j = 0; j < K; ++j) v += std::norm(s(j) - (row * in.c[j])(0) + in.kl(j));
      return v;
    }, d);
    auto g = fitted([&](const RVector& x) {
      CVector s;
      CRowVector row;
      double eta;
      unpack(x, s, row, eta);
      double v = in.s2 * row.squaredNorm() + in.noise;
      for (int j = 0; j < K; ++j)
        if (j != in.k) v += std::norm(s(j));
      return v - (2.0 * (std::conj(in.s0) * s(in.k)).real() / in.eta0 - std::norm(in.s0) * eta / (in.eta0 * in.eta0));
    }, d);
    RVector start = RVector::Zero(d);
    const double M = (in.noise + 1.0) * in.eta0 / (2.0 * std::norm(in.s0)) + 1.0;
    start(in.k) = M * in.s0.real();
    start(K + in.k) = M * in.s0.imag();
    const RVector ref = barrier_minimize(f, {g}, start);
    const auto got = solve_uplink_sinr_block(in);
    if (!got.ok) ++rep.failures;
    RVector v(d);
    v.head(2 * K) = realify(got.s);
    v.segment(2 * K, 2 * N) = realify(got.x.transpose());
    v(d - 1) = got.eta;
    record(rep, max_abs(v - ref));
  }
  return rep;
}

OracleReport oracle_box_qp(int instances, std::uint64_t seed) {
  OracleReport rep{"barchi2", "antenna position box QP"};
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    Eigen::Matrix2d A;
    A << rng.normal(), rng.normal(), rng.normal(), rng.normal();
    const Eigen::Matrix2d H = A.transpose() * A + rng.uniform(0.05, 1.0) * Eigen::Matrix2d::Identity();
    const Vec2 gvec = 3.0 * Vec2(rng.normal(), rng.normal());
    const double h = rng.uniform(0.5, 2.0);
    auto f = fitted([&](const RVector& x) {
      const Vec2 v(x(0), x(1));
      return 0.5 * v.dot(H * v) - gvec.dot(v);
    }, 2);
    std::vector<Smooth> g;
    for (int ax = 0; ax < 2; ++ax) {
      g.push_back(bound(2, ax, h, 1.0));
      g.push_back(bound(2, ax, -h, -1.0));
    }
    const RVector ref = barrier_minimize(f, g, RVector::Zero(2));
    record(rep, max_abs(RVector(solve_box_qp(H, gvec, h, Vec2::Zero())) - ref));
  }
  return rep;
}

OracleReport oracle_combiner(int instances, std::uint64_t seed) {
  OracleReport rep{"barbarchi2", "BS combiner least squares in a ball"};
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    const int N = rng.integer(1, 6);
    const int L = N + rng.integer(0, 4);
    CMatrix B(L, N);
    for (int c = 0; c < N; ++c) B.col(c) = rng.cvec(L);
    const CVector y = rng.cvec(L);
    const double s2 = rng.uniform(0.1, 2.0);
    const CVector q_ls = B.colPivHouseholderQr().solve(y);
    const double budget = s2 * q_ls.squaredNorm() * rng.uniform(0.2, 1.5);
    const int d = 2 * N;
    auto f = fitted([&](const RVector& x) { return (B * complexify(x, 0, N) - y).squaredNorm(); }, d);
    auto g = fitted([&](const RVector& x) { return s2 * x.squaredNorm() - budget; }, d);
    const RVector ref = barrier_minimize(f, {g}, RVector::Zero(d));
    const auto got = solve_ball_least_squares(B, y, s2, budget);
    if (!got.ok) ++rep.failures;
    record(rep, max_abs(realify(got.q) - ref));
  }
  return rep;
}

OracleReport oracle_d2d_sinr(int instances, std::uint64_t seed) {
  OracleReport rep{"barbarchi4", "D2D SINR block"};
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    D2dSinrInput in;
    const int K = rng.integer(1, 4);
    const int N = rng.integer(1, 4);
    in.k = rng.integer(0, K - 1);
    for (int j = 0; j < K; ++j) in.y.push_back(rng.cvec(N));
    in.e0 = rng.uniform(0.0, 3.0);
    in.o0 = rng.cvec(N) + CVector::Constant(N, cplx(0.1, 0.0));
    in.eta0 = rng.uniform(0.2, 3.0);
    in.s2 = rng.uniform(0.05, 1.0);
    const int d = 2 * K * N + 1;
    auto unpack = [&](const RVector& x) {
      std::vector<CVector> o;
      for (int j = 0; j < K; ++j) o.push_back(complexify(x, 2 * j * N, N));
      return o;
    };
    auto f = fitted([&](const RVector& x) {
      const auto o = unpack(x);
      double v = std::pow(x(d - 1) - in.e0, 2);
      for (int j = 0; j < K; ++j) v += (o[j] - in.y[j]).squaredNorm();
      return v;
    }, d);
    auto g = fitted([&](const RVector& x) {
      const auto o = unpack(x);
      double v = in.s2;
      for (int j = 0; j < K; ++j)
        if (j != in.k) v += o[j].squaredNorm();
      const double eta = x(d - 1);
      return v - (2.0 * in.o0.dot(o[in.k]).real() / in.eta0 - in.o0.squaredNorm() * eta / (in.eta0 * in.eta0));
    }, d);
    RVector start = RVector::Zero(d);
    const double M = (in.s2 + 1.0) * in.eta0 / (2.0 * in.o0.squaredNorm()) + 1.0;
    start.segment(2 * in.k * N, 2 * N) = realify(M * in.o0);
    const RVector ref = barrier_minimize(f, {g}, start);
    const auto got = solve_d2d_sinr_block(in);
    if (!got.ok) ++rep.failures;
    RVector v(d);
    for (int j = 0; j < K; ++j) v.segment(2 * j * N, 2 * N) = realify(got.o[j]);
    v(d - 1) = got.eta;
    record(rep, max_abs(v - ref));
  }
  return rep;
}

std::vector<OracleReport> run_all_oracles(int instances, std::uint64_t seed) {
  return {
      oracle_power_ball(instances, seed + 1),   oracle_product_lower(instances, seed + 2),
      oracle_product_upper(instances, seed + 3), oracle_rho_group(instances, seed + 4),
      oracle_rho_group_fixed(instances, seed + 5), oracle_edge_group(instances, seed + 6),
      oracle_rate_group(instances, seed + 7),   oracle_sum_group(instances, seed + 8),
      oracle_halfspace(instances, seed + 9),    oracle_uplink_sinr(instances, seed + 10),
      oracle_box_qp(instances, seed + 11),      oracle_combiner(instances, seed + 12),
      oracle_d2d_sinr(instances, seed + 13),
  };
}

}  // namespace marelay::testing

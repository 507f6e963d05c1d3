#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "marelay/scenario.hpp"

using namespace marelay;

TEST_CASE("dbm_to_watts") {
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3).epsilon(1e-15));
  CHECK(std::abs(dbm_to_watts(15.0) - 0.03162) < 1e-5);
  CHECK(std::abs(dbm_to_watts(15.0) - SystemConfig{}.P_k_w) < 1e-15);
}

TEST_CASE("build_scenario is a pure function of (config, seed)") {
  SystemConfig c = testing::reference_config();
  c.K = 2;
  const auto a = build_scenario(c, 7);
  const auto b = build_scenario(c, 7);
  CHECK(a.ue_distances == b.ue_distances);
  CHECK(a.d2d_distances == b.d2d_distances);
  for (int k = 0; k < 2; ++k) {
    CHECK(a.gains.uplink[k] == b.gains.uplink[k]);
    CHECK(a.geometry.ue_uplink[k].directions == b.geometry.ue_uplink[k].directions);
    for (int j = 0; j < 2; ++j) CHECK(a.gains.d2d[k][j] == b.gains.d2d[k][j]);
  }
  CHECK(a.gains.relay_bs == b.gains.relay_bs);
  CHECK(a.geometry.bs.elevation == b.geometry.bs.elevation);
  const auto other = build_scenario(c, 8);
  CHECK(other.gains.relay_bs != a.gains.relay_bs);
}

TEST_CASE("path geometry shapes and angle ranges") {
  const SystemConfig c = testing::reference_config();
  const auto inst = build_scenario(c, 3);
  const auto& g = inst.geometry;
  REQUIRE(g.ue_uplink.size() == 4);
  CHECK(g.ue_uplink[0].size() == c.L);
  CHECK(g.relay_rx.size() == c.L);
  CHECK(g.relay_tx.size() == c.L_tilde);
  CHECK(g.bs.size() == c.L_tilde);
  CHECK(g.d2d_rx[1].size() == c.L_bar);
  CHECK(g.d2d_tx[2].size() == c.L_bar);
  for (const PathSet* p : {&g.relay_rx, &g.relay_tx, &g.bs, &g.ue_uplink[0], &g.d2d_rx[3]}) {
    for (int l = 0; l < p->size(); ++l) {
      CHECK(p->elevation(l) >= 0.0);
      CHECK(p->elevation(l) <= kPi);
      CHECK(p->azimuth(l) >= 0.0);
      CHECK(p->azimuth(l) <= kPi);
      const double ex = std::cos(p->elevation(l)) * std::cos(p->azimuth(l));
      const double ey = std::cos(p->elevation(l)) * std::sin(p->azimuth(l));
      CHECK(p->directions(0, l) == ex);
      CHECK(p->directions(1, l) == ey);
      CHECK(p->directions.col(l).norm() <= 1.0 + 1e-15);
    }
  }
  CHECK(g.relay_rx.height_m == c.h_r_m);
  CHECK(g.bs.height_m == c.h_b_m);
  CHECK(g.ue_uplink[0].height_m == 0.0);
  for (int k = 0; k < c.K; ++k) {
    CHECK(inst.ue_distances(k) > 0.0);
    CHECK(inst.ue_distances(k) <= c.ue_ring_radius_m);
  }
}

TEST_CASE("gain normalization: E[tr(Sigma^H Sigma)] = g0 d^-exponent") {
  SystemConfig c = testing::reference_config();
  c.K = 1;
  c.g0 = 1.0;
  c.path_loss_exp = 2.0;
  c.ue_distance_m = 1.0;
  double up = 0.0;
  const int draws = 10000;
  for (int s = 0; s < draws; ++s) up += build_scenario(c, static_cast<std::uint64_t>(s)).gains.uplink[0].squaredNorm();
  CHECK(std::abs(up / draws - 1.0) < 0.03);

  c.ue_distance_m = 4.0;
  double far = 0.0, rb = 0.0;
  for (int s = 0; s < draws; ++s) {
    const auto inst = build_scenario(c, static_cast<std::uint64_t>(s));
    far += inst.gains.uplink[0].squaredNorm();
    rb += inst.gains.relay_bs.squaredNorm();
  }
  CHECK(std::abs(far / draws / large_scale_gain(c, 4.0) - 1.0) < 0.03);
  CHECK(std::abs(rb / draws / large_scale_gain(c, c.relay_bs_distance_m) - 1.0) < 0.03);
}

TEST_CASE("ue_distance pins every UE1-relay distance") {
  SystemConfig c = testing::reference_config();
  c.ue_distance_m = 42.0;
  const auto inst = build_scenario(c, 11);
  for (int k = 0; k < c.K; ++k) CHECK(inst.ue_distances(k) == 42.0);
}

TEST_CASE("config validation") {
  SystemConfig c = testing::reference_config();
  CHECK_NOTHROW(c.validate());
  c.N_u = 2;
  c.N_r = c.N_t = c.N_b = 1;
  c.region_side_m = 0.5 * c.D_min_m;
  CHECK_THROWS_AS(build_scenario(c, 1), std::invalid_argument);
  c = testing::reference_config();
  c.alpha_comp = 1.5;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = testing::reference_config();
  c.K = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = testing::reference_config();
  c.sigma2_d = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("init_positions: 2x2 grid, single antenna at the center") {
  SystemConfig c = testing::reference_config();
  const double lambda = c.wavelength_m;
  c.N_u = c.N_r = c.N_t = c.N_b = 4;
  c.region_side_m = 4.0 * lambda;
  c.D_min_m = 0.5 * lambda;
  const auto p = init_positions(c, 5);
  CHECK(p.ue_uplink[0].cols() == 4);
  CHECK(min_pairwise_distance(p.ue_uplink[0]) >= 0.5 * lambda);

  c.N_u = 1;
  const auto q = init_positions(c, 5);
  CHECK(q.d2d_tx[0].cols() == 1);
  CHECK(q.d2d_tx[0].col(0).norm() == 0.0);
}

TEST_CASE("init_positions satisfies region and spacing on 100 seeds") {
  SystemConfig c = testing::reference_config();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto p = init_positions(c, seed);
    for (int a = 0; a < array_count(c.K); ++a) {
      const Coords& v = p.array(a);
      CHECK(v.cwiseAbs().maxCoeff() <= p.region_half_side);
      if (v.cols() > 1) CHECK(min_pairwise_distance(v) >= c.D_min_m);
    }
  }
  CHECK(init_positions(c, 9) == init_positions(c, 9));
}

TEST_CASE("tight region still admits the grid") {
  SystemConfig c = testing::reference_config();
  c.N_b = 9;
  c.region_side_m = 2.0 * c.D_min_m;
  CHECK_NOTHROW(c.validate());
  const auto p = init_positions(c, 1);
  CHECK(min_pairwise_distance(p.bs) >= c.D_min_m * (1.0 - 1e-12));
}

TEST_CASE("array index round trip") {
  for (int K = 1; K <= 5; ++K)
    for (int i = 0; i < array_count(K); ++i) CHECK(array_index(array_ref(i, K), K) == i);
  CHECK_THROWS_AS(array_ref(array_count(3), 3), std::out_of_range);
}

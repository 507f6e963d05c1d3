#include "marelay/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace marelay {

double propagation_phase(const Vec2& pos, const Vec2& direction, double height_m, double elevation) {
  return direction.dot(pos) + height_m * std::sin(elevation);
}

CVector field_response_vector(const Vec2& pos, const PathSet& paths, double wavelength_m) {
  const double scale = kTwoPi / wavelength_m;
  CVector a(paths.size());
  for (int l = 0; l < paths.size(); ++l) {
    const double kappa = propagation_phase(pos, paths.directions.col(l), paths.height_m, paths.elevation(l));
    a(l) = std::polar(1.0, scale * kappa);
  }
  return a;
}

FieldResponseMatrix field_response_matrix(const Coords& positions, const PathSet& paths, double wavelength_m) {
  CMatrix A(paths.size(), positions.cols());
  for (Eigen::Index m = 0; m < positions.cols(); ++m)
    A.col(m) = field_response_vector(positions.col(m), paths, wavelength_m);
  return A;
}

CMatrix assemble_channel(const CMatrix& A_rx, const CVector& sigma, const CMatrix& A_tx) {
  if (A_rx.rows() != sigma.size() || A_tx.rows() != sigma.size())
    throw std::invalid_argument("assemble_channel: path counts of A_rx, Sigma and A_tx differ");
  return A_rx.adjoint() * sigma.asDiagonal() * A_tx;
}

ChannelSet build_channels(const ScenarioInstance& instance, const MAPositions& positions) {
  const auto& geo = instance.geometry;
  const double lambda = instance.config.wavelength_m;
  const int K = instance.config.K;
  ChannelSet ch;
  const CMatrix A_rr = field_response_matrix(positions.relay_rx, geo.relay_rx, lambda);
  for (int k = 0; k < K; ++k) {
    const CMatrix A_k = field_response_matrix(positions.ue_uplink[k], geo.ue_uplink[k], lambda);
    ch.H.push_back(assemble_channel(A_rr, instance.gains.uplink[k], A_k));
  }
  ch.G = assemble_channel(field_response_matrix(positions.bs, geo.bs, lambda), instance.gains.relay_bs,
                          field_response_matrix(positions.relay_tx, geo.relay_tx, lambda));
  std::vector<CMatrix> A_tx(K), A_rx(K);
  for (int k = 0; k < K; ++k) {
    A_tx[k] = field_response_matrix(positions.d2d_tx[k], geo.d2d_tx[k], lambda);
    A_rx[k] = field_response_matrix(positions.d2d_rx[k], geo.d2d_rx[k], lambda);
  }
  ch.H_d2d.assign(K, std::vector<CMatrix>(K));
  for (int k = 0; k < K; ++k)
    for (int kp = 0; kp < K; ++kp) ch.H_d2d[k][kp] = assemble_channel(A_rx[k], instance.gains.d2d[k][kp], A_tx[kp]);
  return ch;
}

}  // namespace marelay

#pragma once

#include <vector>

#include "marelay/positions.hpp"
#include "marelay/scenario.hpp"
#include "marelay/types.hpp"

namespace marelay {

/// Path-length difference in meters of a planar antenna at pos (phase sign is +j).
double propagation_phase(const Vec2& pos, const Vec2& direction, double height_m, double elevation);

/// exp(j 2pi/lambda kappa_l(pos)) for every path l of the set.
CVector field_response_vector(const Vec2& pos, const PathSet& paths, double wavelength_m);

/// L x N matrix whose column m is field_response_vector(positions.col(m)).
using FieldResponseMatrix = CMatrix;
FieldResponseMatrix field_response_matrix(const Coords& positions, const PathSet& paths, double wavelength_m);

/// A_rx^H diag(sigma) A_tx. Throws std::invalid_argument on mismatched path counts.
CMatrix assemble_channel(const CMatrix& A_rx, const CVector& sigma, const CMatrix& A_tx);

struct ChannelSet {
  std::vector<CMatrix> H;                  ///< UE1_k to relay, N_r x N_u
  CMatrix G;                               ///< relay to BS, N_b x N_t
  std::vector<std::vector<CMatrix>> H_d2d; ///< [rx k][tx k'], N_u x N_u
};

ChannelSet build_channels(const ScenarioInstance& instance, const MAPositions& positions);

}  // namespace marelay

#pragma once

#include <utility>
#include <vector>

#include "marelay/types.hpp"

namespace marelay {

/// The six antenna-set families. UE families have one array per pair index k.
enum class ArrayKind { ue_uplink, d2d_rx, d2d_tx, relay_rx, relay_tx, bs };

struct ArrayRef {
  ArrayKind kind;
  int k = 0;
};

/// Flat index used wherever all arrays are visited uniformly:
/// [ue_uplink 0..K-1, d2d_rx 0..K-1, d2d_tx 0..K-1, relay_rx, relay_tx, bs].
int array_index(ArrayRef ref, int K);
ArrayRef array_ref(int index, int K);
inline int array_count(int K) { return 3 * K + 3; }

/// Movable-antenna coordinates in meters. Every region is the square
/// [-h, h]^2 in its own local frame with h = region_half_side.
struct MAPositions {
  std::vector<Coords> ue_uplink;  ///< t_k, 2 x N_u
  std::vector<Coords> d2d_rx;     ///< t-bar_k, 2 x N_u
  std::vector<Coords> d2d_tx;     ///< t-tilde_k, 2 x N_u
  Coords relay_rx;                ///< u_r, 2 x N_r
  Coords relay_tx;                ///< u_t, 2 x N_t
  Coords bs;                      ///< r_b, 2 x N_b
  double region_half_side = 0.0;

  int K() const { return static_cast<int>(ue_uplink.size()); }
  Coords& array(int index);
  const Coords& array(int index) const;

  bool operator==(const MAPositions&) const = default;
};

/// Unordered antenna pairs (o1 < o2) of an n-antenna array, in lexicographic order.
std::vector<std::pair<int, int>> antenna_pairs(int n);

/// Smallest pairwise distance within one array; +inf for a single antenna.
double min_pairwise_distance(const Coords& c);

}  // namespace marelay

#pragma once

#include <optional>
#include <vector>

#include "affsym/grid.hpp"

namespace affsym {

/// How to Steiner-symmetrize along a given direction: axis directions act on
/// grid lines directly, anything else goes through rotate / symmetrize /
/// rotate back.
struct SteinerPlan {
  int dim = 2;
  Vec3 direction{};
  Mat rotation{};  // orthogonal, maps direction to the last axis
  double resample_tolerance = 0.02;

  static SteinerPlan for_direction(int dim, const Vec3& direction,
                                   double resample_tolerance = 0.02);

  /// Axis index when direction is +-e_k (within 1e-12), nullopt otherwise.
  std::optional<int> axis() const;
};

/// Symmetric decreasing rearrangement of one grid line about its center.
/// Sorted placement: largest value at the center, subsequent pairs placed
/// right then left. Equimeasurable with the input by construction.
std::vector<double> steiner_line(const std::vector<double>& samples);

GridFunction steiner_rearrange(const GridFunction& f, const SteinerPlan& plan);

/// Radially symmetric decreasing function about the box center whose level
/// sets match the input's level-set volumes (monotone level-volume table with
/// linear interpolation).
GridFunction schwarz_symmetrize(const GridFunction& f);

struct SteinerIterationResult {
  GridFunction result;
  std::vector<double> distances;  // L1 distance to the Schwarz symmetrand
  bool converged = false;
};

SteinerIterationResult iterate_steiner(const GridFunction& f,
                                       const std::vector<Vec3>& directions,
                                       double stop_tol, int max_iters);

}  // namespace affsym

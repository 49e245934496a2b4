#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "affsym/linalg.hpp"
#include "affsym/orlicz.hpp"

namespace affsym {

/// Axis-aligned box [origin, origin + spacing*counts) sampled at cell centers:
/// node (i0,...,i_{d-1}) sits at origin_k + (i_k + 1/2) spacing_k. With this
/// convention the stored measure |Omega| = prod(spacing_k * counts_k) is the
/// exact box volume and nodewise sums are midpoint-rule quadratures.
struct BoxDomain {
  int dim = 2;
  Vec3 origin{};
  Vec3 spacing{};
  std::array<int, 3> counts{1, 1, 1};

  static BoxDomain centered_square(int dim, double half_extent, int cells);

  std::size_t size() const;
  double cell_volume() const;
  double volume() const;    // |Omega|
  double diameter() const;  // box diagonal
  Vec3 center() const;
  Vec3 node_position(const std::array<int, 3>& idx) const;
  std::size_t flat_index(const std::array<int, 3>& idx) const;

  bool operator==(const BoxDomain& o) const;
};

/// Nonnegative sampled function vanishing on the outermost node layer
/// (discrete stand-in for a W_0 function). Immutable by convention: all
/// operations return new objects.
struct GridFunction {
  BoxDomain domain;
  std::vector<double> values;  // row-major, last axis fastest

  GridFunction(BoxDomain dom, std::vector<double> vals);

  double operator[](std::size_t i) const { return values[i]; }
  double max_value() const;
};

/// Per-node gradient, one component array per axis.
struct GradientField {
  BoxDomain domain;
  std::array<std::vector<double>, 3> comp;

  Vec3 at(std::size_t i) const {
    return {comp[0].empty() ? 0.0 : comp[0][i], comp[1].empty() ? 0.0 : comp[1][i],
            comp[2].empty() ? 0.0 : comp[2][i]};
  }
  double max_magnitude() const;
};

struct LevelSetSummary {
  double level = 0;
  double volume = 0;
  bool defined = false;  // false when the level set is empty
  Vec3 centroid{};
  Mat second_moment{};  // covariance of the uniform measure on the set
};

/// Central differences at interior nodes, second-order one-sided at the
/// boundary layer. Exact for affine and (interior) quadratic samples.
GradientField gradient(const GridFunction& f);

std::vector<double> directional_derivative(const GridFunction& f, const Vec3& u);

/// L^1 measure of {samples > t} along one grid line.
double distribution_function(const std::vector<double>& samples, double spacing,
                             double t);

LevelSetSummary level_set_summary(const GridFunction& f, double t);

/// Midpoint-rule sum of Phi(f(x)) over the box.
double integral_Phi(const GridFunction& f, const OrliczFunction& phi);

/// Midpoint-rule integral of f itself.
double integral(const GridFunction& f);

double l1_distance(const GridFunction& f, const GridFunction& g);

/// Builds g(x) = f(Ax + x0) by multilinear interpolation, zero outside the
/// original support. Requires |det A - 1| <= 1e-9 and the support image to
/// stay inside the target's interior (away from the zero boundary layer).
GridFunction resample_affine(const GridFunction& f, const Mat& A, const Vec3& x0,
                             const BoxDomain& target);

/// Text format: one JSON header line, then whitespace-separated values with
/// 17 significant digits, row-major (last axis fastest).
void write_grid(const std::string& path, const GridFunction& f);
GridFunction read_grid(const std::string& path);

}  // namespace affsym

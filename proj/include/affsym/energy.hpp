#pragma once

#include <stdexcept>
#include <utility>

#include "affsym/grid.hpp"
#include "affsym/orlicz.hpp"
#include "affsym/starbody.hpp"

namespace affsym {

/// Thrown when every gradient on the grid is orthogonal to the requested
/// direction, so the membership integral vanishes identically.
struct DegenerateDirectionError : std::domain_error {
  Vec3 direction;
  explicit DegenerateDirectionError(const Vec3& v)
      : std::domain_error("energy: all gradients orthogonal to direction"),
        direction(v) {}
};

struct EnergyResult {
  StarBody ball;
  double ball_volume = 0;
  double energy = 0;  // ball_volume^(-1/dim)
  std::pair<double, double> norm_bounds{0, 0};
  int quadrature_size = 0;
};

/// Precomputes the gradient field and the norm bracket once, then solves the
/// Luxemburg norm per direction. For the positively homogeneous families the
/// one-sided p-th moments are computed once per direction, which makes each
/// bisection step O(1); the piecewise-affine family re-evaluates the full
/// membership integral.
class NormSolver {
 public:
  NormSolver(const GridFunction& f, const OrliczFunction& phi);

  /// The unique lambda > 0 with (1/|Omega|) sum phi(v.grad f / lambda) = 1.
  double norm(const Vec3& v) const;

  /// Membership integral at a given scale, for round-trip checks.
  double membership(const Vec3& v, double lambda) const;

  /// Lemma-style bracket for unit directions: [integral f / (c |Omega| diam),
  /// max |grad f| / c].
  std::pair<double, double> bounds() const { return bounds_; }

 private:
  const OrliczFunction& phi_;
  GradientField grad_;
  double cell_volume_;
  double omega_volume_;
  std::pair<double, double> bounds_;
};

double luxemburg_norm(const GridFunction& f, const OrliczFunction& phi,
                      const Vec3& v);

std::pair<double, double> lemma1d_bounds(const GridFunction& f,
                                            const OrliczFunction& phi);

StarBody orlicz_ball(const GridFunction& f, const OrliczFunction& phi,
                     int quadrature_size);

EnergyResult affine_energy(const GridFunction& f, const OrliczFunction& phi,
                           int quadrature_size);

}  // namespace affsym

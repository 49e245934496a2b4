#include "affsym/energy.hpp"

#include <cmath>
#include <functional>

namespace affsym {

namespace {

double pow_pos(double t, double p) {
  if (p == 2.0) return t * t;
  if (p == 3.0) return t * t * t;
  return std::pow(t, p);
}

}  // namespace

NormSolver::NormSolver(const GridFunction& f, const OrliczFunction& phi)
    : phi_(phi),
      grad_(gradient(f)),
      cell_volume_(f.domain.cell_volume()),
      omega_volume_(f.domain.volume()) {
  double c = phi.critical_scale();
  double lower = integral(f) / (c * omega_volume_ * f.domain.diameter());
  double upper = grad_.max_magnitude() / c;
  if (upper <= 0.0)
    throw std::domain_error("energy: function has identically zero gradient");
  bounds_ = {lower, upper};
}

double NormSolver::membership(const Vec3& v, double lambda) const {
  int dim = grad_.domain.dim;
  std::size_t n = grad_.comp[0].size();
  const double* gx = grad_.comp[0].data();
  const double* gy = grad_.comp[1].data();
  const double* gz = dim > 2 ? grad_.comp[2].data() : nullptr;
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double g = v[0] * gx[i] + v[1] * gy[i];
    if (gz) g += v[2] * gz[i];
    s += phi_.phi(g / lambda);
  }
  return s * cell_volume_ / omega_volume_;
}

double NormSolver::norm(const Vec3& v) const {
  int dim = grad_.domain.dim;
  double vnorm = norm2(v, dim);
  if (vnorm == 0.0) throw std::domain_error("energy: direction must be nonzero");

  std::size_t n = grad_.comp[0].size();
  const double* gx = grad_.comp[0].data();
  const double* gy = grad_.comp[1].data();
  const double* gz = dim > 2 ? grad_.comp[2].data() : nullptr;

  auto degenerate = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      double g = v[0] * gx[i] + v[1] * gy[i] + (gz ? v[2] * gz[i] : 0.0);
      if (g != 0.0) return false;
    }
    return true;
  };

  // Membership integral as a function of lambda. Homogeneous families admit
  // one-sided p-th moments computed once, so each evaluation is O(1).
  std::function<double(double)> memb;
  if (auto p = phi_.homogeneity_degree()) {
    auto [cp, cm] = phi_.homogeneous_coefficients();
    double splus = 0, sminus = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double g = v[0] * gx[i] + v[1] * gy[i];
      if (gz) g += v[2] * gz[i];
      if (g > 0.0)
        splus += pow_pos(g, *p);
      else if (g < 0.0)
        sminus += pow_pos(-g, *p);
    }
    if (splus == 0.0 && sminus == 0.0) throw DegenerateDirectionError(v);
    double numer = (cp * splus + cm * sminus) * cell_volume_ / omega_volume_;
    if (numer == 0.0) throw DegenerateDirectionError(v);
    double pp = *p;
    memb = [numer, pp](double lambda) { return numer / pow_pos(lambda, pp); };
  } else {
    if (degenerate()) throw DegenerateDirectionError(v);
    memb = [this, &v](double lambda) { return membership(v, lambda); };
  }

  // Lemma bracket scaled to |v| by homogeneity of the norm.
  double lo = bounds_.first * vnorm;
  double hi = bounds_.second * vnorm;
  if (lo <= 0.0) lo = 1e-300;
  int guard = 0;
  while (memb(hi) > 1.0) {
    hi *= 2.0;
    if (++guard > 2048) throw std::domain_error("energy: bracket expansion failed");
  }
  while (memb(lo) < 1.0) {
    lo *= 0.5;
    if (++guard > 4096) throw std::domain_error("energy: bracket expansion failed");
  }
  while (hi - lo > 1e-10 * hi) {
    double mid = 0.5 * (lo + hi);
    (memb(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double luxemburg_norm(const GridFunction& f, const OrliczFunction& phi,
                      const Vec3& v) {
  return NormSolver(f, phi).norm(v);
}

std::pair<double, double> lemma1d_bounds(const GridFunction& f,
                                            const OrliczFunction& phi) {
  return NormSolver(f, phi).bounds();
}

StarBody orlicz_ball(const GridFunction& f, const OrliczFunction& phi,
                     int quadrature_size) {
  NormSolver solver(f, phi);
  SphereGrid grid = f.domain.dim == 2
                        ? SphereGrid::circle(quadrature_size)
                        : SphereGrid::sphere(quadrature_size,
                                             2 * quadrature_size);
  std::vector<double> radii(grid.size());
  for (int i = 0; i < grid.size(); ++i)
    radii[i] = 1.0 / solver.norm(grid.direction(i));
  return StarBody(grid, std::move(radii));
}

EnergyResult affine_energy(const GridFunction& f, const OrliczFunction& phi,
                           int quadrature_size) {
  StarBody ball = orlicz_ball(f, phi, quadrature_size);
  double vol = volume(ball);
  EnergyResult res{std::move(ball), vol,
                   std::pow(vol, -1.0 / f.domain.dim),
                   lemma1d_bounds(f, phi), quadrature_size};
  return res;
}

}  // namespace affsym

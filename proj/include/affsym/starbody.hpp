#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "affsym/linalg.hpp"

namespace affsym {

/// Fixed quadrature set on S^{n-1}. 2-D: m uniform angles with weight 2*pi/m.
/// 3-D: latitude-longitude product grid; latitude weights are band-integrated
/// (cos theta_- minus cos theta_+) so the weights sum to the exact sphere
/// measure.
struct SphereGrid {
  int dim = 2;
  int n_theta = 0;  // 2-D direction count, or 3-D latitude count
  int n_phi = 0;    // 3-D longitude count (0 in 2-D)

  static SphereGrid circle(int m);
  static SphereGrid sphere(int n_lat, int n_lon);

  int size() const { return dim == 2 ? n_theta : n_theta * n_phi; }
  Vec3 direction(int i) const;
  double weight(int i) const;
  double total_weight() const;  // 2*pi or 4*pi, exact

  bool operator==(const SphereGrid& o) const = default;
};

/// Star-shaped body with the origin interior, stored by its radial function
/// on a SphereGrid.
struct StarBody {
  SphereGrid grid;
  std::vector<double> radii;

  StarBody(SphereGrid g, std::vector<double> r);

  static StarBody ball(const SphereGrid& g, double radius);
  /// rho(u) = 1 / sqrt(u' Q u) for symmetric positive definite Q: the
  /// ellipsoid {x : x' Q x <= 1}.
  static StarBody ellipsoid(const SphereGrid& g, const Mat& Q);

  /// Interpolated radial function at an arbitrary unit direction.
  double radial(const Vec3& u) const;
  double max_radius() const;
};

/// Minkowski gauge |x| / rho(x/|x|); gauge(0) = 0.
double gauge(const StarBody& K, const Vec3& x);

/// h(K; u) over the quadrature directions. Exact up to the grid resolution
/// for convex radial data.
double support(const StarBody& K, const Vec3& u);

/// Polar body: radial function 1 / h(K; u). Caller asserts convexity.
StarBody polar(const StarBody& K);

/// (1/n) sum_i w_i rho_i^n.
double volume(const StarBody& K);

double hausdorff(const StarBody& K, const StarBody& L);

/// {t : gauge(base + t u) <= 1} when nonempty; endpoints refined by bisection.
std::optional<std::pair<double, double>> chord_along(const StarBody& K,
                                                     const Vec3& base,
                                                     const Vec3& u,
                                                     int scan_steps = 0);

/// Steiner symmetral about the hyperplane {x_last = 0}: every chord parallel
/// to the last axis is recentered. Radial function refit on K's grid.
StarBody steiner_symmetral_body(const StarBody& K);

struct ContainmentCheck {
  bool pass = false;
  double worst_gauge = 0.0;
  int chords_checked = 0;
};

/// Chord-midpoint containment test: K^s is inside L iff the recentered
/// endpoints of every chord of K parallel to the last axis have gauge <= 1
/// in L.
ContainmentCheck containment_lemma2f_check(const StarBody& K, const StarBody& L,
                                           int samples, double tol = 1e-3);

/// Body dump: JSON header line {"dim":..,"grid":[..]} + radii, 17 digits.
void write_body(const std::string& path, const StarBody& K);
StarBody read_body(const std::string& path);

}  // namespace affsym

#include "affsym/starbody.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace affsym {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::domain_error("starbody: " + msg);
}

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  return a < 0.0 ? a + 2.0 * M_PI : a;
}

}  // namespace

SphereGrid SphereGrid::circle(int m) {
  require(m >= 8, "circle grid needs at least 8 directions");
  SphereGrid g;
  g.dim = 2;
  g.n_theta = m;
  return g;
}

SphereGrid SphereGrid::sphere(int n_lat, int n_lon) {
  require(n_lat >= 4 && n_lon >= 8, "sphere grid too coarse");
  SphereGrid g;
  g.dim = 3;
  g.n_theta = n_lat;
  g.n_phi = n_lon;
  return g;
}

Vec3 SphereGrid::direction(int i) const {
  if (dim == 2) {
    double th = 2.0 * M_PI * i / n_theta;
    return {std::cos(th), std::sin(th), 0.0};
  }
  int lat = i / n_phi, lon = i % n_phi;
  double th = M_PI * (lat + 0.5) / n_theta;
  double ph = 2.0 * M_PI * lon / n_phi;
  double s = std::sin(th);
  return {s * std::cos(ph), s * std::sin(ph), std::cos(th)};
}

double SphereGrid::weight(int i) const {
  if (dim == 2) return 2.0 * M_PI / n_theta;
  int lat = i / n_phi;
  double band = std::cos(M_PI * lat / n_theta) -
                std::cos(M_PI * (lat + 1) / n_theta);
  return band * 2.0 * M_PI / n_phi;
}

double SphereGrid::total_weight() const { return dim == 2 ? 2.0 * M_PI : 4.0 * M_PI; }

StarBody::StarBody(SphereGrid g, std::vector<double> r)
    : grid(g), radii(std::move(r)) {
  require(static_cast<int>(radii.size()) == grid.size(), "radii count mismatch");
  for (double rho : radii)
    require(std::isfinite(rho) && rho > 0.0, "radii must be positive and finite");
}

StarBody StarBody::ball(const SphereGrid& g, double radius) {
  return StarBody(g, std::vector<double>(g.size(), radius));
}

StarBody StarBody::ellipsoid(const SphereGrid& g, const Mat& Q) {
  std::vector<double> radii(g.size());
  for (int i = 0; i < g.size(); ++i) {
    Vec3 u = g.direction(i);
    double q = dot(u, Q.apply(u), g.dim);
    require(q > 0.0, "ellipsoid matrix is not positive definite");
    radii[i] = 1.0 / std::sqrt(q);
  }
  return StarBody(g, std::move(radii));
}

double StarBody::radial(const Vec3& u) const {
  if (grid.dim == 2) {
    double step = 2.0 * M_PI / grid.n_theta;
    double t = wrap_angle(std::atan2(u[1], u[0])) / step;
    int i0 = static_cast<int>(t) % grid.n_theta;
    double frac = t - std::floor(t);
    int i1 = (i0 + 1) % grid.n_theta;
    return (1.0 - frac) * radii[i0] + frac * radii[i1];
  }
  double z = std::clamp(u[2], -1.0, 1.0);
  double th = std::acos(z);
  double lat_f = th * grid.n_theta / M_PI - 0.5;
  lat_f = std::clamp(lat_f, 0.0, static_cast<double>(grid.n_theta - 1));
  int l0 = std::min(static_cast<int>(lat_f), grid.n_theta - 2);
  double fl = lat_f - l0;

  double lon_f = wrap_angle(std::atan2(u[1], u[0])) * grid.n_phi / (2.0 * M_PI);
  int p0 = static_cast<int>(lon_f) % grid.n_phi;
  double fp = lon_f - std::floor(lon_f);
  int p1 = (p0 + 1) % grid.n_phi;

  auto at = [&](int lat, int lon) { return radii[lat * grid.n_phi + lon]; };
  double r0 = (1.0 - fp) * at(l0, p0) + fp * at(l0, p1);
  double r1 = (1.0 - fp) * at(l0 + 1, p0) + fp * at(l0 + 1, p1);
  return (1.0 - fl) * r0 + fl * r1;
}

double StarBody::max_radius() const {
  return *std::max_element(radii.begin(), radii.end());
}

double gauge(const StarBody& K, const Vec3& x) {
  double n = norm2(x, K.grid.dim);
  if (n == 0.0) return 0.0;
  return n / K.radial(scaled(x, 1.0 / n));
}

double support(const StarBody& K, const Vec3& u) {
  double best = -1e300;
  for (int i = 0; i < K.grid.size(); ++i)
    best = std::max(best, K.radii[i] * dot(u, K.grid.direction(i), K.grid.dim));
  return best;
}

StarBody polar(const StarBody& K) {
  std::vector<double> radii(K.grid.size());
  for (int i = 0; i < K.grid.size(); ++i) {
    double h = support(K, K.grid.direction(i));
    require(h > 0.0, "support vanishes, polar body unbounded");
    radii[i] = 1.0 / h;
  }
  return StarBody(K.grid, std::move(radii));
}

double volume(const StarBody& K) {
  double s = 0;
  for (int i = 0; i < K.grid.size(); ++i)
    s += K.grid.weight(i) * std::pow(K.radii[i], K.grid.dim);
  return s / K.grid.dim;
}

double hausdorff(const StarBody& K, const StarBody& L) {
  require(K.grid == L.grid, "hausdorff needs matching quadrature grids");
  double best = 0;
  for (int i = 0; i < K.grid.size(); ++i) {
    Vec3 u = K.grid.direction(i);
    best = std::max(best, std::fabs(support(K, u) - support(L, u)));
  }
  return best;
}

std::optional<std::pair<double, double>> chord_along(const StarBody& K,
                                                     const Vec3& base,
                                                     const Vec3& u,
                                                     int /*scan_steps*/) {
  int dim = K.grid.dim;
  double reach = norm2(base, dim) + K.max_radius();
  auto g = [&](double t) { return gauge(K, add(base, scaled(u, t))); };

  // gauge along a line is convex for convex K: locate its minimum by
  // ternary search, then bisect the two unit crossings.
  double a = -reach, b = reach;
  for (int it = 0; it < 120; ++it) {
    double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
    if (g(m1) <= g(m2))
      b = m2;
    else
      a = m1;
  }
  double tmin = 0.5 * (a + b);
  if (g(tmin) > 1.0) return std::nullopt;

  auto cross = [&](double inside_t, double outside_t) {
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (inside_t + outside_t);
      (g(mid) <= 1.0 ? inside_t : outside_t) = mid;
    }
    return 0.5 * (inside_t + outside_t);
  };
  return std::make_pair(cross(tmin, -reach), cross(tmin, reach));
}

namespace {

/// Half-chord-length table of K over the hyperplane {x_last = 0}, sampled at
/// 4x the quadrature resolution; zero where the chord is empty.
class ChordTable {
 public:
  explicit ChordTable(const StarBody& K) : dim_(K.grid.dim) {
    Vec3 ez{};
    ez[dim_ - 1] = 1.0;
    // extent of K along the x' axes
    extent_ = 0.0;
    for (int i = 0; i < K.grid.size(); ++i) {
      Vec3 p = scaled(K.grid.direction(i), K.radii[i]);
      for (int k = 0; k < dim_ - 1; ++k)
        extent_ = std::max(extent_, std::fabs(p[k]));
    }
    extent_ *= 1.001;
    n_ = dim_ == 2 ? 4 * K.grid.n_theta : 4 * K.grid.n_theta;
    half_.assign(dim_ == 2 ? n_ : n_ * n_, 0.0);
    step_ = 2.0 * extent_ / (n_ - 1);
    for (int i = 0; i < n_; ++i) {
      if (dim_ == 2) {
        Vec3 base{-extent_ + i * step_, 0.0, 0.0};
        if (auto ch = chord_along(K, base, ez))
          half_[i] = 0.5 * (ch->second - ch->first);
      } else {
        for (int j = 0; j < n_; ++j) {
          Vec3 base{-extent_ + i * step_, -extent_ + j * step_, 0.0};
          if (auto ch = chord_along(K, base, ez))
            half_[i * n_ + j] = 0.5 * (ch->second - ch->first);
        }
      }
    }
  }

  double half_length(const Vec3& xp) const {
    std::array<double, 2> f{};
    std::array<int, 2> b{};
    for (int k = 0; k < dim_ - 1; ++k) {
      double c = (xp[k] + extent_) / step_;
      if (c < 0.0 || c > n_ - 1) return 0.0;
      b[k] = std::min(static_cast<int>(c), n_ - 2);
      f[k] = c - b[k];
    }
    if (dim_ == 2)
      return (1.0 - f[0]) * half_[b[0]] + f[0] * half_[b[0] + 1];
    auto at = [&](int i, int j) { return half_[i * n_ + j]; };
    double r0 = (1.0 - f[1]) * at(b[0], b[1]) + f[1] * at(b[0], b[1] + 1);
    double r1 = (1.0 - f[1]) * at(b[0] + 1, b[1]) + f[1] * at(b[0] + 1, b[1] + 1);
    return (1.0 - f[0]) * r0 + f[0] * r1;
  }

 private:
  int dim_;
  int n_;
  double extent_;
  double step_;
  std::vector<double> half_;
};

}  // namespace

StarBody steiner_symmetral_body(const StarBody& K) {
  ChordTable chords(K);
  int dim = K.grid.dim;
  double hmax0 = chords.half_length(Vec3{});
  require(hmax0 > 0.0, "origin chord empty, body does not contain the origin");

  double rmax = 2.0 * K.max_radius() + 1.0;
  std::vector<double> radii(K.grid.size());
  for (int i = 0; i < K.grid.size(); ++i) {
    Vec3 u = K.grid.direction(i);
    auto inside = [&](double r) {
      Vec3 p = scaled(u, r);
      return std::fabs(p[dim - 1]) < chords.half_length(p);
    };
    double lo = 0.0, hi = rmax;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      (inside(mid) ? lo : hi) = mid;
    }
    radii[i] = 0.5 * (lo + hi);
  }
  return StarBody(K.grid, std::move(radii));
}

ContainmentCheck containment_lemma2f_check(const StarBody& K, const StarBody& L,
                                           int samples, double tol) {
  require(samples >= 3, "need at least 3 sample chords");
  int dim = K.grid.dim;
  Vec3 ez{};
  ez[dim - 1] = 1.0;

  double extent = 0.0;
  for (int i = 0; i < K.grid.size(); ++i) {
    Vec3 p = scaled(K.grid.direction(i), K.radii[i]);
    for (int k = 0; k < dim - 1; ++k) extent = std::max(extent, std::fabs(p[k]));
  }

  ContainmentCheck out;
  for (int s = 0; s < samples; ++s) {
    Vec3 base{};
    if (dim == 2) {
      base[0] = extent * 0.995 * (-1.0 + 2.0 * (s + 0.5) / samples);
    } else {
      // sunflower points in the x' disc
      double r = extent * 0.995 * std::sqrt((s + 0.5) / samples);
      double ang = 2.39996322972865332 * s;  // golden angle
      base[0] = r * std::cos(ang);
      base[1] = r * std::sin(ang);
    }
    auto ch = chord_along(K, base, ez);
    if (!ch || ch->second - ch->first <= 0.0) continue;
    double half = 0.5 * (ch->second - ch->first);
    Vec3 top = base, bot = base;
    top[dim - 1] = half;
    bot[dim - 1] = -half;
    out.worst_gauge = std::max({out.worst_gauge, gauge(L, top), gauge(L, bot)});
    ++out.chords_checked;
  }
  out.pass = out.chords_checked >= 3 && out.worst_gauge <= 1.0 + tol;
  return out;
}

void write_body(const std::string& path, const StarBody& K) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("starbody: cannot open '" + path + "'");
  nlohmann::json header;
  header["dim"] = K.grid.dim;
  header["grid"] = K.grid.dim == 2 ? std::vector<int>{K.grid.n_theta}
                                   : std::vector<int>{K.grid.n_theta, K.grid.n_phi};
  out << header.dump() << "\n";
  char buf[64];
  for (std::size_t i = 0; i < K.radii.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", K.radii[i]);
    out << buf << ((i + 1) % 8 == 0 ? '\n' : ' ');
  }
  out << "\n";
}

StarBody read_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("starbody: cannot open '" + path + "'");
  std::string header_line;
  if (!std::getline(in, header_line))
    throw std::runtime_error("starbody: missing header in '" + path + "'");
  nlohmann::json header = nlohmann::json::parse(header_line);
  int dim = header.at("dim").get<int>();
  auto gspec = header.at("grid").get<std::vector<int>>();
  SphereGrid grid = dim == 2 ? SphereGrid::circle(gspec.at(0))
                             : SphereGrid::sphere(gspec.at(0), gspec.at(1));
  std::vector<double> radii(grid.size());
  for (auto& r : radii)
    if (!(in >> r)) throw std::runtime_error("starbody: truncated radii block");
  return StarBody(grid, std::move(radii));
}

}  // namespace affsym

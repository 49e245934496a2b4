#include "affsym/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace affsym {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::domain_error("grid: " + msg);
}

// Iterates all multi-indices of the domain in row-major order.
template <typename F>
void for_each_node(const BoxDomain& d, F&& fn) {
  std::array<int, 3> idx{0, 0, 0};
  std::size_t flat = 0;
  int n0 = d.counts[0], n1 = d.dim > 1 ? d.counts[1] : 1,
      n2 = d.dim > 2 ? d.counts[2] : 1;
  for (idx[0] = 0; idx[0] < n0; ++idx[0])
    for (idx[1] = 0; idx[1] < n1; ++idx[1])
      for (idx[2] = 0; idx[2] < n2; ++idx[2]) fn(idx, flat++);
}

bool on_boundary_layer(const BoxDomain& d, const std::array<int, 3>& idx) {
  for (int k = 0; k < d.dim; ++k)
    if (idx[k] == 0 || idx[k] == d.counts[k] - 1) return true;
  return false;
}

}  // namespace

BoxDomain BoxDomain::centered_square(int dim, double half_extent, int cells) {
  BoxDomain d;
  d.dim = dim;
  for (int k = 0; k < dim; ++k) {
    d.origin[k] = -half_extent;
    d.spacing[k] = 2.0 * half_extent / cells;
    d.counts[k] = cells;
  }
  return d;
}

std::size_t BoxDomain::size() const {
  std::size_t n = 1;
  for (int k = 0; k < dim; ++k) n *= static_cast<std::size_t>(counts[k]);
  return n;
}

double BoxDomain::cell_volume() const {
  double v = 1;
  for (int k = 0; k < dim; ++k) v *= spacing[k];
  return v;
}

double BoxDomain::volume() const {
  double v = 1;
  for (int k = 0; k < dim; ++k) v *= spacing[k] * counts[k];
  return v;
}

double BoxDomain::diameter() const {
  double s = 0;
  for (int k = 0; k < dim; ++k) {
    double e = spacing[k] * counts[k];
    s += e * e;
  }
  return std::sqrt(s);
}

Vec3 BoxDomain::center() const {
  Vec3 c{};
  for (int k = 0; k < dim; ++k) c[k] = origin[k] + 0.5 * spacing[k] * counts[k];
  return c;
}

Vec3 BoxDomain::node_position(const std::array<int, 3>& idx) const {
  Vec3 p{};
  for (int k = 0; k < dim; ++k) p[k] = origin[k] + (idx[k] + 0.5) * spacing[k];
  return p;
}

std::size_t BoxDomain::flat_index(const std::array<int, 3>& idx) const {
  std::size_t f = idx[0];
  for (int k = 1; k < dim; ++k) f = f * counts[k] + idx[k];
  return f;
}

bool BoxDomain::operator==(const BoxDomain& o) const {
  if (dim != o.dim) return false;
  for (int k = 0; k < dim; ++k)
    if (origin[k] != o.origin[k] || spacing[k] != o.spacing[k] ||
        counts[k] != o.counts[k])
      return false;
  return true;
}

GridFunction::GridFunction(BoxDomain dom, std::vector<double> vals)
    : domain(dom), values(std::move(vals)) {
  require(domain.dim == 2 || domain.dim == 3, "dim must be 2 or 3");
  for (int k = 0; k < domain.dim; ++k) {
    require(domain.counts[k] > 0, "counts must be positive");
    require(domain.spacing[k] > 0, "spacing must be positive");
  }
  require(values.size() == domain.size(), "value count mismatch");
  for (double v : values)
    require(std::isfinite(v) && v >= 0.0, "values must be finite and >= 0");
  for_each_node(domain, [&](const std::array<int, 3>& idx, std::size_t flat) {
    if (on_boundary_layer(domain, idx))
      require(values[flat] == 0.0, "outermost node layer must vanish");
  });
}

double GridFunction::max_value() const {
  return *std::max_element(values.begin(), values.end());
}

double GradientField::max_magnitude() const {
  double best = 0;
  std::size_t n = comp[0].size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0;
    for (int k = 0; k < 3; ++k)
      if (!comp[k].empty()) s += comp[k][i] * comp[k][i];
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

GradientField gradient(const GridFunction& f) {
  const BoxDomain& d = f.domain;
  for (int k = 0; k < d.dim; ++k)
    require(d.counts[k] >= 3, "gradient needs >= 3 nodes per axis");

  GradientField g;
  g.domain = d;
  for (int k = 0; k < d.dim; ++k) g.comp[k].assign(d.size(), 0.0);

  // stride of axis k in the flat layout
  std::array<std::size_t, 3> stride{};
  stride[d.dim - 1] = 1;
  for (int k = d.dim - 2; k >= 0; --k)
    stride[k] = stride[k + 1] * d.counts[k + 1];

  for_each_node(d, [&](const std::array<int, 3>& idx, std::size_t flat) {
    for (int k = 0; k < d.dim; ++k) {
      double h = d.spacing[k];
      std::size_t s = stride[k];
      int i = idx[k], n = d.counts[k];
      double deriv;
      if (i == 0) {
        deriv = (-3.0 * f.values[flat] + 4.0 * f.values[flat + s] -
                 f.values[flat + 2 * s]) /
                (2.0 * h);
      } else if (i == n - 1) {
        deriv = (3.0 * f.values[flat] - 4.0 * f.values[flat - s] +
                 f.values[flat - 2 * s]) /
                (2.0 * h);
      } else {
        deriv = (f.values[flat + s] - f.values[flat - s]) / (2.0 * h);
      }
      g.comp[k][flat] = deriv;
    }
  });
  return g;
}

std::vector<double> directional_derivative(const GridFunction& f, const Vec3& u) {
  require(std::fabs(norm2(u, f.domain.dim) - 1.0) <= 1e-12,
          "direction must be a unit vector");
  GradientField g = gradient(f);
  std::vector<double> out(f.domain.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double s = 0;
    for (int k = 0; k < f.domain.dim; ++k) s += u[k] * g.comp[k][i];
    out[i] = s;
  }
  return out;
}

double distribution_function(const std::vector<double>& samples, double spacing,
                             double t) {
  require(t >= 0.0, "distribution function needs t >= 0");
  std::size_t count = 0;
  for (double v : samples)
    if (v > t) ++count;
  return spacing * static_cast<double>(count);
}

LevelSetSummary level_set_summary(const GridFunction& f, double t) {
  require(t >= 0.0, "level must be >= 0");
  const BoxDomain& d = f.domain;
  LevelSetSummary out;
  out.level = t;

  double cellvol = d.cell_volume();
  std::size_t count = 0;
  Vec3 sum{};
  for_each_node(d, [&](const std::array<int, 3>& idx, std::size_t flat) {
    if (f.values[flat] > t) {
      ++count;
      Vec3 p = d.node_position(idx);
      for (int k = 0; k < d.dim; ++k) sum[k] += p[k];
    }
  });
  out.volume = cellvol * static_cast<double>(count);
  if (count == 0) return out;

  out.defined = true;
  for (int k = 0; k < d.dim; ++k) out.centroid[k] = sum[k] / count;

  Mat m;
  m.dim = d.dim;
  for_each_node(d, [&](const std::array<int, 3>& idx, std::size_t flat) {
    if (f.values[flat] > t) {
      Vec3 p = sub(d.node_position(idx), out.centroid);
      for (int a = 0; a < d.dim; ++a)
        for (int b = 0; b < d.dim; ++b) m(a, b) += p[a] * p[b];
    }
  });
  for (int a = 0; a < d.dim; ++a)
    for (int b = 0; b < d.dim; ++b) m(a, b) /= count;
  // per-cell contribution of the uniform measure inside each cell
  for (int a = 0; a < d.dim; ++a) m(a, a) += d.spacing[a] * d.spacing[a] / 12.0;
  out.second_moment = m;
  return out;
}

double integral_Phi(const GridFunction& f, const OrliczFunction& phi) {
  double s = 0;
  for (double v : f.values) s += phi.Phi(v);
  return s * f.domain.cell_volume();
}

double integral(const GridFunction& f) {
  double s = 0;
  for (double v : f.values) s += v;
  return s * f.domain.cell_volume();
}

double l1_distance(const GridFunction& f, const GridFunction& g) {
  require(f.domain == g.domain, "l1_distance needs matching domains");
  double s = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    s += std::fabs(f.values[i] - g.values[i]);
  return s * f.domain.cell_volume();
}

GridFunction resample_affine(const GridFunction& f, const Mat& A, const Vec3& x0,
                             const BoxDomain& target) {
  const BoxDomain& d = f.domain;
  require(A.dim == d.dim && target.dim == d.dim, "dimension mismatch");
  require(std::fabs(A.det() - 1.0) <= 1e-9, "det(A) must be 1");

  // Support bounding box of f. Values below 1e-12 * max are interpolation
  // dust left by earlier resamples and are treated as zero here (and snapped
  // to zero in the output below); otherwise repeated resampling would grow
  // the support one cell per pass until it hit the box.
  double floor_val = 1e-12 * f.max_value();

  // supp(g) = A^{-1}(supp(f) - x0) must land inside the target minus one
  // boundary cell layer. Checked node by node on the above-floor support;
  // a bounding-box test would reject round supports that actually fit.
  {
    Mat Ainv = A.inverse();
    for_each_node(d, [&](const std::array<int, 3>& idx, std::size_t flat) {
      if (f.values[flat] <= floor_val) return;
      Vec3 y = Ainv.apply(sub(d.node_position(idx), x0));
      for (int k = 0; k < d.dim; ++k) {
        double inner_lo = target.origin[k] + 1.5 * target.spacing[k];
        double inner_hi =
            target.origin[k] + (target.counts[k] - 1.5) * target.spacing[k];
        require(y[k] >= inner_lo && y[k] <= inner_hi,
                "support image escapes the target box");
      }
    });
  }

  // Multilinear interpolation of f at fractional node coordinates.
  auto sample = [&](const Vec3& x) -> double {
    std::array<double, 3> frac{};
    std::array<int, 3> base{};
    for (int k = 0; k < d.dim; ++k) {
      double c = (x[k] - d.origin[k]) / d.spacing[k] - 0.5;
      if (c < 0.0 || c > d.counts[k] - 1) return 0.0;
      int i = std::min(static_cast<int>(c), d.counts[k] - 2);
      base[k] = i;
      frac[k] = c - i;
    }
    double acc = 0;
    int ncorner = 1 << d.dim;
    for (int c = 0; c < ncorner; ++c) {
      double w = 1;
      std::array<int, 3> idx{0, 0, 0};
      for (int k = 0; k < d.dim; ++k) {
        int b = c >> k & 1;
        w *= b ? frac[k] : 1.0 - frac[k];
        idx[k] = base[k] + b;
      }
      if (w != 0.0) acc += w * f.values[d.flat_index(idx)];
    }
    return acc;
  };

  std::vector<double> out(target.size(), 0.0);
  for_each_node(target, [&](const std::array<int, 3>& idx, std::size_t flat) {
    if (on_boundary_layer(target, idx)) return;
    Vec3 y = target.node_position(idx);
    double v = sample(add(A.apply(y), x0));
    out[flat] = v > floor_val ? v : 0.0;
  });
  return GridFunction(target, std::move(out));
}

void write_grid(const std::string& path, const GridFunction& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("grid: cannot open '" + path + "' for write");
  nlohmann::json header;
  header["dim"] = f.domain.dim;
  header["origin"] = std::vector<double>(f.domain.origin.begin(),
                                        f.domain.origin.begin() + f.domain.dim);
  header["spacing"] = std::vector<double>(
      f.domain.spacing.begin(), f.domain.spacing.begin() + f.domain.dim);
  header["counts"] = std::vector<int>(f.domain.counts.begin(),
                                      f.domain.counts.begin() + f.domain.dim);
  out << header.dump() << "\n";
  char buf[64];
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", f.values[i]);
    out << buf << ((i + 1) % 8 == 0 ? '\n' : ' ');
  }
  out << "\n";
}

GridFunction read_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("grid: cannot open '" + path + "'");
  std::string header_line;
  if (!std::getline(in, header_line))
    throw std::runtime_error("grid: missing header in '" + path + "'");
  nlohmann::json header = nlohmann::json::parse(header_line);

  BoxDomain d;
  d.dim = header.at("dim").get<int>();
  if (d.dim != 2 && d.dim != 3)
    throw std::runtime_error("grid: unsupported dim in '" + path + "'");
  auto origin = header.at("origin").get<std::vector<double>>();
  auto spacing = header.at("spacing").get<std::vector<double>>();
  auto counts = header.at("counts").get<std::vector<int>>();
  if (static_cast<int>(origin.size()) != d.dim ||
      static_cast<int>(spacing.size()) != d.dim ||
      static_cast<int>(counts.size()) != d.dim)
    throw std::runtime_error("grid: header shape mismatch in '" + path + "'");
  for (int k = 0; k < d.dim; ++k) {
    d.origin[k] = origin[k];
    d.spacing[k] = spacing[k];
    d.counts[k] = counts[k];
  }

  std::vector<double> values(d.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!(in >> values[i]))
      throw std::runtime_error("grid: truncated value block in '" + path + "'");
  return GridFunction(d, std::move(values));
}

}  // namespace affsym

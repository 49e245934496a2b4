#include "affsym/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace affsym {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::domain_error("rearrange: " + msg);
}

double unit_ball_volume(int dim) { return dim == 2 ? M_PI : 4.0 * M_PI / 3.0; }

}  // namespace

SteinerPlan SteinerPlan::for_direction(int dim, const Vec3& direction,
                                       double resample_tolerance) {
  SteinerPlan plan;
  plan.dim = dim;
  plan.direction = normalized(direction, dim);
  plan.rotation = rotation_to_last_axis(plan.direction, dim);
  plan.resample_tolerance = resample_tolerance;

  // RtR = I and R u = e_n, both within 1e-12.
  Mat rtr = plan.rotation.transpose() * plan.rotation;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      require(std::fabs(rtr(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-12,
              "rotation is not orthogonal");
  Vec3 img = plan.rotation.apply(plan.direction);
  for (int k = 0; k < dim; ++k)
    require(std::fabs(img[k] - (k == dim - 1 ? 1.0 : 0.0)) <= 1e-12,
            "rotation does not map direction to the last axis");
  return plan;
}

std::optional<int> SteinerPlan::axis() const {
  for (int k = 0; k < dim; ++k) {
    if (std::fabs(std::fabs(direction[k]) - 1.0) <= 1e-12) {
      bool rest_zero = true;
      for (int j = 0; j < dim; ++j)
        if (j != k && std::fabs(direction[j]) > 1e-12) rest_zero = false;
      if (rest_zero) return k;
    }
  }
  return std::nullopt;
}

std::vector<double> steiner_line(const std::vector<double>& samples) {
  for (double v : samples) require(v >= 0.0, "samples must be >= 0");
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());

  int n = static_cast<int>(samples.size());
  std::vector<double> out(samples.size());
  // Placement order: center, then pairs right-then-left. For even n the
  // "center" is the first node right of the center hyperplane.
  int right = n / 2;                        // next slot on the right side
  int left = (n - 1) / 2;                   // next slot on the left side
  if (n % 2 == 1) {
    out[right] = sorted[0];
    ++right;
    --left;
    for (int k = 1; k < n; ++k)
      out[k % 2 == 1 ? right++ : left--] = sorted[k];
  } else {
    for (int k = 0; k < n; ++k)
      out[k % 2 == 0 ? right++ : left--] = sorted[k];
  }
  return out;
}

namespace {

GridFunction steiner_axis(const GridFunction& f, int axis) {
  const BoxDomain& d = f.domain;
  std::array<std::size_t, 3> stride{};
  stride[d.dim - 1] = 1;
  for (int k = d.dim - 2; k >= 0; --k)
    stride[k] = stride[k + 1] * d.counts[k + 1];

  std::vector<double> out(f.values.size());
  int n = d.counts[axis];
  std::vector<double> line(n);

  // enumerate all lines parallel to `axis`
  std::array<int, 3> idx{0, 0, 0};
  int n0 = d.counts[0], n1 = d.dim > 1 ? d.counts[1] : 1,
      n2 = d.dim > 2 ? d.counts[2] : 1;
  for (idx[0] = 0; idx[0] < (axis == 0 ? 1 : n0); ++idx[0])
    for (idx[1] = 0; idx[1] < (axis == 1 ? 1 : n1); ++idx[1])
      for (idx[2] = 0; idx[2] < (axis == 2 ? 1 : n2); ++idx[2]) {
        std::size_t base = d.flat_index(idx);
        for (int i = 0; i < n; ++i) line[i] = f.values[base + i * stride[axis]];
        std::vector<double> rearranged = steiner_line(line);
        for (int i = 0; i < n; ++i)
          out[base + i * stride[axis]] = rearranged[i];
      }
  return GridFunction(d, std::move(out));
}

}  // namespace

GridFunction steiner_rearrange(const GridFunction& f, const SteinerPlan& plan) {
  const BoxDomain& d = f.domain;
  require(plan.dim == d.dim, "plan dimension mismatch");

  if (auto axis = plan.axis()) return steiner_axis(f, *axis);

  // Non-axis direction: the rotated box must coincide with itself up to the
  // symmetrization hyperplane, which we only guarantee for a cube.
  for (int k = 1; k < d.dim; ++k)
    require(d.spacing[k] == d.spacing[0] && d.counts[k] == d.counts[0],
            "non-axis symmetrization needs a cubical box");

  Vec3 c = d.center();
  const Mat& R = plan.rotation;
  Mat Rinv = R.transpose();

  // g(x) = f(c + R^{-1}(x - c)): the function expressed in rotated frame.
  GridFunction g = resample_affine(f, Rinv, sub(c, Rinv.apply(c)), d);
  GridFunction gs = steiner_axis(g, d.dim - 1);
  return resample_affine(gs, R, sub(c, R.apply(c)), d);
}

GridFunction schwarz_symmetrize(const GridFunction& f) {
  const BoxDomain& d = f.domain;
  std::vector<double> sorted = f.values;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  sorted.push_back(0.0);

  double cellvol = d.cell_volume();
  double omega_n = unit_ball_volume(d.dim);
  Vec3 c = d.center();
  std::size_t n = f.values.size();

  std::vector<double> out(n, 0.0);
  std::array<int, 3> idx{0, 0, 0};
  int n0 = d.counts[0], n1 = d.counts[1], n2 = d.dim > 2 ? d.counts[2] : 1;
  std::size_t flat = 0;
  auto boundary = [&](const std::array<int, 3>& id) {
    for (int k = 0; k < d.dim; ++k)
      if (id[k] == 0 || id[k] == d.counts[k] - 1) return true;
    return false;
  };
  for (idx[0] = 0; idx[0] < n0; ++idx[0])
    for (idx[1] = 0; idx[1] < n1; ++idx[1])
      for (idx[2] = 0; idx[2] < n2; ++idx[2], ++flat) {
        // keep the zero boundary layer: for supports that nearly fill the
        // box the interpolated tail can otherwise leak one cell onto it
        if (boundary(idx)) continue;
        Vec3 p = sub(d.node_position(idx), c);
        double r = norm2(p, d.dim);
        double k = omega_n * std::pow(r, d.dim) / cellvol;
        auto lo = static_cast<std::size_t>(k);
        if (lo >= n) continue;
        double frac = k - static_cast<double>(lo);
        out[flat] = (1.0 - frac) * sorted[lo] + frac * sorted[lo + 1];
      }
  return GridFunction(d, std::move(out));
}

SteinerIterationResult iterate_steiner(const GridFunction& f,
                                       const std::vector<Vec3>& directions,
                                       double stop_tol, int max_iters) {
  require(!directions.empty(), "need at least one direction");
  require(max_iters >= 1, "max_iters must be >= 1");

  GridFunction target = schwarz_symmetrize(f);
  SteinerIterationResult res{f, {}, false};
  res.distances.push_back(l1_distance(res.result, target));
  if (res.distances.back() <= stop_tol) {
    res.converged = true;
    return res;
  }

  // Exact Steiner symmetrization keeps every iterate equimeasurable with f;
  // the interpolation used for non-axis directions does not. Restoring the
  // original value distribution by rank after each step removes that drift
  // (and the support creep that comes with it) without touching the spatial
  // arrangement the symmetrization produced.
  std::vector<double> pool = f.values;
  std::sort(pool.begin(), pool.end());
  std::vector<std::size_t> order(pool.size());

  for (int it = 0; it < max_iters; ++it) {
    const Vec3& u = directions[it % directions.size()];
    SteinerPlan plan = SteinerPlan::for_direction(f.domain.dim, u);
    res.result = steiner_rearrange(res.result, plan);
    if (!plan.axis()) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        double va = res.result.values[a], vb = res.result.values[b];
        return va < vb || (va == vb && a < b);
      });
      std::vector<double> repaired(pool.size());
      for (std::size_t r = 0; r < order.size(); ++r) repaired[order[r]] = pool[r];
      res.result = GridFunction(res.result.domain, std::move(repaired));
    }
    res.distances.push_back(l1_distance(res.result, target));
    if (res.distances.back() <= stop_tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace affsym

#include "affsym/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Dense>
#include <json.hpp>

namespace affsym {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::domain_error("verify: " + msg);
}

double unit_ball_volume(int dim) { return dim == 2 ? M_PI : 4.0 * M_PI / 3.0; }

VerificationReport make_report(const std::string& label, const GridFunction& f,
                               const OrliczFunction& phi, double e_orig,
                               double e_sym, double tol) {
  VerificationReport rep;
  rep.label = label;
  rep.energy_original = e_orig;
  rep.energy_symmetrized = e_sym;
  rep.margin = (e_orig - e_sym) / e_orig;
  rep.tolerance_used = tol;
  rep.inequality_pass = e_sym <= e_orig * (1.0 + tol);
  double frac = critical_set_fraction(f);
  rep.hypothesis_flags["critical_set_ok"] = frac <= 0.01;
  rep.hypothesis_flags["phi_strictly_convex"] = phi.strictly_convex();
  std::ostringstream diag;
  diag << "critical_set_fraction=" << frac;
  rep.diagnostics.push_back(diag.str());
  rep.diagnostics.push_back(
      "domain regularity (connected projection, finite perimeter) assumed: "
      "box domains with smooth bump corpus");
  return rep;
}

StarBody rotate_body(const StarBody& K, const Mat& R) {
  Mat Rt = R.transpose();
  std::vector<double> radii(K.grid.size());
  for (int i = 0; i < K.grid.size(); ++i)
    radii[i] = K.radial(Rt.apply(K.grid.direction(i)));
  return StarBody(K.grid, std::move(radii));
}

double body_diameter(const StarBody& K) {
  double best = 0;
  for (int i = 0; i < K.grid.size(); ++i) {
    Vec3 u = K.grid.direction(i);
    best = std::max(best, support(K, u) + support(K, scaled(u, -1.0)));
  }
  return best;
}

Eigen::MatrixXd to_eigen(const Mat& m) {
  Eigen::MatrixXd e(m.dim, m.dim);
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j) e(i, j) = m(i, j);
  return e;
}

}  // namespace

double critical_set_fraction(const GridFunction& f) {
  GradientField g = gradient(f);
  double gmax = g.max_magnitude();
  double fmax = f.max_value();
  if (gmax == 0.0 || fmax == 0.0) return 1.0;
  std::size_t support_nodes = 0, critical = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (f.values[i] <= 0.0) continue;
    ++support_nodes;
    Vec3 gv = g.at(i);
    if (norm2(gv, f.domain.dim) < 1e-8 * gmax && f.values[i] < fmax) ++critical;
  }
  return support_nodes == 0 ? 1.0
                            : static_cast<double>(critical) / support_nodes;
}

VerificationReport verify_steiner_ps(const GridFunction& f,
                                     const OrliczFunction& phi,
                                     const Vec3& direction, double tol,
                                     int quadrature_size) {
  SteinerPlan plan = SteinerPlan::for_direction(f.domain.dim, direction);
  GridFunction fs = steiner_rearrange(f, plan);
  double e_orig = affine_energy(f, phi, quadrature_size).energy;
  double e_sym = affine_energy(fs, phi, quadrature_size).energy;
  return make_report("steiner", f, phi, e_orig, e_sym, tol);
}

VerificationReport verify_schwarz_ps(const GridFunction& f,
                                     const OrliczFunction& phi, double tol,
                                     int quadrature_size) {
  GridFunction fstar = schwarz_symmetrize(f);
  double e_orig = affine_energy(f, phi, quadrature_size).energy;
  double e_sym = affine_energy(fstar, phi, quadrature_size).energy;
  return make_report("schwarz", f, phi, e_orig, e_sym, tol);
}

AffineInvarianceReport verify_affine_invariance(const GridFunction& f,
                                                const OrliczFunction& phi,
                                                int trials, unsigned seed,
                                                int quadrature_size) {
  int dim = f.domain.dim;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  // condition number s^2 <= 3
  std::uniform_real_distribution<double> stretch(1.0, std::sqrt(3.0));
  std::uniform_int_distribution<int> shift(-3, 3);
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto random_rotation = [&]() -> Mat {
    if (dim == 2) return Mat::rotation2d(angle(rng));
    Vec3 axis{gauss(rng), gauss(rng), gauss(rng)};
    return Mat::rotation3d(normalized(axis, 3), angle(rng));
  };

  double e_ref = affine_energy(f, phi, quadrature_size).energy;

  AffineInvarianceReport rep;
  for (int t = 0; t < trials; ++t) {
    Mat D = Mat::identity(dim);
    double s = stretch(rng);
    D(0, 0) = s;
    D(1, 1) = 1.0 / s;
    Mat A = random_rotation() * D * random_rotation();
    Vec3 x0{};
    for (int k = 0; k < dim; ++k) x0[k] = shift(rng) * f.domain.spacing[k];
    try {
      GridFunction g = resample_affine(f, A, x0, f.domain);
      double e = affine_energy(g, phi, quadrature_size).energy;
      rep.deviations.push_back(std::fabs(e - e_ref) / e_ref);
      rep.max_deviation = std::max(rep.max_deviation, rep.deviations.back());
      ++rep.trials_run;
    } catch (const std::domain_error&) {
      ++rep.trials_skipped;
    }
  }
  return rep;
}

BallContainmentReport verify_ball_containment(const GridFunction& f,
                                              const OrliczFunction& phi,
                                              const Vec3& direction, int samples,
                                              double tol, int quadrature_size) {
  SteinerPlan plan = SteinerPlan::for_direction(f.domain.dim, direction);
  GridFunction fs = steiner_rearrange(f, plan);

  StarBody ball_f = orlicz_ball(f, phi, quadrature_size);
  StarBody ball_fs = orlicz_ball(fs, phi, quadrature_size);

  // Work in the frame where the symmetrization direction is the last axis.
  StarBody K = rotate_body(ball_f, plan.rotation);
  StarBody L = rotate_body(ball_fs, plan.rotation);

  ContainmentCheck check = containment_lemma2f_check(K, L, samples, tol);
  BallContainmentReport rep;
  rep.worst_gauge = check.worst_gauge;
  rep.pass = check.pass;
  rep.chords_checked = check.chords_checked;
  rep.volume_original = volume(ball_f);
  rep.volume_symmetrized = volume(ball_fs);
  return rep;
}

EqualityVerdict detect_equality_case(const GridFunction& f,
                                     const OrliczFunction& phi, int levels,
                                     int quadrature_size) {
  int dim = f.domain.dim;
  if (!phi.strictly_convex())
    throw std::invalid_argument(
        "verify: equality detection needs a strictly convex phi");
  double crit = critical_set_fraction(f);
  require(crit <= 0.01, "critical-set surrogate above threshold");
  require(levels >= 3, "need at least 3 levels");

  double fmax = f.max_value();
  double cellvol = f.domain.cell_volume();

  std::vector<LevelSetSummary> sums;
  std::vector<double> fit_errors;
  std::vector<Eigen::MatrixXd> shapes;  // unit-determinant second moments

  for (int i = 0; i < levels; ++i) {
    double t = (0.05 + 0.90 * i / (levels - 1)) * fmax;
    LevelSetSummary s = level_set_summary(f, t);
    if (!s.defined || s.volume <= 4.0 * cellvol) continue;
    sums.push_back(s);

    // Equal-volume second-moment ellipsoid {x : (x-c)' Q (x-c) <= 1}.
    Eigen::MatrixXd M = to_eigen(s.second_moment);
    Eigen::MatrixXd Q = M.inverse() / (dim + 2);
    double volE = unit_ball_volume(dim) / std::sqrt(Q.determinant());
    Q *= std::pow(volE / s.volume, 2.0 / dim);

    // symmetric-difference volume against the grid level set
    std::size_t symdiff = 0;
    std::array<int, 3> idx{0, 0, 0};
    const BoxDomain& d = f.domain;
    std::size_t flat = 0;
    int n0 = d.counts[0], n1 = d.counts[1], n2 = dim > 2 ? d.counts[2] : 1;
    for (idx[0] = 0; idx[0] < n0; ++idx[0])
      for (idx[1] = 0; idx[1] < n1; ++idx[1])
        for (idx[2] = 0; idx[2] < n2; ++idx[2], ++flat) {
          bool in_set = f.values[flat] > t;
          Vec3 p = sub(d.node_position(idx), s.centroid);
          Eigen::VectorXd pe(dim);
          for (int k = 0; k < dim; ++k) pe(k) = p[k];
          bool in_ell = pe.dot(Q * pe) <= 1.0;
          if (in_set != in_ell) ++symdiff;
        }
    fit_errors.push_back(symdiff * cellvol / s.volume);
    shapes.push_back(M / std::pow(M.determinant(), 1.0 / dim));
  }

  if (sums.size() < 3)
    throw std::domain_error("verify: fewer than 3 nonempty level sets");

  EqualityVerdict verdict;
  verdict.per_level_fit_error = fit_errors;

  bool fits_ok =
      std::all_of(fit_errors.begin(), fit_errors.end(),
                  [](double e) { return e <= 0.05; });

  double max_spacing = 0;
  for (int k = 0; k < dim; ++k)
    max_spacing = std::max(max_spacing, f.domain.spacing[k]);
  bool centers_ok = true;
  for (std::size_t i = 0; i < sums.size(); ++i)
    for (std::size_t j = i + 1; j < sums.size(); ++j)
      if (norm2(sub(sums[i].centroid, sums[j].centroid), dim) >
          2.0 * max_spacing)
        centers_ok = false;

  double mean_fro = 0;
  for (const auto& n : shapes) mean_fro += n.norm();
  mean_fro /= shapes.size();
  bool shapes_ok = true;
  for (std::size_t i = 0; i < shapes.size(); ++i)
    for (std::size_t j = i + 1; j < shapes.size(); ++j)
      if ((shapes[i] - shapes[j]).norm() > 0.03 * mean_fro) shapes_ok = false;

  verdict.is_equality_case = fits_ok && centers_ok && shapes_ok;

  Vec3 center{};
  for (const auto& s : sums)
    for (int k = 0; k < dim; ++k) center[k] += s.centroid[k] / sums.size();
  verdict.fitted_center = center;

  // report the shape in gauge form: level sets look like {x'Qx <= r} with
  // det Q = 1, directly usable with StarBody::ellipsoid
  Eigen::MatrixXd mean_shape = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& n : shapes) mean_shape += n / static_cast<double>(shapes.size());
  mean_shape = mean_shape.inverse().eval();
  mean_shape /= std::pow(mean_shape.determinant(), 1.0 / dim);
  Mat shape;
  shape.dim = dim;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) shape(i, j) = mean_shape(i, j);
  verdict.fitted_shape = shape;

  verdict.energy_gap =
      verify_schwarz_ps(f, phi, 0.02, quadrature_size).margin;

  std::ostringstream diag;
  diag << "levels_used=" << sums.size() << " fits_ok=" << fits_ok
       << " centers_ok=" << centers_ok << " shapes_ok=" << shapes_ok;
  verdict.diagnostics.push_back(diag.str());
  return verdict;
}

ChordMidpointResult chord_midpoint_affine_test(const StarBody& K, const Vec3& u0,
                                               int chords) {
  int dim = K.grid.dim;
  Vec3 u = normalized(u0, dim);

  // orthonormal basis of u-perp
  Vec3 w1{}, w2{};
  if (dim == 2) {
    w1 = {-u[1], u[0], 0.0};
  } else {
    Vec3 seed = std::fabs(u[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    double proj = dot(seed, u, 3);
    w1 = normalized(sub(seed, scaled(u, proj)), 3);
    w2 = {u[1] * w1[2] - u[2] * w1[1], u[2] * w1[0] - u[0] * w1[2],
          u[0] * w1[1] - u[1] * w1[0]};
  }

  double e1 = 0, e2 = 0;
  for (int i = 0; i < K.grid.size(); ++i) {
    Vec3 p = scaled(K.grid.direction(i), K.radii[i]);
    e1 = std::max(e1, std::fabs(dot(p, w1, dim)));
    if (dim == 3) e2 = std::max(e2, std::fabs(dot(p, w2, dim)));
  }

  std::vector<Vec3> mids;
  int per_axis = dim == 2 ? chords : std::max(2, (int)std::sqrt((double)chords));
  for (int i = 0; i < per_axis; ++i) {
    double c1 = e1 * 0.95 * (-1.0 + 2.0 * (i + 0.5) / per_axis);
    int jmax = dim == 2 ? 1 : per_axis;
    for (int j = 0; j < jmax; ++j) {
      Vec3 base = scaled(w1, c1);
      if (dim == 3) {
        double c2 = e2 * 0.95 * (-1.0 + 2.0 * (j + 0.5) / per_axis);
        base = add(base, scaled(w2, c2));
      }
      auto ch = chord_along(K, base, u);
      if (!ch || ch->second - ch->first <= 0.0) continue;
      mids.push_back(add(base, scaled(u, 0.5 * (ch->first + ch->second))));
    }
  }

  if (static_cast<int>(mids.size()) < dim + 1)
    throw std::domain_error("verify: not enough chords for the affine fit");

  Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
  for (const auto& m : mids)
    for (int k = 0; k < dim; ++k) mean(k) += m[k] / mids.size();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& m : mids) {
    Eigen::VectorXd d(dim);
    for (int k = 0; k < dim; ++k) d(k) = m[k] - mean(k);
    cov += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  Eigen::VectorXd normal = eig.eigenvectors().col(0);

  double worst = 0;
  for (const auto& m : mids) {
    double r = 0;
    for (int k = 0; k < dim; ++k) r += (m[k] - mean(k)) * normal(k);
    worst = std::max(worst, std::fabs(r));
  }

  ChordMidpointResult res;
  res.chords_used = static_cast<int>(mids.size());
  res.residual = worst / body_diameter(K);
  res.pass = res.residual <= 0.01;
  return res;
}

// ---------------------------------------------------------------------------
// serialization

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["label"] = label;
  j["energy_original"] = energy_original;
  j["energy_symmetrized"] = energy_symmetrized;
  j["margin"] = margin;
  j["tolerance_used"] = tolerance_used;
  j["inequality_pass"] = inequality_pass;
  j["hypothesis_flags"] = hypothesis_flags;
  j["diagnostics"] = diagnostics;
  return j.dump(2);
}

std::string VerificationReport::csv_header() {
  return "label,energy_original,energy_symmetrized,margin,tolerance_used,"
         "inequality_pass,critical_set_ok,phi_strictly_convex";
}

std::string VerificationReport::to_csv_row() const {
  std::ostringstream out;
  out.precision(17);
  out << label << ',' << energy_original << ',' << energy_symmetrized << ','
      << margin << ',' << tolerance_used << ',' << (inequality_pass ? 1 : 0)
      << ',' << (hypothesis_flags.count("critical_set_ok")
                     ? hypothesis_flags.at("critical_set_ok")
                     : 0)
      << ','
      << (hypothesis_flags.count("phi_strictly_convex")
              ? hypothesis_flags.at("phi_strictly_convex")
              : 0);
  return out.str();
}

std::string EqualityVerdict::to_json() const {
  nlohmann::json j;
  j["is_equality_case"] = is_equality_case;
  j["fitted_center"] = std::vector<double>(
      fitted_center.begin(), fitted_center.begin() + fitted_shape.dim);
  std::vector<std::vector<double>> shape(fitted_shape.dim,
                                         std::vector<double>(fitted_shape.dim));
  for (int i = 0; i < fitted_shape.dim; ++i)
    for (int k = 0; k < fitted_shape.dim; ++k) shape[i][k] = fitted_shape(i, k);
  j["fitted_shape"] = shape;
  j["per_level_fit_error"] = per_level_fit_error;
  j["energy_gap"] = energy_gap;
  j["diagnostics"] = diagnostics;
  return j.dump(2);
}

std::string AffineInvarianceReport::to_json() const {
  nlohmann::json j;
  j["max_deviation"] = max_deviation;
  j["trials_run"] = trials_run;
  j["trials_skipped"] = trials_skipped;
  j["deviations"] = deviations;
  return j.dump(2);
}

std::string BallContainmentReport::to_json() const {
  nlohmann::json j;
  j["worst_gauge"] = worst_gauge;
  j["pass"] = pass;
  j["volume_original"] = volume_original;
  j["volume_symmetrized"] = volume_symmetrized;
  j["chords_checked"] = chords_checked;
  return j.dump(2);
}

}  // namespace affsym

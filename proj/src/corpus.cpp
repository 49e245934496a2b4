#include "affsym/corpus.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>

#include <json.hpp>

namespace affsym {

namespace {

using Field = std::function<double(double, double)>;

GridFunction sample_2d(int cells, const Field& fn) {
  BoxDomain d = BoxDomain::centered_square(2, 1.0, cells);
  std::vector<double> values(d.size(), 0.0);
  for (int i = 1; i < cells - 1; ++i)
    for (int j = 1; j < cells - 1; ++j) {
      Vec3 p = d.node_position({i, j, 0});
      values[d.flat_index({i, j, 0})] = std::max(0.0, fn(p[0], p[1]));
    }
  return GridFunction(d, std::move(values));
}

// C^1 compactly supported bump of radius R at c.
Field bump(double cx, double cy, double R, double amp) {
  return [=](double x, double y) {
    double s = ((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (R * R);
    double t = 1.0 - s;
    return t > 0.0 ? amp * t * t : 0.0;
  };
}

// (1 - |D(x-c)|^2 / R^2)_+ with det D = 1: concentric ellipse level sets.
Field ellipsoidal(double cx, double cy, const Mat& D, double R) {
  return [=](double x, double y) {
    Vec3 z = D.apply({x - cx, y - cy, 0.0});
    double t = 1.0 - (z[0] * z[0] + z[1] * z[1]) / (R * R);
    return t > 0.0 ? t : 0.0;
  };
}

Field sum(Field a, Field b) {
  return [=](double x, double y) { return a(x, y) + b(x, y); };
}

}  // namespace

std::vector<Fixture> make_corpus(unsigned seed, int cells) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.02, 0.02);
  auto j = [&] { return jitter(rng); };

  std::vector<Fixture> out;
  auto push = [&](const std::string& name, const Field& fn, bool equality,
                  std::optional<double> energy = std::nullopt) {
    out.push_back(Fixture{name, sample_2d(cells, fn), equality, energy, 0.01});
  };

  // 1. cone (1 - |x|)_+: Power(2) energy is 8^{-1/2} analytically.
  push("cone",
       [](double x, double y) { return 1.0 - std::sqrt(x * x + y * y); }, true,
       std::pow(8.0, -0.5));

  // 2. radial bump, small enough to survive the SL(2) draws of the
  // affine-invariance suite.
  push("radial_bump", bump(0, 0, 0.5, 1.0), true);

  // 3-5. ellipsoidal bumps (equality cases of the Schwarz principle)
  Mat D1 = Mat::identity(2);
  D1(0, 0) = 1.3;
  D1(1, 1) = 1.0 / 1.3;
  push("ellipsoid_a", ellipsoidal(0, 0, D1, 0.42), true);

  Mat R1 = Mat::rotation2d(M_PI / 5.0);
  Mat D2 = R1 * D1 * R1.transpose();
  push("ellipsoid_b", ellipsoidal(0, 0, D2, 0.45), true);

  Mat Sh = Mat::identity(2);
  Sh(0, 1) = 0.35;
  Mat D3s = Mat::identity(2);
  D3s(0, 0) = 1.15;
  D3s(1, 1) = 1.0 / 1.15;
  Mat D3 = Sh * D3s;
  push("ellipsoid_c", ellipsoidal(0.05, -0.05, D3, 0.4), true);

  // 6-7. two-bump sums (strict-inequality cases)
  push("two_bump_a",
       sum(bump(-0.35 + j(), -0.2 + j(), 0.3, 1.0),
           bump(0.4 + j(), 0.25 + j(), 0.25, 0.7)),
       false);
  push("two_bump_b",
       sum(bump(-0.3 + j(), 0.3 + j(), 0.35, 0.8),
           bump(0.35 + j(), -0.3 + j(), 0.2, 1.0)),
       false);

  // 8-9. translated / rotated equality-case variants
  push("translated_bump", bump(0.25, -0.15, 0.45, 1.0), true);
  Mat R2 = Mat::rotation2d(M_PI / 6.0);
  Mat D4 = R2 * D1 * R2.transpose();
  push("rotated_ellipsoid", ellipsoidal(0.15, 0.1, D4, 0.4), true);

  // 10. radially asymmetric profile: level sets are egg-shaped, not ellipses
  push("skew_bump",
       [](double x, double y) {
         double s = (x * x + y * y) / 0.25;
         double t = 1.0 - s;
         if (t <= 0.0) return 0.0;
         return t * t * (1.0 + 0.9 * x + 0.4 * y);
       },
       false);

  // 11. pinched single-component profile
  push("pinched_bump",
       sum(bump(0, 0, 0.5, 1.0), bump(0.22, 0.0, 0.22, 0.55)), false);

  // 12. three bumps
  push("three_bump",
       sum(sum(bump(-0.4, -0.25, 0.25, 0.9), bump(0.35, -0.3, 0.22, 0.8)),
           bump(0.0, 0.4, 0.28, 1.0)),
       false);

  return out;
}

void write_corpus(unsigned seed, const std::string& out_dir, int cells) {
  std::filesystem::create_directories(out_dir);
  std::vector<Fixture> fixtures = make_corpus(seed, cells);
  nlohmann::json manifest;
  manifest["seed"] = seed;
  manifest["cells"] = cells;
  for (const auto& fx : fixtures) {
    std::string file = fx.name + ".grid";
    write_grid(out_dir + "/" + file, fx.f);
    nlohmann::json entry;
    entry["file"] = file;
    entry["equality_expected"] = fx.equality_expected;
    if (fx.expected_energy) {
      entry["expected_energy_power2"] = *fx.expected_energy;
      entry["expected_energy_tol"] = fx.expected_energy_tol;
    }
    manifest["fixtures"][fx.name] = entry;
  }
  std::ofstream out(out_dir + "/manifest.json");
  if (!out) throw std::runtime_error("corpus: cannot write manifest");
  out << manifest.dump(2) << "\n";
}

}  // namespace affsym

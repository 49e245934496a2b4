#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "affsym/grid.hpp"

using namespace affsym;

namespace {

GridFunction sample_2d(int cells, double half_extent,
                       const std::function<double(double, double)>& fn) {
  BoxDomain d = BoxDomain::centered_square(2, half_extent, cells);
  std::vector<double> values(d.size(), 0.0);
  for (int i = 1; i < cells - 1; ++i)
    for (int j = 1; j < cells - 1; ++j) {
      Vec3 p = d.node_position({i, j, 0});
      values[d.flat_index({i, j, 0})] = std::max(0.0, fn(p[0], p[1]));
    }
  return GridFunction(d, std::move(values));
}

}  // namespace

TEST_CASE("domain bookkeeping") {
  BoxDomain d = BoxDomain::centered_square(2, 1.0, 256);
  CHECK(d.volume() == doctest::Approx(4.0));
  CHECK(d.cell_volume() == doctest::Approx(4.0 / (256.0 * 256.0)));
  CHECK(d.diameter() == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(d.center()[0] == doctest::Approx(0.0));
  CHECK(d.size() == 256u * 256u);
}

TEST_CASE("constructor validates nonnegativity and boundary layer") {
  BoxDomain d = BoxDomain::centered_square(2, 1.0, 8);
  std::vector<double> vals(d.size(), 0.0);
  CHECK_NOTHROW(GridFunction(d, vals));

  auto bad = vals;
  bad[d.flat_index({3, 3, 0})] = -0.5;
  CHECK_THROWS_AS(GridFunction(d, bad), std::domain_error);

  bad = vals;
  bad[d.flat_index({0, 3, 0})] = 1.0;  // boundary layer must vanish
  CHECK_THROWS_AS(GridFunction(d, bad), std::domain_error);
}

TEST_CASE("gradient exact on piecewise-affine samples") {
  BoxDomain d = BoxDomain::centered_square(2, 1.0, 64);
  GridFunction tent = sample_2d(64, 1.0, [](double x, double y) {
    return std::max(0.0, 0.6 - std::fabs(x) - std::fabs(y));
  });
  GradientField g = gradient(tent);
  // deep inside a face of the tent the function is affine: gradient (-1,-1)
  auto idx = std::array<int, 3>{40, 40, 0};  // x,y ~ +0.27: slope (-1,-1)
  Vec3 p = d.node_position(idx);
  REQUIRE(tent.values[d.flat_index(idx)] > 0.0);
  CHECK(p[0] > 0.1);
  CHECK(g.comp[0][d.flat_index(idx)] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(g.comp[1][d.flat_index(idx)] == doctest::Approx(-1.0).epsilon(1e-12));

  GridFunction zero(d, std::vector<double>(d.size(), 0.0));
  GradientField gz = gradient(zero);
  CHECK(gz.max_magnitude() == 0.0);

  BoxDomain tiny = BoxDomain::centered_square(2, 1.0, 2);
  CHECK_THROWS_AS(gradient(GridFunction(tiny, std::vector<double>(4, 0.0))),
                  std::domain_error);
}

TEST_CASE("gradient one-sided stencil is second order at the frame") {
  // quadratic along axis 0: central difference is exact in the interior and
  // the one-sided closure is exact for quadratics as well
  BoxDomain d = BoxDomain::centered_square(2, 1.0, 32);
  GridFunction bump = sample_2d(32, 1.0, [](double x, double y) {
    double t = 1.0 - (x * x + y * y) / 0.36;
    return t > 0.0 ? t : 0.0;
  });
  GradientField g = gradient(bump);
  for (int i = 8; i < 24; ++i)
    for (int j = 8; j < 24; ++j) {
      Vec3 p = d.node_position({i, j, 0});
      if (p[0] * p[0] + p[1] * p[1] > 0.25) continue;  // away from the kink
      std::size_t f = d.flat_index({i, j, 0});
      CHECK(g.comp[0][f] == doctest::Approx(-2.0 * p[0] / 0.36).epsilon(1e-9));
      CHECK(g.comp[1][f] == doctest::Approx(-2.0 * p[1] / 0.36).epsilon(1e-9));
    }
}

TEST_CASE("directional derivative of a plane") {
  GridFunction f = sample_2d(128, 1.0, [](double x, double y) {
    double t = 0.5 - std::fabs(x) - 0.5 * std::fabs(y);
    return t > 0.0 ? t : 0.0;
  });
  // in the open quadrant x,y > 0 the function is 0.5 - x - 0.5 y
  auto along = [&](const Vec3& u) {
    std::vector<double> dd = directional_derivative(f, u);
    BoxDomain d = f.domain;
    auto idx = std::array<int, 3>{70, 70, 0};
    return dd[d.flat_index(idx)];
  };
  CHECK(along({1, 0, 0}) == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(along({0, 1, 0}) == doctest::Approx(-0.5).epsilon(1e-10));
  double s = std::sqrt(0.5);
  CHECK(along({s, s, 0}) == doctest::Approx(-1.5 * s).epsilon(1e-10));
  CHECK_THROWS_AS(directional_derivative(f, Vec3{1.0, 1.0, 0.0}),
                  std::domain_error);
}

TEST_CASE("distribution function along a line") {
  // indicator of [0,1] union [2,3] sampled at spacing 0.01 on [-1, 4]
  double h = 0.01;
  std::vector<double> line;
  for (double y = -1.0; y < 4.0; y += h)
    line.push_back(((y > 0 && y < 1) || (y > 2 && y < 3)) ? 1.0 : 0.0);
  CHECK(distribution_function(line, h, 0.5) == doctest::Approx(2.0).epsilon(0.02));
  CHECK(distribution_function(line, h, 1.5) == 0.0);

  // tent max(0, 1-|y|): superlevel length 2(1-t)
  std::vector<double> tent;
  for (double y = -2.0; y < 2.0; y += h)
    tent.push_back(std::max(0.0, 1.0 - std::fabs(y)));
  CHECK(distribution_function(tent, h, 0.5) == doctest::Approx(1.0).epsilon(0.02));

  // nonincreasing in t
  double prev = distribution_function(tent, h, 0.0);
  for (double t = 0.05; t < 1.1; t += 0.05) {
    double cur = distribution_function(tent, h, t);
    CHECK(cur <= prev);
    prev = cur;
  }
  CHECK_THROWS_AS(distribution_function(tent, h, -0.1), std::domain_error);
}

TEST_CASE("level set summary of the unit disk") {
  GridFunction disk = sample_2d(200, 1.1, [](double x, double y) {
    return x * x + y * y < 1.0 ? 1.0 : 0.0;
  });
  LevelSetSummary s = level_set_summary(disk, 0.5);
  CHECK(s.defined);
  CHECK(s.volume == doctest::Approx(M_PI).epsilon(0.01));
  CHECK(std::fabs(s.centroid[0]) <= disk.domain.spacing[0]);
  CHECK(std::fabs(s.centroid[1]) <= disk.domain.spacing[1]);
  CHECK(s.second_moment(0, 0) == doctest::Approx(0.25).epsilon(0.01));
  CHECK(s.second_moment(1, 1) == doctest::Approx(0.25).epsilon(0.01));
  CHECK(std::fabs(s.second_moment(0, 1)) < 0.01);

  LevelSetSummary empty = level_set_summary(disk, 2.0);
  CHECK_FALSE(empty.defined);
  CHECK(empty.volume == 0.0);
}

TEST_CASE("layer-cake identity") {
  GridFunction f = sample_2d(256, 1.0, [](double x, double y) {
    double t = 1.0 - (x * x + y * y) / 0.49;
    return t > 0.0 ? t * t : 0.0;
  });
  double mass = integral(f);
  double layered = 0.0;
  int nt = 400;
  double fmax = f.max_value();
  for (int i = 0; i < nt; ++i) {
    double t = fmax * (i + 0.5) / nt;
    layered += level_set_summary(f, t).volume * (fmax / nt);
  }
  CHECK(layered == doctest::Approx(mass).epsilon(0.01));
}

TEST_CASE("integral_Phi basics") {
  OrliczFunction phi{PowerPhi{2.0}};
  BoxDomain d = BoxDomain::centered_square(2, 1.0, 64);
  GridFunction zero(d, std::vector<double>(d.size(), 0.0));
  CHECK(integral_Phi(zero, phi) == 0.0);

  GridFunction plateau = sample_2d(256, 1.0, [](double x, double y) {
    return (std::fabs(x) < 0.5 && std::fabs(y) < 0.5) ? 1.0 : 0.0;
  });
  CHECK(integral_Phi(plateau, phi) == doctest::Approx(1.0).epsilon(0.02));

  // homogeneity: integral_Phi(2f) = 4 integral_Phi(f) exactly
  std::vector<double> doubled = plateau.values;
  for (double& v : doubled) v *= 2.0;
  GridFunction plateau2(plateau.domain, std::move(doubled));
  CHECK(integral_Phi(plateau2, phi) ==
        doctest::Approx(4.0 * integral_Phi(plateau, phi)).epsilon(1e-14));
}

TEST_CASE("resample_affine identity, shift, and mass preservation") {
  GridFunction f = sample_2d(128, 1.0, [](double x, double y) {
    double t = 1.0 - (x * x + y * y) / 0.16;
    return t > 0.0 ? t * t : 0.0;
  });

  GridFunction same =
      resample_affine(f, Mat::identity(2), Vec3{}, f.domain);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    CHECK(same.values[i] == doctest::Approx(f.values[i]).epsilon(1e-13));

  // one-grid-step translation: values shift by one node
  Vec3 shift{f.domain.spacing[0], 0.0, 0.0};
  GridFunction shifted = resample_affine(f, Mat::identity(2), shift, f.domain);
  BoxDomain d = f.domain;
  for (int i = 2; i < 126; ++i)
    for (int j = 2; j < 126; ++j)
      CHECK(shifted.values[d.flat_index({i, j, 0})] ==
            doctest::Approx(f.values[d.flat_index({i + 1, j, 0})])
                .epsilon(1e-12));

  Mat A = Mat::identity(2);
  A(0, 0) = 2.0;
  A(1, 1) = 0.5;
  GridFunction squeezed = resample_affine(f, A, Vec3{}, f.domain);
  CHECK(integral(squeezed) == doctest::Approx(integral(f)).epsilon(0.01));

  // support escape
  Mat big = Mat::identity(2);
  big(0, 0) = 0.1;
  big(1, 1) = 10.0;
  CHECK_THROWS_AS(resample_affine(f, big, Vec3{}, f.domain), std::domain_error);

  Mat skew = Mat::identity(2);
  skew(0, 0) = 1.5;  // det != 1
  CHECK_THROWS_AS(resample_affine(f, skew, Vec3{}, f.domain), std::domain_error);
}

TEST_CASE("grid file round trip is bit exact") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> val(0.0, 1.0);
  BoxDomain d = BoxDomain::centered_square(2, 1.0, 16);
  std::vector<double> vals(d.size(), 0.0);
  for (int i = 1; i < 15; ++i)
    for (int j = 1; j < 15; ++j) vals[d.flat_index({i, j, 0})] = val(rng);
  GridFunction f(d, std::move(vals));

  std::string path = "roundtrip_test.grid";
  write_grid(path, f);
  GridFunction g = read_grid(path);
  REQUIRE(g.values.size() == f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i)
    CHECK(g.values[i] == f.values[i]);  // exact, 17 significant digits
  CHECK(g.domain == f.domain);
  std::remove(path.c_str());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "affsym/starbody.hpp"

using namespace affsym;

TEST_CASE("SphereGrid weights") {
  SphereGrid c = SphereGrid::circle(360);
  CHECK(c.total_weight() == doctest::Approx(2 * M_PI).epsilon(1e-12));
  double sum = 0;
  for (int i = 0; i < c.size(); ++i) sum += c.weight(i);
  CHECK(sum == doctest::Approx(2 * M_PI).epsilon(1e-12));

  SphereGrid s = SphereGrid::sphere(32, 64);
  double sum3 = 0;
  for (int i = 0; i < s.size(); ++i) {
    sum3 += s.weight(i);
    Vec3 u = s.direction(i);
    CHECK(norm2(u, 3) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(sum3 == doctest::Approx(4 * M_PI).epsilon(1e-10));
}

TEST_CASE("unit disk and ball volumes") {
  StarBody disk = StarBody::ball(SphereGrid::circle(360), 1.0);
  CHECK(volume(disk) == doctest::Approx(M_PI).epsilon(1e-6));
  StarBody ball = StarBody::ball(SphereGrid::sphere(48, 96), 1.0);
  CHECK(volume(ball) == doctest::Approx(4.0 / 3.0 * M_PI).epsilon(1e-6));
}

TEST_CASE("ellipse area, gauge, support") {
  // ellipse x^2/4 + y^2/0.25 <= 1: a = 2, b = 0.5
  Mat Q = Mat::identity(2);
  Q(0, 0) = 0.25;
  Q(1, 1) = 4.0;
  StarBody e = StarBody::ellipsoid(SphereGrid::circle(720), Q);
  CHECK(volume(e) == doctest::Approx(M_PI * 2.0 * 0.5).epsilon(0.005));

  // gauge at the semi-axis points
  CHECK(gauge(e, {2.0, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(gauge(e, {0.0, 0.5, 0.0}) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(gauge(e, {1.0, 0.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(gauge(e, {0.0, 0.0, 0.0}) == 0.0);

  // support function of an ellipsoid: h(u) = sqrt(u' Q^{-1} u)
  CHECK(support(e, {1.0, 0.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(support(e, {0.0, 1.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-3));
  double s = std::sqrt(0.5);
  double h_diag = std::sqrt(4.0 * 0.5 + 0.25 * 0.5);
  CHECK(support(e, {s, s, 0.0}) == doctest::Approx(h_diag).epsilon(1e-3));
}

TEST_CASE("gauge positive homogeneity and triangle inequality") {
  Mat Q = Mat::identity(2);
  Q(0, 0) = 0.7;
  Q(0, 1) = Q(1, 0) = 0.2;
  Q(1, 1) = 1.8;
  StarBody e = StarBody::ellipsoid(SphereGrid::circle(720), Q);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int t = 0; t < 1000; ++t) {
    Vec3 x{coord(rng), coord(rng), 0.0};
    Vec3 y{coord(rng), coord(rng), 0.0};
    double gx = gauge(e, x), gy = gauge(e, y);
    CHECK(gauge(e, scaled(x, 2.5)) == doctest::Approx(2.5 * gx).epsilon(1e-9));
    // convex body: subadditive up to radial interpolation error
    CHECK(gauge(e, add(x, y)) <= gx + gy + 1e-4 * (gx + gy));
  }
}

TEST_CASE("polar identities") {
  SphereGrid g = SphereGrid::circle(720);

  SUBCASE("polar of a ball of radius r is the ball of radius 1/r") {
    StarBody b = StarBody::ball(g, 2.0);
    StarBody p = polar(b);
    for (int i = 0; i < g.size(); ++i)
      CHECK(p.radii[i] == doctest::Approx(0.5).epsilon(1e-9));
  }

  SUBCASE("bipolar round trip on an ellipse") {
    Mat Q = Mat::identity(2);
    Q(0, 0) = 0.5;
    Q(1, 1) = 2.0;
    StarBody e = StarBody::ellipsoid(g, Q);
    StarBody ee = polar(polar(e));
    CHECK(hausdorff(e, ee) <= 1e-3);
  }

  SUBCASE("polar of an ellipsoid is the Q^{-1} ellipsoid") {
    Mat Q = Mat::identity(2);
    Q(0, 0) = 0.25;
    Q(1, 1) = 4.0;
    StarBody e = StarBody::ellipsoid(g, Q);
    StarBody p = polar(e);
    Mat Qi = Q.inverse();
    StarBody expect = StarBody::ellipsoid(g, Qi);
    CHECK(hausdorff(p, expect) <= 2e-3);
  }
}

TEST_CASE("hausdorff distance square vs disk") {
  // unit disk vs its circumscribing square [-1,1]^2: distance sqrt(2) - 1
  SphereGrid g = SphereGrid::circle(1440);
  StarBody disk = StarBody::ball(g, 1.0);
  std::vector<double> sq(g.size());
  for (int i = 0; i < g.size(); ++i) {
    Vec3 u = g.direction(i);
    sq[i] = 1.0 / std::max(std::fabs(u[0]), std::fabs(u[1]));
  }
  StarBody square(g, sq);
  CHECK(hausdorff(disk, square) ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(0.01));
  CHECK(hausdorff(disk, disk) == 0.0);
  // symmetry
  CHECK(hausdorff(disk, square) == doctest::Approx(hausdorff(square, disk)));
}

TEST_CASE("chord_along on an ellipse") {
  Mat Q = Mat::identity(2);
  Q(0, 0) = 0.25;  // a = 2
  Q(1, 1) = 1.0;   // b = 1
  StarBody e = StarBody::ellipsoid(SphereGrid::circle(1440), Q);

  // vertical chord at x = 1: y^2 <= 1 - 1/4 -> |y| <= sqrt(3)/2
  auto c = chord_along(e, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0});
  REQUIRE(c.has_value());
  double half = std::sqrt(3.0) / 2.0;
  CHECK(c->first == doctest::Approx(-half).epsilon(1e-3));
  CHECK(c->second == doctest::Approx(half).epsilon(1e-3));

  // chord entirely outside
  CHECK_FALSE(chord_along(e, {2.5, 0.0, 0.0}, {0.0, 1.0, 0.0}).has_value());
}

TEST_CASE("steiner_symmetral_body") {
  SphereGrid g = SphereGrid::circle(720);

  SUBCASE("symmetric body is fixed") {
    Mat Q = Mat::identity(2);
    Q(0, 0) = 0.5;
    Q(1, 1) = 2.0;
    StarBody e = StarBody::ellipsoid(g, Q);
    StarBody es = steiner_symmetral_body(e);
    CHECK(hausdorff(e, es) <= 5e-3);
  }

  SUBCASE("volume is preserved on a tilted ellipse") {
    Mat R = Mat::rotation2d(0.6);
    Mat D = Mat::identity(2);
    D(0, 0) = 1.0 / (1.4 * 1.4);
    D(1, 1) = 1.4 * 1.4;
    Mat Q = R * D * R.transpose();
    StarBody e = StarBody::ellipsoid(g, Q);
    StarBody es = steiner_symmetral_body(e);
    CHECK(volume(es) == doctest::Approx(volume(e)).epsilon(0.005));
    // symmetric under y -> -y
    for (int i = 0; i < g.size(); ++i) {
      Vec3 u = g.direction(i);
      Vec3 ur{u[0], -u[1], 0.0};
      CHECK(es.radial(ur) == doctest::Approx(es.radii[i]).epsilon(1e-6));
    }
  }

  SUBCASE("triangle maps to a symmetric body of equal volume") {
    // triangle with vertices (1.2,0), (-0.6,0.9), (-0.6,-0.9), origin inside
    auto seg_radius = [](const Vec3& a, const Vec3& b, const Vec3& u) {
      // intersection of ray t*u with segment [a,b], t>0, or 0
      double det = u[0] * (a[1] - b[1]) - u[1] * (a[0] - b[0]);
      if (std::fabs(det) < 1e-14) return 0.0;
      double t = (a[0] * (a[1] - b[1]) - a[1] * (a[0] - b[0])) / det;
      double s = (u[1] * a[0] - u[0] * a[1]) / -det;
      return (t > 0 && s >= -1e-12 && s <= 1 + 1e-12) ? t : 0.0;
    };
    Vec3 v0{1.2, 0.0, 0.0}, v1{-0.6, 0.9, 0.0}, v2{-0.6, -0.9, 0.0};
    std::vector<double> r(g.size());
    for (int i = 0; i < g.size(); ++i) {
      Vec3 u = g.direction(i);
      r[i] = std::max({seg_radius(v0, v1, u), seg_radius(v1, v2, u),
                       seg_radius(v2, v0, u)});
    }
    StarBody tri(g, r);
    double area = 0.5 * 1.8 * 1.8;  // base 1.8, height 1.8
    CHECK(volume(tri) == doctest::Approx(area).epsilon(0.005));
    StarBody tris = steiner_symmetral_body(tri);
    CHECK(volume(tris) == doctest::Approx(area).epsilon(0.01));
    for (int i = 0; i < g.size(); ++i) {
      Vec3 u = g.direction(i);
      CHECK(tris.radial({u[0], -u[1], 0.0}) ==
            doctest::Approx(tris.radii[i]).epsilon(1e-5));
    }
  }

  SUBCASE("3-D tilted ellipsoid: volume preserved") {
    SphereGrid gs = SphereGrid::sphere(48, 96);
    Mat R = Mat::rotation3d({0.0, 1.0, 0.0}, 0.5);
    Mat D = Mat::identity(3);
    D(0, 0) = 1.0 / 1.69;
    D(2, 2) = 1.69;
    Mat Q = R * D * R.transpose();
    StarBody e = StarBody::ellipsoid(gs, Q);
    StarBody es = steiner_symmetral_body(e);
    CHECK(volume(es) == doctest::Approx(volume(e)).epsilon(0.01));
  }
}

TEST_CASE("containment_lemma2f_check") {
  SphereGrid g = SphereGrid::circle(720);
  Mat R = Mat::rotation2d(0.4);
  Mat D = Mat::identity(2);
  D(0, 0) = 1.0 / 2.25;
  D(1, 1) = 2.25;
  Mat Q = R * D * R.transpose();
  StarBody e = StarBody::ellipsoid(g, Q);
  StarBody es = steiner_symmetral_body(e);

  SUBCASE("symmetral fits in itself") {
    ContainmentCheck c = containment_lemma2f_check(e, es, 64);
    CHECK(c.pass);
    CHECK(c.worst_gauge <= 1.001 + 1e-9);
    CHECK(c.chords_checked >= 3);
  }

  SUBCASE("shrunk target fails") {
    std::vector<double> shrunk = es.radii;
    for (double& v : shrunk) v *= 0.9;
    ContainmentCheck c = containment_lemma2f_check(e, StarBody(g, shrunk), 64);
    CHECK_FALSE(c.pass);
    CHECK(c.worst_gauge >= 1.05);
  }

  SUBCASE("inflated target passes with margin") {
    std::vector<double> grown = es.radii;
    for (double& v : grown) v *= 1.1;
    ContainmentCheck c = containment_lemma2f_check(e, StarBody(g, grown), 64);
    CHECK(c.pass);
    CHECK(c.worst_gauge <= 1.0 / 1.05);
  }
}

TEST_CASE("body file round trip") {
  Mat Q = Mat::identity(2);
  Q(0, 0) = 0.8;
  Q(1, 1) = 1.3;
  StarBody e = StarBody::ellipsoid(SphereGrid::circle(360), Q);
  std::string path = "/tmp/affsym_test_body.json";
  write_body(path, e);
  StarBody back = read_body(path);
  CHECK(back.grid == e.grid);
  REQUIRE(back.radii.size() == e.radii.size());
  for (std::size_t i = 0; i < e.radii.size(); ++i)
    CHECK(back.radii[i] == e.radii[i]);  // bit-exact
  std::remove(path.c_str());
}

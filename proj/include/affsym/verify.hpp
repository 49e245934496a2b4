#pragma once

#include <map>
#include <string>
#include <vector>

#include "affsym/energy.hpp"
#include "affsym/grid.hpp"
#include "affsym/orlicz.hpp"
#include "affsym/rearrange.hpp"
#include "affsym/starbody.hpp"

namespace affsym {

struct VerificationReport {
  std::string label;
  double energy_original = 0;
  double energy_symmetrized = 0;
  double margin = 0;  // (E_f - E_sym) / E_f
  double tolerance_used = 0;
  bool inequality_pass = false;
  std::map<std::string, bool> hypothesis_flags;
  std::vector<std::string> diagnostics;

  std::string to_json() const;
  static std::string csv_header();
  std::string to_csv_row() const;
};

struct EqualityVerdict {
  bool is_equality_case = false;
  Vec3 fitted_center{};
  Mat fitted_shape{};  // unit-determinant common level-set shape
  std::vector<double> per_level_fit_error;
  double energy_gap = 0;  // Schwarz margin, recomputed for cross-checking
  std::vector<std::string> diagnostics;

  std::string to_json() const;
};

struct AffineInvarianceReport {
  double max_deviation = 0;
  int trials_run = 0;
  int trials_skipped = 0;
  std::vector<double> deviations;

  std::string to_json() const;
};

struct BallContainmentReport {
  double worst_gauge = 0;
  bool pass = false;
  double volume_original = 0;
  double volume_symmetrized = 0;
  int chords_checked = 0;

  std::string to_json() const;
};

struct ChordMidpointResult {
  bool pass = false;
  double residual = 0;  // max orthogonal midpoint residual / diam K
  int chords_used = 0;
};

/// Fraction of support nodes whose gradient is below 1e-8 * max|grad f| while
/// f < max f: the grid surrogate of the critical-set hypothesis.
double critical_set_fraction(const GridFunction& f);

VerificationReport verify_steiner_ps(const GridFunction& f,
                                     const OrliczFunction& phi,
                                     const Vec3& direction, double tol,
                                     int quadrature_size = 720);

VerificationReport verify_schwarz_ps(const GridFunction& f,
                                     const OrliczFunction& phi, double tol,
                                     int quadrature_size = 720);

AffineInvarianceReport verify_affine_invariance(const GridFunction& f,
                                                const OrliczFunction& phi,
                                                int trials, unsigned seed,
                                                int quadrature_size = 720);

BallContainmentReport verify_ball_containment(const GridFunction& f,
                                              const OrliczFunction& phi,
                                              const Vec3& direction,
                                              int samples, double tol = 0.02,
                                              int quadrature_size = 720);

EqualityVerdict detect_equality_case(const GridFunction& f,
                                     const OrliczFunction& phi, int levels,
                                     int quadrature_size = 720);

ChordMidpointResult chord_midpoint_affine_test(const StarBody& K, const Vec3& u,
                                               int chords);

}  // namespace affsym

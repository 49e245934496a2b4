#pragma once

#include <optional>
#include <string>
#include <vector>

#include "affsym/grid.hpp"

namespace affsym {

struct Fixture {
  std::string name;
  GridFunction f;
  bool equality_expected = false;
  std::optional<double> expected_energy;  // Power(2), when known analytically
  double expected_energy_tol = 0.01;
};

/// Deterministic regression corpus on the box [-1,1]^2 with `cells` cells per
/// axis: cone, radial bump, three ellipsoidal bumps, two-bump sums,
/// translated / rotated variants and other non-ellipsoidal profiles.
std::vector<Fixture> make_corpus(unsigned seed, int cells = 256);

/// Writes grid files plus a manifest.json of expected properties.
void write_corpus(unsigned seed, const std::string& out_dir, int cells = 256);

}  // namespace affsym

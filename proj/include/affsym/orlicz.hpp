#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace affsym {

/// phi(t) = |t|^p, p > 1.
struct PowerPhi {
  double p;
};

/// phi(t) = (1-lambda) max(t,0)^p + lambda max(-t,0)^p, p > 1, lambda in [0,1].
struct AsymmetricPhi {
  double p;
  double lambda;
};

/// phi(t) = sup_j max(a_j t + b_j, 0).
struct PiecewiseAffinePhi {
  std::vector<std::pair<double, double>> pieces;  // (a_j, b_j)
};

/// An admissible convexity profile: convex, phi(0) = 0, strictly monotone on
/// at least one half-line. Immutable after construction.
class OrliczFunction {
 public:
  explicit OrliczFunction(PowerPhi fam);
  explicit OrliczFunction(AsymmetricPhi fam);
  explicit OrliczFunction(PiecewiseAffinePhi fam);

  double phi(double t) const;

  /// Phi(t) = max{phi(t), phi(-t)} for t >= 0.
  double Phi(double t) const;

  /// c_phi = max{c > 0 : Phi(c) <= 1}, i.e. the unique root of Phi(c) = 1.
  double critical_scale() const { return c_phi_; }

  bool strictly_convex() const { return strictly_convex_; }

  /// Degree p when phi is positively homogeneous of degree p on each
  /// half-line (Power, Asymmetric), nullopt otherwise.
  std::optional<double> homogeneity_degree() const;

  /// For homogeneous families: phi(t) = cp * t^p for t > 0 and
  /// cm * |t|^p for t < 0.
  std::pair<double, double> homogeneous_coefficients() const;

  /// Parses "power:p=2", "asym:p=2,lambda=0.5" or "pwl:[(a,b),...]".
  static OrliczFunction parse(const std::string& spec);

  std::string describe() const;

 private:
  std::variant<PowerPhi, AsymmetricPhi, PiecewiseAffinePhi> family_;
  double c_phi_ = 0.0;
  bool strictly_convex_ = false;

  void validate_and_finish();
};

}  // namespace affsym

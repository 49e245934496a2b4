#include "affsym/orlicz.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace affsym {

namespace {

double power_abs(double t, double p) {
  double a = std::fabs(t);
  if (p == 2.0) return a * a;
  if (p == 3.0) return a * a * a;
  return std::pow(a, p);
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument("orlicz: " + msg);
}

}  // namespace

OrliczFunction::OrliczFunction(PowerPhi fam) : family_(fam) {
  require(fam.p > 1.0, "power family needs p > 1");
  strictly_convex_ = true;
  validate_and_finish();
}

OrliczFunction::OrliczFunction(AsymmetricPhi fam) : family_(fam) {
  require(fam.p > 1.0, "asymmetric family needs p > 1");
  require(fam.lambda >= 0.0 && fam.lambda <= 1.0, "lambda must be in [0,1]");
  // lambda in {0,1} vanishes on one half-line: still in class N, not N_s.
  strictly_convex_ = fam.lambda > 0.0 && fam.lambda < 1.0;
  validate_and_finish();
}

OrliczFunction::OrliczFunction(PiecewiseAffinePhi fam) : family_(std::move(fam)) {
  const auto& pieces = std::get<PiecewiseAffinePhi>(family_).pieces;
  require(!pieces.empty(), "piecewise family needs at least one piece");
  for (const auto& [a, b] : pieces) {
    require(std::isfinite(a) && std::isfinite(b), "non-finite piece");
    require(b <= 0.0, "piece with b > 0 breaks phi(0) = 0");
  }
  strictly_convex_ = false;
  validate_and_finish();
}

void OrliczFunction::validate_and_finish() {
  require(std::fabs(phi(0.0)) == 0.0, "phi(0) != 0");

  // c_phi: closed form for the homogeneous families, bisection otherwise.
  if (const auto* pw = std::get_if<PowerPhi>(&family_)) {
    c_phi_ = 1.0;
    (void)pw;
    return;
  }
  if (const auto* as = std::get_if<AsymmetricPhi>(&family_)) {
    // Phi(t) = max(1-lambda, lambda) t^p.
    double coef = std::max(1.0 - as->lambda, as->lambda);
    c_phi_ = std::pow(1.0 / coef, 1.0 / as->p);
    return;
  }

  // Bracket [lo, hi] with Phi(hi) >= 1, expanding by doubling.
  double hi = 1.0;
  int guard = 0;
  while (Phi(hi) < 1.0) {
    hi *= 2.0;
    if (++guard > 2100 || hi > 1e308)
      throw std::domain_error("orlicz: Phi stays below 1, no critical scale");
  }
  double lo = 0.0;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    (Phi(mid) < 1.0 ? lo : hi) = mid;
  }
  c_phi_ = 0.5 * (lo + hi);
}

double OrliczFunction::phi(double t) const {
  if (!std::isfinite(t)) throw std::domain_error("orlicz: non-finite argument");
  if (const auto* pw = std::get_if<PowerPhi>(&family_)) {
    return power_abs(t, pw->p);
  }
  if (const auto* as = std::get_if<AsymmetricPhi>(&family_)) {
    double plus = t > 0.0 ? power_abs(t, as->p) : 0.0;
    double minus = t < 0.0 ? power_abs(t, as->p) : 0.0;
    return (1.0 - as->lambda) * plus + as->lambda * minus;
  }
  const auto& pieces = std::get<PiecewiseAffinePhi>(family_).pieces;
  double best = 0.0;
  for (const auto& [a, b] : pieces) best = std::max(best, a * t + b);
  return best;
}

double OrliczFunction::Phi(double t) const {
  if (t < 0.0) throw std::domain_error("orlicz: Phi needs t >= 0");
  return std::max(phi(t), phi(-t));
}

std::optional<double> OrliczFunction::homogeneity_degree() const {
  if (const auto* pw = std::get_if<PowerPhi>(&family_)) return pw->p;
  if (const auto* as = std::get_if<AsymmetricPhi>(&family_)) return as->p;
  return std::nullopt;
}

std::pair<double, double> OrliczFunction::homogeneous_coefficients() const {
  if (std::get_if<PowerPhi>(&family_)) return {1.0, 1.0};
  if (const auto* as = std::get_if<AsymmetricPhi>(&family_))
    return {1.0 - as->lambda, as->lambda};
  throw std::logic_error("orlicz: family is not homogeneous");
}

OrliczFunction OrliczFunction::parse(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);

  auto get_field = [&rest](const std::string& key) -> double {
    auto pos = rest.find(key + "=");
    if (pos == std::string::npos)
      throw std::invalid_argument("orlicz: missing field '" + key + "'");
    return std::stod(rest.substr(pos + key.size() + 1));
  };

  if (kind == "power") return OrliczFunction(PowerPhi{get_field("p")});
  if (kind == "asym")
    return OrliczFunction(AsymmetricPhi{get_field("p"), get_field("lambda")});
  if (kind == "pwl") {
    PiecewiseAffinePhi fam;
    std::istringstream in(rest);
    char c;
    while (in >> c) {
      if (c != '(') continue;
      double a, b;
      char comma, close;
      if (!(in >> a >> comma >> b >> close) || comma != ',' || close != ')')
        throw std::invalid_argument("orlicz: malformed pwl spec: " + spec);
      fam.pieces.emplace_back(a, b);
    }
    return OrliczFunction(std::move(fam));
  }
  throw std::invalid_argument("orlicz: unknown family '" + kind + "'");
}

std::string OrliczFunction::describe() const {
  char buf[128];
  if (const auto* pw = std::get_if<PowerPhi>(&family_)) {
    std::snprintf(buf, sizeof buf, "power:p=%g", pw->p);
    return buf;
  }
  if (const auto* as = std::get_if<AsymmetricPhi>(&family_)) {
    std::snprintf(buf, sizeof buf, "asym:p=%g,lambda=%g", as->p, as->lambda);
    return buf;
  }
  std::string out = "pwl:[";
  const auto& pieces = std::get<PiecewiseAffinePhi>(family_).pieces;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s(%g,%g)", i ? "," : "", pieces[i].first,
                  pieces[i].second);
    out += buf;
  }
  return out + "]";
}

}  // namespace affsym

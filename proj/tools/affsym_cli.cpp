// Command-line front end: symmetrization, energy computation, verification
// runs, convergence studies and corpus generation over the text grid format.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "affsym/corpus.hpp"
#include "affsym/energy.hpp"
#include "affsym/grid.hpp"
#include "affsym/orlicz.hpp"
#include "affsym/rearrange.hpp"
#include "affsym/verify.hpp"

namespace {

using namespace affsym;

constexpr int kExitIo = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitVerificationFailed = 3;

Vec3 parse_direction(const std::string& spec, int dim) {
  if (spec.rfind("axis:", 0) == 0) {
    int axis = std::stoi(spec.substr(5));
    if (axis < 0 || axis >= dim)
      throw std::domain_error("direction axis out of range: " + spec);
    Vec3 u{};
    u[axis] = 1.0;
    return u;
  }
  if (spec.rfind("vec:", 0) == 0) {
    Vec3 u{};
    std::istringstream in(spec.substr(4));
    char comma;
    in >> u[0] >> comma >> u[1];
    if (dim == 3) in >> comma >> u[2];
    if (!in) throw std::domain_error("malformed direction: " + spec);
    return normalized(u, dim);
  }
  throw std::domain_error("unknown direction spec: " + spec);
}

std::vector<Vec3> parse_directions(const std::string& spec, int dim,
                                   unsigned fallback_seed, int count_hint) {
  if (spec == "axes") {
    std::vector<Vec3> dirs;
    for (int k = 0; k < dim; ++k) {
      Vec3 u{};
      u[k] = 1.0;
      dirs.push_back(u);
    }
    return dirs;
  }
  if (spec.rfind("random", 0) == 0) {
    unsigned seed = fallback_seed;
    int count = count_hint;
    if (spec.size() > 6) {  // random:<seed>:<count>
      auto p1 = spec.find(':');
      auto p2 = spec.find(':', p1 + 1);
      seed = static_cast<unsigned>(std::stoul(spec.substr(p1 + 1, p2 - p1 - 1)));
      if (p2 != std::string::npos) count = std::stoi(spec.substr(p2 + 1));
    }
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vec3> dirs;
    for (int i = 0; i < count; ++i) {
      Vec3 u{};
      for (int k = 0; k < dim; ++k) u[k] = gauss(rng);
      dirs.push_back(normalized(u, dim));
    }
    return dirs;
  }
  // file with one unit vector per line
  std::ifstream in(spec);
  if (!in) throw std::runtime_error("cannot open direction file: " + spec);
  std::vector<Vec3> dirs;
  Vec3 u{};
  while (in >> u[0] >> u[1] && (dim == 2 || in >> u[2]))
    dirs.push_back(normalized(u, dim));
  if (dirs.empty()) throw std::runtime_error("empty direction file: " + spec);
  return dirs;
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body << "\n";
}

void append_csv(const std::string& path, const VerificationReport& rep) {
  bool fresh = !std::filesystem::exists(path);
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot write " + path);
  if (fresh) out << VerificationReport::csv_header() << "\n";
  out << rep.to_csv_row() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steiner/Schwarz symmetrization and affine Orlicz-Sobolev "
               "energy toolkit"};
  app.require_subcommand(1);

  std::string input, output, phi_spec = "power:p=2", direction = "axis:0";
  std::string csv_path, directions_spec = "random";
  int quadrature = 720, samples = 256, levels = 12, trials = 10,
      max_iters = 200, cells = 256;
  double tol = 0.01, stop_tol = 0.02;
  unsigned seed = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_input) {
    if (needs_input)
      cmd->add_option("input", input, "input grid file")->required();
    cmd->add_option("-o,--out", output, "output path");
    cmd->add_option("--phi", phi_spec, "orlicz spec (power:p=2, asym:..., pwl:...)");
    cmd->add_option("--quadrature", quadrature, "directions on S^{n-1}");
    cmd->add_option("--tol", tol, "verification tolerance");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--csv", csv_path, "append a CSV row to this file");
  };

  auto* sym = app.add_subcommand("symmetrize", "Steiner rearrangement");
  add_common(sym, true);
  sym->add_option("--direction", direction, "axis:<k> or vec:x,y[,z]");

  auto* energy_cmd = app.add_subcommand("energy", "affine energy E_phi(f)");
  add_common(energy_cmd, true);

  auto* vst = app.add_subcommand("verify-steiner", "E(f^s) <= E(f) check");
  add_common(vst, true);
  vst->add_option("--direction", direction, "axis:<k> or vec:x,y[,z]");

  auto* vsc = app.add_subcommand("verify-schwarz", "E(f*) <= E(f) check");
  add_common(vsc, true);

  auto* vaf = app.add_subcommand("verify-affine", "SL(n) invariance check");
  add_common(vaf, true);
  vaf->add_option("--trials", trials, "number of SL(n) draws");

  auto* vco = app.add_subcommand("verify-containment",
                                 "(B(f))^s inside B(f^s) check");
  add_common(vco, true);
  vco->add_option("--direction", direction, "axis:<k> or vec:x,y[,z]");
  vco->add_option("--samples", samples, "boundary chords sampled");

  auto* deq = app.add_subcommand("detect-equality", "equality-case detector");
  add_common(deq, true);
  deq->add_option("--levels", levels, "level count");

  auto* cvg = app.add_subcommand("converge", "iterated Steiner to Schwarz");
  add_common(cvg, true);
  cvg->add_option("--directions", directions_spec,
                  "axes | random[:seed:count] | direction file");
  cvg->add_option("--max-iters", max_iters, "iteration cap");
  cvg->add_option("--stop-tol", stop_tol, "relative L1 stopping distance");

  auto* gen = app.add_subcommand("gen-corpus", "write the regression corpus");
  gen->add_option("out_dir", output, "output directory")->required();
  gen->add_option("--seed", seed, "corpus seed");
  gen->add_option("--cells", cells, "cells per axis");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      write_corpus(seed, output, cells);
      std::cout << "corpus written to " << output << "\n";
      return 0;
    }

    GridFunction f = read_grid(input);
    OrliczFunction phi = OrliczFunction::parse(phi_spec);

    if (sym->parsed()) {
      Vec3 u = parse_direction(direction, f.domain.dim);
      SteinerPlan plan = SteinerPlan::for_direction(f.domain.dim, u);
      GridFunction fs = steiner_rearrange(f, plan);
      write_grid(output.empty() ? input + ".sym" : output, fs);
      return 0;
    }

    if (energy_cmd->parsed()) {
      EnergyResult res = affine_energy(f, phi, quadrature);
      nlohmann::json j;
      j["energy"] = res.energy;
      j["ball_volume"] = res.ball_volume;
      j["bounds"] = {res.norm_bounds.first, res.norm_bounds.second};
      j["quadrature"] = res.quadrature_size;
      std::string body = j.dump(2);
      std::cout << body << "\n";
      if (!output.empty()) {
        write_text(output, body);
        write_body(output + ".body", res.ball);
      }
      return 0;
    }

    if (vst->parsed() || vsc->parsed()) {
      VerificationReport rep =
          vst->parsed()
              ? verify_steiner_ps(f, phi,
                                  parse_direction(direction, f.domain.dim), tol,
                                  quadrature)
              : verify_schwarz_ps(f, phi, tol, quadrature);
      std::cout << rep.to_json() << "\n";
      if (!output.empty()) write_text(output, rep.to_json());
      if (!csv_path.empty()) append_csv(csv_path, rep);
      return rep.inequality_pass ? 0 : kExitVerificationFailed;
    }

    if (vaf->parsed()) {
      AffineInvarianceReport rep =
          verify_affine_invariance(f, phi, trials, seed, quadrature);
      std::cout << rep.to_json() << "\n";
      if (!output.empty()) write_text(output, rep.to_json());
      return rep.max_deviation <= tol * 2.0 ? 0 : kExitVerificationFailed;
    }

    if (vco->parsed()) {
      BallContainmentReport rep = verify_ball_containment(
          f, phi, parse_direction(direction, f.domain.dim), samples, tol,
          quadrature);
      std::cout << rep.to_json() << "\n";
      if (!output.empty()) write_text(output, rep.to_json());
      return rep.pass ? 0 : kExitVerificationFailed;
    }

    if (deq->parsed()) {
      EqualityVerdict verdict = detect_equality_case(f, phi, levels, quadrature);
      std::cout << verdict.to_json() << "\n";
      if (!output.empty()) write_text(output, verdict.to_json());
      return 0;
    }

    if (cvg->parsed()) {
      std::vector<Vec3> dirs =
          parse_directions(directions_spec, f.domain.dim, seed, max_iters);
      double mass = integral(f);
      SteinerIterationResult res =
          iterate_steiner(f, dirs, stop_tol * mass, max_iters);
      std::string base = output.empty() ? input + ".converge" : output;
      write_grid(base + ".grid", res.result);
      std::ofstream trace(base + ".csv");
      trace << "iteration,l1_distance,l1_distance_relative\n";
      trace.precision(17);
      for (std::size_t i = 0; i < res.distances.size(); ++i)
        trace << i << ',' << res.distances[i] << ','
              << res.distances[i] / mass << "\n";
      std::cout << (res.converged ? "converged" : "not-converged") << " after "
                << res.distances.size() - 1 << " iterations, final relative "
                << "distance " << res.distances.back() / mass << "\n";
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "precondition violation: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::domain_error& e) {
    std::cerr << "precondition violation: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}

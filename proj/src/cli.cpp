#include "sp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sp/checker.hpp"
#include "sp/errors.hpp"
#include "sp/geometry.hpp"
#include "sp/io.hpp"
#include "sp/observables.hpp"
#include "sp/phases.hpp"

namespace sp {

namespace {

std::uint64_t env_seed() {
  const char* s = std::getenv("SPCHECK_SEED");
  if (!s) return 0;
  try {
    return std::stoull(s);
  } catch (const std::logic_error&) {
    std::cerr << "warning: ignoring unparsable SPCHECK_SEED\n";
    return 0;
  }
}

void print_text(const SpModel& m, const CheckConfig& cfg,
                const std::vector<AxiomReport>& reports) {
  std::cout << "model " << model_descriptor(m) << ", samples " << cfg.samples
            << ", seed " << cfg.seed << "\n";
  for (const auto& r : reports) {
    std::cout << std::left << std::setw(18) << to_string(r.axiom)
              << std::setw(16) << to_string(r.verdict) << "margin "
              << std::setw(14) << std::setprecision(6) << std::scientific
              << r.worst_margin << std::defaultfloat << " samples "
              << r.samples << "\n";
  }
  std::cout << (all_pass(reports) ? "ALL PASS" : "FAILED") << "\n";
}

int run_reports(const std::string& model_arg, const CheckConfig& cfg,
                double tol, bool text, int fuzz_rounds) {
  Tolerances tolcfg;
  if (tol > 0.0) {
    tolcfg.tol_eq = tol;
    tolcfg.tol_orth = tol;
  }
  SpModel m = load_model(model_arg, tolcfg);
  std::vector<AxiomReport> reports =
      fuzz_rounds > 0 ? run_fuzz(m, cfg, fuzz_rounds) : run_suite(m, cfg);
  if (text) {
    print_text(m, cfg, reports);
  } else {
    std::cout << report_document(m, cfg, reports).dump(2) << "\n";
  }
  return all_pass(reports) ? 0 : 1;
}

// Two-outcome axis demo: orthogonal-axis state against an equal
// superposition must transition with probability exactly one half.
int demo_spin_half() {
  SpModel m = make_hilbert(2);
  State plus_z = canonical_state(m, 0);
  Vector vx(2);
  vx << Complex(1 / std::sqrt(2.0), 0), Complex(1 / std::sqrt(2.0), 0);
  State plus_x = HilbertState{vx};

  double p = similarity(m, plus_z, plus_x);
  OrthoSet axis = make_ortho_set(m, {plus_z});
  State o = o_project(m, plus_x, axis);
  double partition = similarity(m, plus_x, plus_z) + similarity(m, plus_x, o);

  std::cout << std::setprecision(17);
  std::cout << "p(+z, +x)            = " << p << "\n";
  std::cout << "residual state       = o_project(+x, {+z})\n";
  std::cout << "p(+x,+z) + p(+x, o)  = " << partition << "\n";

  bool ok = std::abs(p - 0.5) <= 1e-12 && std::abs(partition - 1.0) <= 1e-12;
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

// Two-path perturbation families: second-order defect law and tightness of
// the transport bound at the first path.
int demo_two_path_family() {
  SpModel m = make_hilbert(2);
  bool ok = true;
  std::cout << std::setprecision(6) << std::scientific;
  for (double r : {0.2, 0.5, 0.8}) {
    for (double eps : {1e-2, 1e-3}) {
      Vector x(2), y(2);
      x << Complex(std::sqrt(r), 0), Complex(std::sqrt(1 - r), 0);
      y << Complex(std::sqrt(r - eps), 0), Complex(std::sqrt(1 - r + eps), 0);
      State sx = HilbertState{x};
      State sy = HilbertState{y};
      double defect = similarity_defect(m, sx, sy);
      double law = eps * eps / (4 * r * (1 - r));
      double rel = std::abs(defect - law) / law;
      State u = canonical_state(m, 0);
      double slack = continuity_bound(m, sx, sy, u);
      double threshold = std::sqrt(defect);
      bool row_ok = rel <= 0.05 && slack < threshold;
      ok = ok && row_ok;
      std::cout << "r=" << r << " eps=" << eps << "  1-p=" << defect
                << "  second-order law=" << law << "  rel.err=" << rel
                << "  slack(z=u)=" << slack << " < sqrt(1-p)=" << threshold
                << (row_ok ? "  ok" : "  VIOLATION") << "\n";
    }
  }
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

// Spectral-bridge demo on the three two-level axis operators: means,
// probability redistribution, and the interference-sign flip.
int demo_spectral_bridge() {
  SpModel m = make_hilbert(2);
  bool ok = true;
  std::cout << std::setprecision(17);

  Matrix sz(2, 2), sx(2, 2);
  sz << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
  sx << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);

  Observable oz = hermitian_to_observable(m, sz);
  Vector a8(2);
  a8 << Complex(std::sqrt(0.8), 0), Complex(std::sqrt(0.2), 0);
  State a = HilbertState{a8};
  double mean = mean_value(m, oz, a);
  std::cout << "axis operator mean at (sqrt(.8), sqrt(.2)) = " << mean << "\n";
  ok = ok && std::abs(mean - 0.6) <= 1e-12;

  // Redistribution under values (2, 1) on the same eigenbasis.
  Matrix h21(2, 2);
  h21 << Complex(2, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0);
  Observable o21 = hermitian_to_observable(m, h21);
  State ra = apply(m, o21, a);
  double p0 = similarity(m, ra, canonical_state(m, 0));
  double expect = 4 * 0.8 / (4 * 0.8 + 0.2);
  std::cout << "redistributed weight on first axis      = " << p0
            << " (expected " << expect << ")\n";
  ok = ok && std::abs(p0 - expect) <= 1e-12;

  // Sign flip of the interference cosine under values (1, -1).
  Vector b2(2);
  b2 << Complex(1 / std::sqrt(2.0), 0),
      std::polar(1 / std::sqrt(2.0), 1.0471975511965976);  // pi/3
  State b = HilbertState{b2};
  OrthoSet e0 = make_ortho_set(m, {canonical_state(m, 0)});
  OrthoSet e1 = make_ortho_set(m, {canonical_state(m, 1)});
  PhaseContext ctx = make_phase_context(m, span_of(m, e0), span_of(m, e1));
  Vector ap(2);
  ap << Complex(1 / std::sqrt(2.0), 0), Complex(1 / std::sqrt(2.0), 0);
  State ahalf = HilbertState{ap};
  auto w_before = omega(m, ctx, ahalf, b);
  State rz = apply(m, oz, ahalf);
  auto w_after = omega(m, ctx, rz, b);
  ok = ok && w_before && w_after;
  if (w_before && w_after) {
    std::cout << "omega before                             = " << *w_before
              << "\n";
    std::cout << "omega after sign-mixed action            = " << *w_after
              << "\n";
    ok = ok && std::abs(*w_before - 0.5) <= 1e-12 &&
         std::abs(*w_after + *w_before) <= 1e-9;
  }
  double ph = phase(m, ctx, ahalf, b);
  std::cout << "relative phase                           = " << ph << "\n";
  ok = ok && std::abs(ph - 1.0471975511965976) <= 1e-9;

  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"similarity-projection structure checker"};
  app.require_subcommand(1);

  std::string model_arg;
  long samples = 1000;
  std::uint64_t seed = env_seed();
  double tol = -1.0;
  bool text = false;
  int rounds = 4;
  std::string demo_name;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", model_arg,
                    "model file or builtin:<kind>:<params>")
        ->required();
    sub->add_option("--samples", samples, "sampling budget per axiom family");
    sub->add_option("--seed", seed,
                    "base RNG seed (default: SPCHECK_SEED env, then 0)");
    sub->add_option("--tol", tol,
                    "override tol_eq and tol_orth (must be in (0, 1e-3))");
    auto* jf = sub->add_flag("--json", "print the JSON report (default)");
    sub->add_flag("--text", text, "print a plain-text summary")->excludes(jf);
  };

  CLI::App* check = app.add_subcommand("check", "run the axiom suite");
  add_common(check);
  CLI::App* fuzz = app.add_subcommand(
      "fuzz", "adversarial suite: boundary families, rising degeneracy");
  add_common(fuzz);
  fuzz->add_option("--rounds", rounds, "fuzz rounds (default 4)");
  CLI::App* demo = app.add_subcommand("demo", "built-in worked examples");
  demo->add_option("name", demo_name, "spin-half | two-path | pauli")
      ->required()
      ->check(CLI::IsMember({"spin-half", "two-path", "pauli"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (demo->parsed()) {
      if (demo_name == "spin-half") return demo_spin_half();
      if (demo_name == "two-path") return demo_two_path_family();
      return demo_spectral_bridge();
    }
    CheckConfig cfg;
    cfg.samples = samples;
    cfg.seed = seed;
    return run_reports(model_arg, cfg, tol, text,
                       fuzz->parsed() ? std::max(rounds, 1) : 0);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace sp

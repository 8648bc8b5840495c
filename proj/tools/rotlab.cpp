// Command-line front end: run individual inequality checks or the full
// verification suite.  Exit codes: 0 all pass, 1 violation, 2 invalid input,
// 3 marginal result flagged unresolved by the convergence check.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rotlab/checks.hpp"
#include "rotlab/parse.hpp"
#include "rotlab/report.hpp"
#include "rotlab/spectral.hpp"
#include "rotlab/suite.hpp"

namespace {

using namespace rotlab;

struct Opts {
  std::string weight = "gaussian";
  std::string body = "ball";
  std::string body2 = "diamond";
  int dim = 2;
  std::string amatrix;  // file with a symmetric matrix; empty = identity
  std::string tgrid = "-1:1:21";
  std::string lgrid = "0:1:21";
  std::string fn;
  double tol = -1;  // negative = per-check default
  QuadratureSpec quad;
  std::string out;
  int jobs = 1;
  bool exploratory = false;
  bool quick = false;
  bool dump_config = false;
  int basis_size = 32;
  int points = 201;
  double borell_a = 0.6;
  std::string parity = "odd";
  int degree = 3;
};

void add_common(CLI::App* cmd, Opts& o) {
  cmd->option_defaults()->always_capture_default();
  cmd->add_option("--weight", o.weight, "weight spec, e.g. power:p=2 or cauchy:a=3,b=2");
  cmd->add_option("--body", o.body, "body spec, e.g. ball, square, ellipse:2,1, or none");
  cmd->add_option("--body2", o.body2, "second body spec (Minkowski partner)");
  cmd->add_option("--dim", o.dim, "ambient dimension");
  cmd->add_option("--amatrix", o.amatrix, "file with a symmetric matrix A");
  cmd->add_option("--tgrid", o.tgrid, "t grid a:b:k");
  cmd->add_option("--lgrid", o.lgrid, "lambda grid a:b:k");
  cmd->add_option("--fn", o.fn, "test function spec");
  cmd->add_option("--tol", o.tol, "tolerance override");
  cmd->add_option("--quad.sphere", o.quad.sphere, "angular nodes (n=2)");
  cmd->add_option("--quad.panels", o.quad.panels, "radial panels");
  cmd->add_option("--quad.nodes", o.quad.nodes, "Gauss nodes per radial panel");
  cmd->add_option("--quad.mc_samples", o.quad.mc_samples, "direction samples (n>=4)");
  cmd->add_option("--quad.seed", o.quad.seed, "Monte Carlo seed");
  cmd->add_option("--quad.tail", o.quad.tail, "relative tail cutoff");
  cmd->add_option("--seed", o.quad.seed, "alias for --quad.seed");
  cmd->add_option("--out", o.out, "output directory for JSON/CSV reports");
  cmd->add_option("--jobs", o.jobs, "concurrent checks (suite)");
  cmd->add_flag("--exploratory", o.exploratory, "relax parity preconditions, no pass/fail");
  cmd->add_flag("--dump-config", o.dump_config, "print the effective config and exit")
      ->group("")
      ->configurable(false);
}

Matrixd amatrix_of(const Opts& o) {
  if (o.amatrix.empty()) return Matrixd::Identity(o.dim, o.dim);
  return parse_matrix_file(o.amatrix);
}

RestrictedMeasured measure_of(const Opts& o, const RadialWeightd& w) {
  if (o.body == "none" || o.body.empty()) return RestrictedMeasured::full_space(w, o.dim);
  return RestrictedMeasured::restricted(w, parse_body(o.body, o.dim));
}

TestFunctiond zero_fn(int dim) {
  TestFunctiond v;
  v.parity = Parity::even;
  v.label = "zero";
  v.value = [](const Vectord&) { return 0.0; };
  v.gradient = [](const Vectord& x) { return Vectord(Vectord::Zero(x.size())); };
  (void)dim;
  return v;
}

void write_reports(const std::vector<CheckReport>& reports, const std::string& out,
                   const std::string& stem) {
  if (out.empty()) return;
  namespace fs = std::filesystem;
  fs::create_directories(out);
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : reports) doc.push_back(r.to_json());
  std::ofstream j(fs::path(out) / (stem + ".json"), std::ios::binary);
  j << doc.dump(2) << '\n';
  for (size_t i = 0; i < reports.size(); ++i) {
    if (reports[i].profile.empty()) continue;
    char name[80];
    std::snprintf(name, sizeof name, "%s_%03zu.csv", stem.c_str(), i);
    std::ofstream f(fs::path(out) / name, std::ios::binary);
    f << reports[i].to_csv();
  }
}

int exit_code_for(const std::vector<CheckReport>& reports) {
  bool violation = false, unresolved = false;
  for (const auto& r : reports) {
    violation = violation || !r.pass;
    unresolved = unresolved || r.unresolved;
  }
  if (violation) return 1;
  if (unresolved) return 3;
  return 0;
}

void print_summary(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports) {
    std::cout << (r.pass ? (r.unresolved ? "UNRESOLVED " : "PASS ") : "FAIL ") << r.name
              << "  min_gap=" << r.min_gap << "  tol=" << r.tolerance << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification of log-concavity inequalities for rotationally "
               "invariant measures"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "TOML-style config file; put options in a [subcommand] section. "
                 "Must precede the subcommand name.");

  Opts o;
  std::string command;
  for (const char* name : {"verify-b", "verify-functional-b", "verify-gz", "verify-poincare",
                           "verify-bl", "verify-spectral", "verify-kl", "verify-mixture",
                           "sharpness", "borell-demo", "suite"}) {
    auto* cmd = app.add_subcommand(name);
    add_common(cmd, o);
    if (std::string(name) == "verify-spectral")
      cmd->add_option("--basis-size", o.basis_size, "circle modes (n=2) or max degree (n=3)");
    if (std::string(name) == "verify-kl")
      cmd->add_option("--points", o.points, "grid points per dimension");
    if (std::string(name) == "borell-demo")
      cmd->add_option("--a", o.borell_a, "Cauchy-type exponent, needs 2a < n");
    if (std::string(name) == "sharpness") {
      cmd->add_option("--parity", o.parity, "odd or even");
      cmd->add_option("--degree", o.degree, "polynomial degree of the span");
    }
    if (std::string(name) == "suite") cmd->add_flag("--quick", o.quick, "reduced battery");
    cmd->callback([&command, name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (o.dump_config) {
      std::cout << "[" << command << "]\n"
                << app.get_subcommand(command)->config_to_str(true, false);
      return 0;
    }

    std::vector<CheckReport> reports;
    const double tol = o.tol;
    auto floor_or = [tol](double dflt) { return tol >= 0 ? tol : dflt; };

    if (command == "verify-b") {
      const auto w = parse_weight(o.weight);
      std::optional<SymmetricBodyd> K;
      if (o.body != "none" && !o.body.empty()) K = parse_body(o.body, o.dim);
      reports.push_back(
          b_profile_check(w, K, amatrix_of(o), parse_grid(o.tgrid), o.quad, floor_or(1e-6)));
    } else if (command == "verify-functional-b") {
      const auto w = parse_weight(o.weight);
      const auto A = amatrix_of(o);
      auto v = o.fn.empty() ? gauge_squared(parse_body("square", o.dim))
                            : parse_function(o.fn, w, A, o.dim);
      reports.push_back(
          functional_b_check(w, v, A, parse_grid(o.tgrid), o.dim, o.quad, floor_or(1e-6)));
    } else if (command == "verify-gz") {
      const auto w = parse_weight(o.weight);
      reports.push_back(gz_check(w, parse_body(o.body, o.dim), parse_body(o.body2, o.dim),
                                 parse_grid(o.lgrid), o.quad, floor_or(1e-6)));
    } else if (command == "verify-poincare") {
      const auto w = parse_weight(o.weight);
      const auto h = o.fn.empty() ? linear(Vectord(Vectord::Unit(o.dim, 0)))
                                  : parse_function(o.fn, w, amatrix_of(o), o.dim);
      reports.push_back(weighted_poincare_gap(w, measure_of(o, w), h, o.quad, floor_or(1e-8),
                                              o.exploratory));
    } else if (command == "verify-bl") {
      const auto w = parse_weight(o.weight);
      const auto f = o.fn.empty() ? poincare_extremal(w)
                                  : parse_function(o.fn, w, amatrix_of(o), o.dim);
      const auto nu = measure_of(o, w);
      reports.push_back(brascamp_lieb_gap(w, nu, f, o.quad, floor_or(1e-8)));
      // weight-specific corollary forms when they apply
      if (o.weight.rfind("power:", 0) == 0 || o.weight == "gaussian") {
        const double p = o.weight == "gaussian" ? 2.0 : std::stod(o.weight.substr(8));
        reports.push_back(corollary_p_gap(p, nu, f, o.quad, floor_or(1e-8)));
      } else if (o.weight.rfind("cauchy:", 0) == 0) {
        const double a = std::stod(o.weight.substr(9, o.weight.find(',') - 9));
        reports.push_back(cauchy_gap(a, nu, f, o.quad, floor_or(1e-8)));
      }
    } else if (command == "verify-spectral") {
      const auto v = o.fn.empty() || o.fn == "zero"
                         ? zero_fn(o.dim)
                         : parse_function(o.fn, parse_weight(o.weight), amatrix_of(o), o.dim);
      reports.push_back(spherical_poincare_check(v, o.dim, o.basis_size, floor_or(1e-8)));
    } else if (command == "verify-kl") {
      reports.push_back(kl_condition_check(parse_weight(o.weight), parse_body(o.body, o.dim),
                                           o.points, floor_or(1e-3)));
    } else if (command == "verify-mixture") {
      Vectord t0 = Vectord::Zero(2), dir(2);
      dir << 1, -1;
      QuadratureSpec inner = o.quad;
      inner.sphere = 128;
      inner.panels = 12;
      inner.nodes = 6;
      reports.push_back(mixture_b_check(parse_weight(o.weight), log_gaussian_mixing(),
                                        parse_body(o.body, o.dim), t0, dir,
                                        parse_grid(o.tgrid == "-1:1:21" ? "-0.4:0.4:9" : o.tgrid),
                                        inner, 4.0, 24, floor_or(1e-5)));
    } else if (command == "sharpness") {
      const auto w = parse_weight(o.weight);
      const Parity par = o.parity == "odd" ? Parity::odd
                         : o.parity == "even" ? Parity::even
                                              : throw InvalidInput("parity must be odd or even");
      const bool env = o.weight.rfind("cauchy", 0) == 0;
      reports.push_back(rayleigh_sharpness(w, measure_of(o, w), par, o.degree, o.quad, env,
                                           floor_or(1e-6)));
    } else if (command == "borell-demo") {
      reports.push_back(borell_negative_demo(o.borell_a, o.dim, o.quad));
    } else if (command == "suite") {
      SuiteOptions so;
      so.quick = o.quick;
      so.seed = o.quad.seed;
      so.jobs = o.jobs;
      so.quad = o.quad;
      const auto res = run_suite(so);
      if (!o.out.empty()) write_suite(res, o.out);
      print_summary(res.reports);
      if (!res.all_pass) return 1;
      if (res.any_unresolved) return 3;
      return 0;
    }

    write_reports(reports, o.out, command);
    print_summary(reports);
    return exit_code_for(reports);
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const DivergentMeasure& e) {
    std::cerr << "divergent measure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

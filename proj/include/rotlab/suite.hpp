#pragma once

// Composes the full verification battery into one reproducible run.  The CLI
// `suite` command and the determinism test share this code path: identical
// options and seed must yield byte-identical artifacts.

#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <semaphore>
#include <string>
#include <vector>

#include "rotlab/checks.hpp"
#include "rotlab/parse.hpp"
#include "rotlab/report.hpp"
#include "rotlab/spectral.hpp"

namespace rotlab {

struct SuiteOptions {
  bool quick = false;
  unsigned long seed = 42;
  int jobs = 1;
  QuadratureSpec quad;
};

struct SuiteResult {
  std::vector<CheckReport> reports;
  bool all_pass = true;
  bool any_unresolved = false;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json doc;
    doc["suite"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) doc["suite"].push_back(r.to_json());
    doc["all_pass"] = all_pass;
    doc["any_unresolved"] = any_unresolved;
    return doc;
  }
};

namespace detail {

inline TestFunctiond random_poly(Parity parity, int degree, int n, unsigned long seed) {
  auto fns = basis<double>(parity, degree, n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> coeffs(fns.size());
  for (auto& c : coeffs) c = u(rng);
  auto f = linear_combination(coeffs, fns);
  f.label = (parity == Parity::odd ? "random_odd_poly" : "random_even_poly");
  return f;
}

}  // namespace detail

inline SuiteResult run_suite(const SuiteOptions& opt) {
  std::vector<std::function<CheckReport()>> tasks;
  const QuadratureSpec spec = opt.quad;

  const auto t_grid = linear_spaced(-1.0, 1.0, opt.quick ? 9 : 21);
  const auto l_grid = linear_spaced(0.0, 1.0, opt.quick ? 9 : 21);

  std::vector<RadialWeightd> battery = {power_weight(0.5), power_weight(1.0), power_weight(2.0),
                                        power_weight(4.0), cauchy_weight(1.5, 2.0),
                                        cauchy_weight(3.0, 2.0)};
  if (opt.quick) battery = {power_weight(1.0), cauchy_weight(3.0, 2.0)};

  std::vector<SymmetricBodyd> bodies = {SymmetricBodyd::ball(2), square_body(), hexagon_body(),
                                        ellipse_body(2.0, 1.0)};
  if (opt.quick) bodies = {SymmetricBodyd::ball(2), square_body()};

  std::vector<Matrixd> amats;
  {
    Matrixd id = Matrixd::Identity(2, 2), dg(2, 2), od(2, 2);
    dg << 1, 0, 0, -1;
    od << 0, 1, 1, 0;
    amats = opt.quick ? std::vector<Matrixd>{id, dg} : std::vector<Matrixd>{id, dg, od};
  }

  // strong (B) battery
  for (const auto& w : battery)
    for (const auto& K : bodies)
      for (const auto& A : amats)
        tasks.push_back([=] { return b_profile_check(w, K, A, t_grid, spec); });

  // functional form
  tasks.push_back([=] {
    return functional_b_check(cauchy_weight(2.0, 2.0), gauge_squared(square_body()),
                              Matrixd(Matrixd::Identity(2, 2)), t_grid, 2, spec);
  });
  if (!opt.quick) {
    TestFunctiond v;
    v.parity = Parity::even;
    v.label = "half_square_norm";
    v.value = [](const Vectord& x) { return x.squaredNorm() / 2; };
    v.gradient = [](const Vectord& x) { return x; };
    tasks.push_back([=] {
      return functional_b_check(gaussian_weight(), v, Matrixd(Matrixd::Identity(2, 2)), t_grid, 2,
                                spec);
    });
  }

  // Minkowski 1/n-concavity battery
  {
    std::vector<std::pair<SymmetricBodyd, SymmetricBodyd>> pairs = {
        {square_body(), diamond_body()}};
    if (!opt.quick) {
      pairs.emplace_back(square_body(), SymmetricBodyd::ball(2));
      pairs.emplace_back(hexagon_body(), ellipse_body(2.0, 1.0));
    }
    for (const auto& w : battery)
      for (const auto& [K, L] : pairs)
        tasks.push_back([=] { return gz_check(w, K, L, l_grid, spec); });
  }

  // weighted Poincare: equality cases plus random odd polynomials
  const int n_random = opt.quick ? 10 : 100;
  {
    std::vector<SymmetricBodyd> restr = {SymmetricBodyd::ball(2), square_body()};
    for (int k = 0; k < n_random; ++k) {
      const auto& w = battery[size_t(k) % battery.size()];
      const auto& K = restr[size_t(k / 2) % restr.size()];
      tasks.push_back([=, s = opt.seed] {
        auto h = detail::random_poly(Parity::odd, 5, 2, s + 1000 + unsigned(k));
        return weighted_poincare_gap(w, RestrictedMeasured::restricted(w, K), h, spec, 1e-8);
      });
    }
  }

  // Brascamp-Lieb: random even functions over restricted battery measures
  {
    std::vector<SymmetricBodyd> restr = {SymmetricBodyd::ball(2), square_body()};
    for (int k = 0; k < n_random; ++k) {
      const auto& w = battery[size_t(k) % battery.size()];
      const auto& K = restr[size_t(k / 2) % restr.size()];
      tasks.push_back([=, s = opt.seed] {
        auto f = detail::random_poly(Parity::even, 4, 2, s + 2000 + unsigned(k));
        return brascamp_lieb_gap(w, RestrictedMeasured::restricted(w, K), f, spec, 1e-8);
      });
    }
  }

  // equality-case regressions
  tasks.push_back([=] {
    auto all = equality_case_regressions(spec);
    CheckReport rep;
    rep.name = "equality_case_regressions";
    double worst = 0;
    bool pass = true;
    for (const auto& r : all) {
      worst = std::min(worst, r.min_gap + r.tolerance);
      pass = pass && r.pass;
      rep.extra[r.name].push_back(r.extra["ratio"]);
    }
    rep.gaps = {worst};
    rep.tolerance = 0;
    rep.pass = pass;
    rep.min_gap = worst;
    return rep;
  });

  // spherical Poincare
  {
    TestFunctiond zero;
    zero.parity = Parity::even;
    zero.label = "zero";
    zero.value = [](const Vectord&) { return 0.0; };
    zero.gradient = [](const Vectord& x) { return Vectord(Vectord::Zero(x.size())); };
    TestFunctiond x1sq;
    x1sq.parity = Parity::even;
    x1sq.label = "x1^2";
    x1sq.value = [](const Vectord& x) { return x[0] * x[0]; };
    x1sq.gradient = [](const Vectord& x) {
      Vectord g = Vectord::Zero(x.size());
      g[0] = 2 * x[0];
      return g;
    };
    tasks.push_back([=] { return spherical_poincare_check(zero, 2, 32); });
    tasks.push_back([=] { return spherical_poincare_check(x1sq, 2, 32); });
    tasks.push_back([=] { return spherical_poincare_check(gauge_squared(square_body()), 2, 32); });
    tasks.push_back([=] { return spherical_poincare_check(zero, 3, 8); });
  }

  // 1-D identity on random built-in instances
  for (int k = 0; k < (opt.quick ? 5 : 20); ++k) {
    tasks.push_back([k, s = opt.seed] {
      std::mt19937_64 rng(s + 3000 + unsigned(k));
      std::uniform_real_distribution<double> u(0.2, 2.0);
      const double cw = u(rng), cv = u(rng), c1 = u(rng), c2 = u(rng);
      const double m = 1 + u(rng), alpha = 2 * (u(rng) - 0.2);
      Scalar1D w{[cw](double t) { return cw * t * t / 2; }, [cw](double t) { return cw * t; }};
      Scalar1D v{[cv](double t) { return cv * t; }, [cv](double) { return cv; }};
      auto gf = [c1, c2, m](double t) { return (c1 + c2 * t * t) * std::exp(-(t - m) * (t - m)); };
      auto gp = [c1, c2, m](double t) {
        return std::exp(-(t - m) * (t - m)) * (2 * c2 * t - 2 * (t - m) * (c1 + c2 * t * t));
      };
      Scalar1D g{gf, gp};
      Scalar1D f{[gf](double t) { return t * gf(t); },
                 [gf, gp](double t) { return gf(t) + t * gp(t); }};
      return lemma_1d_identity(w, v, f, g, alpha, m + 12.0);
    });
  }

  // Rayleigh sharpness spans
  for (const auto& w : battery) {
    tasks.push_back([=] {
      const bool env = w.label.rfind("cauchy", 0) == 0;
      return rayleigh_sharpness(w, RestrictedMeasured::full_space(w, 2), Parity::odd, 3, spec,
                                env);
    });
  }

  // elliptic criterion
  {
    const int pts = opt.quick ? 81 : 201;
    std::vector<RadialWeightd> kl_ws = {gaussian_weight(), power_weight(1.0)};
    std::vector<SymmetricBodyd> kl_bodies = {SymmetricBodyd::ball(2), square_body()};
    for (const auto& w : kl_ws)
      for (const auto& K : kl_bodies)
        tasks.push_back([=] { return kl_condition_check(w, K, pts); });
  }

  // Borell negative demonstration
  tasks.push_back([=] { return borell_negative_demo(0.6, 2); });

  // mixture profile (reduced inner resolution keeps the nested run desk-sized)
  {
    QuadratureSpec inner = spec;
    inner.sphere = 128;
    inner.panels = 12;
    inner.nodes = 6;
    Vectord t0 = Vectord::Zero(2), dir(2);
    dir << 1, -1;
    const auto mg = linear_spaced(-0.4, 0.4, opt.quick ? 5 : 9);
    tasks.push_back([=] {
      return mixture_b_check(gaussian_weight(), log_gaussian_mixing(), square_body(), t0, dir, mg,
                             inner, 4.0, opt.quick ? 16 : 24);
    });
  }

  // run, preserving task order for reproducible output
  SuiteResult res;
  res.reports.resize(tasks.size());
  if (opt.jobs <= 1) {
    for (size_t i = 0; i < tasks.size(); ++i) res.reports[i] = tasks[i]();
  } else {
    std::counting_semaphore<256> slots(std::min(opt.jobs, 256));
    std::vector<std::future<CheckReport>> futs(tasks.size());
    for (size_t i = 0; i < tasks.size(); ++i) {
      futs[i] = std::async(std::launch::async, [&, i] {
        slots.acquire();
        auto r = tasks[i]();
        slots.release();
        return r;
      });
    }
    for (size_t i = 0; i < tasks.size(); ++i) res.reports[i] = futs[i].get();
  }
  for (const auto& r : res.reports) {
    res.all_pass = res.all_pass && r.pass;
    res.any_unresolved = res.any_unresolved || r.unresolved;
  }
  return res;
}

/// Writes suite.json plus one CSV per profile-style report into out_dir.
inline void write_suite(const SuiteResult& res, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  {
    std::ofstream f(fs::path(out_dir) / "suite.json", std::ios::binary);
    f << res.to_json().dump(2) << '\n';
  }
  for (size_t i = 0; i < res.reports.size(); ++i) {
    const auto& r = res.reports[i];
    if (r.profile.empty()) continue;
    char name[64];
    std::snprintf(name, sizeof name, "%s_%03zu.csv", r.name.c_str(), i);
    std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
    f << r.to_csv();
  }
}

}  // namespace rotlab

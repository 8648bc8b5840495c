#pragma once

// One operation per inequality: each computes a gap list or concavity
// profile, judges it against a tolerance scaled to the quadrature error, and
// returns a CheckReport with convergence evidence.
//
// Conventions: all gaps are in probability-measure form (normalized by the
// total mass), concavity profiles are judged through second central
// differences divided by h^2, and a gap list passes iff min >= -tolerance.

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rotlab/bodies.hpp"
#include "rotlab/common.hpp"
#include "rotlab/quadrature.hpp"
#include "rotlab/report.hpp"
#include "rotlab/testfns.hpp"
#include "rotlab/weights.hpp"

namespace rotlab {

namespace detail {

inline double require_uniform_grid(const std::vector<double>& grid, const char* who) {
  if (grid.size() < 5) throw InvalidInput(std::string(who) + ": grid needs at least 5 points");
  const double h = grid[1] - grid[0];
  if (!(h > 0)) throw InvalidInput(std::string(who) + ": grid must be increasing");
  for (size_t i = 1; i + 1 < grid.size(); ++i)
    if (std::abs(grid[i + 1] - grid[i] - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw InvalidInput(std::string(who) + ": grid must be uniform");
  return h;
}

/// Concavity of a sampled profile: gaps = -(second differences)/h^2.
/// `rel_errs` are per-point relative errors of the profile values.
inline CheckReport concavity_report(std::string name, const std::vector<double>& grid,
                                    const std::vector<double>& profile,
                                    const std::vector<double>& profile_errs, double tol_floor) {
  CheckReport rep;
  rep.name = std::move(name);
  rep.grid = grid;
  rep.profile = profile;
  const double h = grid[1] - grid[0];
  const auto sd = second_differences(profile, h);
  for (double d : sd) rep.gaps.push_back(-d);
  double max_err = 0;
  for (double e : profile_errs) max_err = std::max(max_err, e);
  rep.convergence_delta = 4 * max_err / (h * h);
  rep.tolerance = std::max(tol_floor, 10 * rep.convergence_delta);
  rep.finalize();
  return rep;
}

inline void sample_even(const TestFunction<double>& v, int dim, const char* who) {
  std::mt19937_64 rng(9001);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int k = 0; k < 200; ++k) {
    Vectord x(dim);
    for (int i = 0; i < dim; ++i) x[i] = u(rng);
    const double a = v.value(x), b = v.value(Vectord(-x));
    if (std::abs(a - b) > 1e-10 * std::max(1.0, std::abs(a)))
      throw InvalidInput(std::string(who) + ": density exponent is not even");
  }
}

inline void sample_midpoint_convex(const std::function<double(const Vectord&)>& v, int dim,
                                   double box, const char* who) {
  std::mt19937_64 rng(9002);
  std::uniform_real_distribution<double> u(-box, box);
  for (int k = 0; k < 1000; ++k) {
    Vectord x(dim), y(dim);
    for (int i = 0; i < dim; ++i) {
      x[i] = u(rng);
      y[i] = u(rng);
    }
    const Vectord m = (x + y) / 2;
    if (v(m) > (v(x) + v(y)) / 2 + 1e-10)
      throw InvalidInput(std::string(who) + ": sampled midpoint convexity violated");
  }
}

inline SymmetricBodyd combine_bodies(const SymmetricBodyd& K, const SymmetricBodyd& L,
                                     double lambda) {
  if (K.is_polygon() && L.is_polygon()) return polygon_minkowski_sum(K, L, lambda);
  if (lambda == 0) return K;
  if (lambda == 1) return L;
  return SymmetricBodyd::minkowski_comb(lambda, K, L);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Strong (B) property: t -> log mu(e^{tA} K) is concave

inline CheckReport b_profile_check(const RadialWeightd& w, const std::optional<SymmetricBodyd>& K,
                                   const Matrixd& A, const std::vector<double>& t_grid,
                                   const QuadratureSpec& spec = {}, double tol_floor = 1e-6) {
  detail::require_uniform_grid(t_grid, "b_profile_check");
  const int n = K ? K->dim() : int(A.rows());
  std::vector<double> profile, errs;
  for (double t : t_grid) {
    RestrictedMeasured nu;
    if (K) {
      const Matrixd E = matrix_exponential(A, t);
      nu = RestrictedMeasured::restricted(w, SymmetricBodyd::linear_image(E, *K));
    } else {
      matrix_exponential(A, t);  // still validates symmetry
      nu = RestrictedMeasured::full_space(w, n);
    }
    const auto m = measure(nu, spec);
    profile.push_back(std::log(m.value));
    errs.push_back(m.error_estimate / m.value);
  }
  auto rep = detail::concavity_report("b_profile_check", t_grid, profile, errs, tol_floor);
  rep.params = {{"weight", w.label}, {"dim", n}, {"restricted", bool(K)}};
  return rep;
}

// ---------------------------------------------------------------------------
// Functional form: t -> log int e^{-v(e^{tA}x) - w(|x|)} dx is concave

inline CheckReport functional_b_check(const RadialWeightd& w, const TestFunctiond& v,
                                      const Matrixd& A, const std::vector<double>& t_grid,
                                      int dim, const QuadratureSpec& spec = {},
                                      double tol_floor = 1e-6) {
  detail::require_uniform_grid(t_grid, "functional_b_check");
  if (v.parity != Parity::even) throw InvalidInput("functional_b_check: v must be even");
  detail::sample_even(v, dim, "functional_b_check");
  detail::sample_midpoint_convex(v.value, dim, 3.0, "functional_b_check");
  std::vector<double> profile, errs;
  for (double t : t_grid) {
    const Matrixd E = matrix_exponential(A, t);
    auto nu = RestrictedMeasured::tilted(w, compose_linear(v, E), dim);
    const auto m = measure(nu, spec);
    profile.push_back(std::log(m.value));
    errs.push_back(m.error_estimate / m.value);
  }
  auto rep = detail::concavity_report("functional_b_check", t_grid, profile, errs, tol_floor);
  rep.params = {{"weight", w.label}, {"v", v.label}, {"dim", dim}};
  return rep;
}

// ---------------------------------------------------------------------------
// Local form of (B): int <grad f0, Ax> dnu >= Var_nu f0 for f0 = <grad W, Ax>

inline CheckReport local_b_gap(const RadialWeightd& w, const RestrictedMeasured& nu,
                               const Matrixd& A, const QuadratureSpec& spec = {},
                               double tol_floor = 1e-6) {
  const auto f0 = bl_extremal(w, A);
  const auto m0 = measure(nu, spec);
  if (!(m0.value > 0)) throw InvalidInput("local_b_gap: zero-mass measure");
  const auto drift = integrate_field<double>(
      nu, [&](const Vectord& x) { return f0.gradient(x).dot(A * x); }, spec);
  const auto var = variance(nu, f0, spec);
  CheckReport rep;
  rep.name = "local_b_gap";
  rep.params = {{"weight", w.label}};
  const double rhs = drift.value / m0.value;
  rep.gaps = {rhs - var.value};
  rep.convergence_delta = drift.error_estimate / m0.value + var.error_estimate;
  rep.tolerance = std::max(tol_floor, 10 * rep.convergence_delta);
  rep.extra = {{"variance", var.value}, {"drift_term", rhs},
               {"ratio", var.value / rhs}};
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------
// Dimensional Brunn-Minkowski: lambda -> mu((1-lambda)K + lambda L)^{1/n}

inline CheckReport gz_check(const RadialWeightd& w, const SymmetricBodyd& K,
                            const SymmetricBodyd& L, const std::vector<double>& lambda_grid,
                            const QuadratureSpec& spec = {}, double tol_floor = 1e-6,
                            double two_point_tol = 1e-8) {
  detail::require_uniform_grid(lambda_grid, "gz_check");
  if (K.dim() != L.dim()) throw InvalidInput("gz_check: dimension mismatch");
  const int n = K.dim();
  std::vector<double> psi, errs;
  for (double lam : lambda_grid) {
    auto M = detail::combine_bodies(K, L, lam);
    const auto m = measure(RestrictedMeasured::restricted(w, M), spec);
    const double p = std::pow(m.value, 1.0 / n);
    psi.push_back(p);
    errs.push_back(p * m.error_estimate / (n * m.value));
  }
  auto rep = detail::concavity_report("gz_check", lambda_grid, psi, errs, tol_floor);
  rep.params = {{"weight", w.label}, {"dim", n}};
  // two-point chord form on the same grid
  std::vector<double> tp;
  double tp_min = 0;
  for (size_t i = 0; i < lambda_grid.size(); ++i) {
    const double lam = lambda_grid[i];
    const double chord = (1 - lam) * psi.front() + lam * psi.back();
    tp.push_back(psi[i] - chord);
    tp_min = std::min(tp_min, psi[i] - chord);
  }
  rep.extra = {{"two_point_gaps", tp}, {"two_point_min", tp_min}, {"two_point_tol", two_point_tol}};
  rep.pass = rep.pass && tp_min >= -two_point_tol;
  return rep;
}

// ---------------------------------------------------------------------------
// Weighted Poincare for odd h: int (w'(|x|)/|x|) h^2 dnu <= int |grad h|^2 dnu

inline CheckReport weighted_poincare_gap(const RadialWeightd& w, const RestrictedMeasured& nu,
                                         const TestFunctiond& h, const QuadratureSpec& spec = {},
                                         double tol_floor = 1e-8, bool exploratory = false) {
  if (h.parity != Parity::odd && !exploratory)
    throw InvalidInput("weighted_poincare_gap: h must be odd (use exploratory mode otherwise)");
  const auto m0 = measure(nu, spec);
  if (!(m0.value > 0)) throw InvalidInput("weighted_poincare_gap: zero-mass measure");
  double mean = 0;
  if (exploratory && h.parity != Parity::odd)
    mean = integrate(nu, h, spec).value / m0.value;
  const auto lhs = integrate_field<double>(
      nu,
      [&](const Vectord& x) {
        const double r = x.norm();
        const double d = h.value(x) - mean;
        return r > 0 ? w.deriv(r) / r * d * d : 0.0;
      },
      spec);
  const auto rhs = integrate_field<double>(
      nu, [&](const Vectord& x) { return h.gradient(x).squaredNorm(); }, spec);
  CheckReport rep;
  rep.name = "weighted_poincare_gap";
  rep.params = {{"weight", w.label}, {"h", h.label}, {"exploratory", exploratory}};
  rep.gaps = {(rhs.value - lhs.value) / m0.value};
  rep.convergence_delta = (rhs.error_estimate + lhs.error_estimate) / m0.value;
  rep.tolerance = std::max(tol_floor, 10 * rep.convergence_delta);
  rep.extra = {{"lhs", lhs.value / m0.value}, {"rhs", rhs.value / m0.value},
               {"ratio", lhs.value / rhs.value}};
  rep.finalize();
  if (exploratory) {
    // no pass/fail semantics outside the inequality's hypotheses
    rep.pass = true;
    rep.unresolved = false;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Improved Brascamp-Lieb for even f: Var_nu f <= int Q_x°(grad f) dnu

inline CheckReport brascamp_lieb_gap(const RadialWeightd& w, const RestrictedMeasured& nu,
                                     const TestFunctiond& f, const QuadratureSpec& spec = {},
                                     double tol_floor = 1e-8) {
  if (f.parity != Parity::even) throw InvalidInput("brascamp_lieb_gap: f must be even");
  const auto m0 = measure(nu, spec);
  if (!(m0.value > 0)) throw InvalidInput("brascamp_lieb_gap: zero-mass measure");
  const auto dirich = integrate_field<double>(
      nu, [&](const Vectord& x) { return polar_form(w, x, Vectord(f.gradient(x))); }, spec);
  const auto var = variance(nu, f, spec);
  CheckReport rep;
  rep.name = "brascamp_lieb_gap";
  rep.params = {{"weight", w.label}, {"f", f.label}};
  const double rhs = dirich.value / m0.value;
  rep.gaps = {rhs - var.value};
  rep.convergence_delta = dirich.error_estimate / m0.value + var.error_estimate;
  rep.tolerance = std::max(tol_floor, 10 * rep.convergence_delta);
  rep.extra = {{"variance", var.value}, {"dirichlet", rhs}, {"ratio", var.value / rhs}};
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------
// Power-weight corollary: Var_nu f <= max{1/p, 1/2} int |x|^{2-p} |grad f|^2 dnu

inline CheckReport corollary_p_gap(double p, const RestrictedMeasured& nu, const TestFunctiond& f,
                                   const QuadratureSpec& spec = {}, double tol_floor = 1e-8) {
  if (!(p > 0)) throw InvalidInput("corollary_p_gap: p > 0 required");
  if (f.parity != Parity::even) throw InvalidInput("corollary_p_gap: f must be even");
  const auto m0 = measure(nu, spec);
  if (!(m0.value > 0)) throw InvalidInput("corollary_p_gap: zero-mass measure");
  const double c = std::max(1.0 / p, 0.5);
  const auto elegant = integrate_field<double>(
      nu,
      [&](const Vectord& x) {
        const double r = x.norm();
        return r > 0 ? std::pow(r, 2 - p) * f.gradient(x).squaredNorm() : 0.0;
      },
      spec);
  // sharper split into radial and tangential gradient components:
  // |x|^{2-p} ( |rad|^2 / p + |tan|^2 / 2 )
  const auto sharp = integrate_field<double>(
      nu,
      [&](const Vectord& x) {
        const double r = x.norm();
        if (!(r > 0)) return 0.0;
        const Vectord g = f.gradient(x);
        const double rad = g.dot(x) / r;
        const double tan2 = std::max(0.0, g.squaredNorm() - rad * rad);
        return std::pow(r, 2 - p) * (rad * rad / p + tan2 / 2);
      },
      spec);
  const auto var = variance(nu, f, spec);
  CheckReport rep;
  rep.name = "corollary_p_gap";
  rep.params = {{"p", p}, {"f", f.label}};
  const double rhs = c * elegant.value / m0.value;
  rep.gaps = {rhs - var.value};
  rep.convergence_delta = c * elegant.error_estimate / m0.value + var.error_estimate;
  rep.tolerance = std::max(tol_floor, 10 * rep.convergence_delta);
  rep.extra = {{"variance", var.value}, {"elegant_rhs", rhs},
               {"sharp_rhs", sharp.value / m0.value},
               {"sharp_gap", sharp.value / m0.value - var.value},
               {"ratio", var.value / rhs}};
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------
// Cauchy-type corollary: Var_nu f <= (1/4a) int (1+|x|^2)(|grad f|^2 + <grad f, x>^2)
//                                 <= (1/4a) int (1+|x|^2)^2 |grad f|^2

inline CheckReport cauchy_gap(double a, const RestrictedMeasured& nu, const TestFunctiond& f,
                              const QuadratureSpec& spec = {}, double tol_floor = 1e-8) {
  if (!(a > 0)) throw InvalidInput("cauchy_gap: a > 0 required");
  if (f.parity != Parity::even) throw InvalidInput("cauchy_gap: f must be even");
  if (nu.factor == RestrictedMeasured::Factor::none && !(2 * a > nu.dim))
    throw InvalidInput("cauchy_gap: full-space measure needs a > n/2");
  const auto m0 = measure(nu, spec);
  if (!(m0.value > 0)) throw InvalidInput("cauchy_gap: zero-mass measure");
  const auto elegant = integrate_field<double>(
      nu,
      [&](const Vectord& x) {
        const double s = 1 + x.squaredNorm();
        return s * s * f.gradient(x).squaredNorm();
      },
      spec);
  const auto middle = integrate_field<double>(
      nu,
      [&](const Vectord& x) {
        const double s = 1 + x.squaredNorm();
        const Vectord g = f.gradient(x);
        const double gx = g.dot(x);
        return s * (g.squaredNorm() + gx * gx);
      },
      spec);
  const auto var = variance(nu, f, spec);
  CheckReport rep;
  rep.name = "cauchy_gap";
  rep.params = {{"a", a}, {"f", f.label}};
  const double rhs = elegant.value / (4 * a * m0.value);
  const double rhs_mid = middle.value / (4 * a * m0.value);
  rep.gaps = {rhs - var.value};
  rep.convergence_delta = elegant.error_estimate / (4 * a * m0.value) + var.error_estimate;
  rep.tolerance = std::max(tol_floor, 10 * rep.convergence_delta);
  rep.extra = {{"variance", var.value}, {"elegant_rhs", rhs}, {"middle_rhs", rhs_mid},
               {"middle_gap", rhs_mid - var.value}, {"ratio", var.value / rhs}};
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------
// Negative demonstration: for 2a < n the Cauchy-type measure satisfies no
// Brunn-Minkowski inequality, witnessed by translated balls along a ray.

/// Mass of the ball B(c e1, rho) under density e^{-w(|x|)}, n = 2, by polar
/// integration around the ball's own center.
inline double offset_ball_mass(const RadialWeightd& w, double c, double rho) {
  if (!(rho > 0)) throw InvalidInput("offset_ball_mass: rho > 0 required");
  const int m_ang = 128, panels = 8, q = 8;
  const double dphi = 2 * std::numbers::pi / m_ang;
  double total = 0;
  for (int k = 0; k < m_ang; ++k) {
    const double phi = dphi * (k + 0.5);
    const double cx = std::cos(phi), sx = std::sin(phi);
    auto G = [&](double s) {
      const double x = c + s * cx, y = s * sx;
      return std::exp(-w.eval(std::hypot(x, y))) * s;
    };
    double acc = 0;
    for (int j = 0; j < panels; ++j)
      acc += detail::gl_panel(G, rho * j / panels, rho * (j + 1) / panels, q);
    total += acc * dphi;
  }
  return total;
}

inline CheckReport borell_negative_demo(double a, int n, const QuadratureSpec& /*spec*/ = {}) {
  if (n != 2) throw InvalidInput("borell_negative_demo: n = 2 only");
  if (!(2 * a < n))
    throw InvalidInput("borell_negative_demo: requires 2a < n (no violation expected otherwise)");
  const auto w = cauchy_weight(a, 2.0);
  CheckReport rep;
  rep.name = "borell_negative_demo";
  rep.params = {{"a", a}, {"n", n}};
  rep.tolerance = 0;
  // search same-ray ball pairs; radii scale with the local density so the
  // two endpoint masses are comparable
  for (double c1 : {2.0, 3.0, 4.0, 6.0}) {
    for (double factor : {6.0, 9.0, 12.0}) {
      for (double s : {0.2, 0.4}) {
        const double c2 = c1 * factor;
        const double r1 = s * std::pow(1 + c1 * c1, a / n);
        const double r2 = s * std::pow(1 + c2 * c2, a / n);
        const double mK = offset_ball_mass(w, c1, r1);
        const double mL = offset_ball_mass(w, c2, r2);
        const double mM = offset_ball_mass(w, (c1 + c2) / 2, (r1 + r2) / 2);
        const double violation = std::min(mK, mL) - mM;
        if (violation > 0) {
          rep.pass = true;
          rep.gaps = {violation};
          rep.min_gap = violation;
          rep.extra = {{"c1", c1}, {"c2", c2}, {"r1", r1}, {"r2", r2},
                       {"mass_K", mK}, {"mass_L", mL}, {"mass_mid", mM},
                       {"violation", violation}};
          return rep;
        }
      }
    }
  }
  rep.pass = false;
  rep.min_gap = 0;
  rep.extra = {{"witness_found", false}};
  return rep;
}

// ---------------------------------------------------------------------------
// Mixture measures: nu = law of (X1 Y1, ..., Xn Yn); the profile
// t -> nu(e^{D(t)} K) along a diagonal line is log-concave.

/// Built-in mixing density, log-concave in logarithmic coordinates:
/// h(y) = exp(-sum (log y_i)^2 / (2 sigma^2)) / prod y_i.
inline TestFunctiond log_gaussian_mixing(double sigma = 1 / std::sqrt(2.0)) {
  if (!(sigma > 0)) throw InvalidInput("log_gaussian_mixing: sigma > 0");
  TestFunctiond h;
  h.parity = Parity::none;
  h.label = "log_gaussian_mixing";
  h.value = [sigma](const Vectord& y) {
    double e = 0, prod = 1;
    for (int i = 0; i < y.size(); ++i) {
      const double l = std::log(y[i]);
      e += l * l;
      prod *= y[i];
    }
    return std::exp(-e / (2 * sigma * sigma)) / prod;
  };
  return h;
}

inline CheckReport mixture_b_check(const RadialWeightd& w, const TestFunctiond& mixing,
                                   const SymmetricBodyd& K, const Vectord& t0, const Vectord& dir,
                                   const std::vector<double>& t_grid,
                                   const QuadratureSpec& spec = {}, double s_range = 4.0,
                                   int s_nodes = 24, double tol_floor = 1e-5) {
  detail::require_uniform_grid(t_grid, "mixture_b_check");
  const int n = K.dim();
  if (n != 2) throw InvalidInput("mixture_b_check: n = 2 only (nested quadrature budget)");
  if (t0.size() != n || dir.size() != n) throw InvalidInput("mixture_b_check: line dimension mismatch");
  // H(s) = h(e^{-s}) e^{-sum s}; the hypothesis is convexity of -log H
  auto H = [&](const Vectord& s) {
    Vectord y(n);
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      y[i] = std::exp(-s[i]);
      sum += s[i];
    }
    return mixing.value(y) * std::exp(-sum);
  };
  detail::sample_midpoint_convex([&](const Vectord& s) { return -std::log(H(s)); }, n,
                                 std::min(2.0, s_range), "mixture_b_check");
  const auto& [xs, ws] = gauss_legendre(s_nodes);
  std::vector<double> profile, errs;
  for (double t : t_grid) {
    double outer = 0, outer_err = 0;
    for (int i = 0; i < s_nodes; ++i) {
      for (int j = 0; j < s_nodes; ++j) {
        Vectord s(2);
        s << s_range * xs[i], s_range * xs[j];
        const double hval = H(s);
        if (hval < 1e-300) continue;
        Matrixd D = Matrixd::Zero(2, 2);
        D(0, 0) = std::exp(s[0] + t0[0] + t * dir[0]);
        D(1, 1) = std::exp(s[1] + t0[1] + t * dir[1]);
        const auto m = measure(
            RestrictedMeasured::restricted(w, SymmetricBodyd::linear_image(D, K)), spec);
        const double wt = ws[i] * ws[j] * s_range * s_range;
        outer += wt * hval * m.value;
        outer_err += wt * hval * m.error_estimate;
      }
    }
    profile.push_back(std::log(outer));
    errs.push_back(outer_err / outer);
  }
  auto rep = detail::concavity_report("mixture_b_check", t_grid, profile, errs, tol_floor);
  rep.params = {{"weight", w.label}, {"mixing", mixing.label}, {"s_range", s_range},
                {"s_nodes", s_nodes}};
  return rep;
}

// ---------------------------------------------------------------------------
// Equality-case regressions: known sharp instances must give ratio 1

inline std::vector<CheckReport> equality_case_regressions(const QuadratureSpec& spec = {}) {
  std::vector<CheckReport> out;
  auto ratio_report = [](std::string name, nlohmann::ordered_json params, double ratio,
                         double delta) {
    CheckReport rep;
    rep.name = std::move(name);
    rep.params = std::move(params);
    rep.gaps = {-std::abs(ratio - 1)};
    rep.tolerance = delta;
    rep.extra = {{"ratio", ratio}};
    rep.finalize();
    return rep;
  };
  // (i) weighted Poincare equality at linear h under the unrestricted measure
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const auto w = power_weight(p);
    auto nu = RestrictedMeasured::full_space(w, 2);
    auto rep = weighted_poincare_gap(w, nu, linear(Vectord(Vectord::Unit(2, 0))), spec);
    out.push_back(ratio_report("equality_poincare_linear", {{"p", p}},
                               rep.extra["ratio"].get<double>(), 1e-4));
  }
  // (ii) Brascamp-Lieb equality at f = <grad W, x>
  {
    std::vector<RadialWeightd> ws = {power_weight(1.0), power_weight(2.0), power_weight(3.0),
                                     cauchy_weight(3.0, 2.0)};
    for (const auto& w : ws) {
      auto nu = RestrictedMeasured::full_space(w, 2);
      auto rep = brascamp_lieb_gap(w, nu, poincare_extremal(w), spec);
      out.push_back(ratio_report("equality_bl_extremal", {{"weight", w.label}},
                                 rep.extra["ratio"].get<double>(), 1e-3));
    }
  }
  // (iii) elegant power form at f = |x|^p, 0 < p <= 2
  for (double p : {0.5, 1.0, 2.0}) {
    const auto w = power_weight(p);
    auto nu = RestrictedMeasured::full_space(w, 2);
    auto rep = corollary_p_gap(p, nu, poincare_extremal(w), spec);
    out.push_back(ratio_report("equality_elegant_power", {{"p", p}},
                               rep.extra["ratio"].get<double>(), 1e-3));
  }
  // (iv) Cauchy double inequality sharp at the reference measure
  {
    const double a = 3.0;
    const auto w = cauchy_weight(a, 2.0);
    auto nu = RestrictedMeasured::full_space(w, 2);
    auto rep = cauchy_gap(a, nu, poincare_extremal(w), spec);
    out.push_back(ratio_report("equality_cauchy_sharp", {{"a", a}},
                               rep.extra["ratio"].get<double>(), 1e-3));
    const double mid_ratio = rep.extra["variance"].get<double>() /
                             rep.extra["middle_rhs"].get<double>();
    out.push_back(ratio_report("equality_cauchy_middle", {{"a", a}}, mid_ratio, 1e-3));
  }
  return out;
}

}  // namespace rotlab

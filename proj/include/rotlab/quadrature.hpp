#pragma once

// Polar quadrature for rotationally invariant densities:
//   integral = c_n * int_{S^{n-1}} int_0^infty F(r theta) e^{-w(r)} r^{n-1} dr dtheta
// with c_n the surface area of S^{n-1} and dtheta the normalized sphere
// measure, so the result matches the Lebesgue integral of F e^{-w(|x|)}.
//
// Angular panels align with the kink directions of the restricting body or
// tilt density.  Radial panels are geometrically graded toward 0 (integrable
// origin singularities) and grow geometrically into unbounded tails until the
// panel mass is negligible; a divergence detector flags non-integrable tails.

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "rotlab/bodies.hpp"
#include "rotlab/common.hpp"
#include "rotlab/testfns.hpp"
#include "rotlab/weights.hpp"

namespace rotlab {

struct QuadratureSpec {
  int sphere = 512;        // total angular nodes (n = 2)
  int panels = 32;         // radial panels on a bounded range
  int nodes = 8;           // Gauss nodes per radial panel
  int mc_samples = 200000; // direction samples (n >= 4)
  unsigned long seed = 42;
  double tail = 1e-14;     // relative panel-mass cutoff for unbounded tails
  double cap_radius = 1e3;
};

template <typename Scalar = double>
struct IntegralResult {
  Scalar value = 0;
  Scalar error_estimate = 0;
};

template <typename Scalar = double>
struct RestrictedMeasure {
  RadialWeight<Scalar> weight;
  int dim = 2;
  enum class Factor { none, body_indicator, smooth };
  Factor factor = Factor::none;
  std::optional<SymmetricBody<Scalar>> body;
  std::optional<TestFunction<Scalar>> tilt;  // density factor e^{-tilt(x)}

  static RestrictedMeasure full_space(RadialWeight<Scalar> w, int dim) {
    RestrictedMeasure nu;
    nu.weight = std::move(w);
    nu.dim = dim;
    return nu;
  }
  static RestrictedMeasure restricted(RadialWeight<Scalar> w, SymmetricBody<Scalar> K) {
    RestrictedMeasure nu;
    nu.weight = std::move(w);
    nu.dim = K.dim();
    nu.factor = Factor::body_indicator;
    nu.body = std::move(K);
    return nu;
  }
  static RestrictedMeasure tilted(RadialWeight<Scalar> w, TestFunction<Scalar> v, int dim) {
    if (v.parity != Parity::even) throw InvalidInput("tilted: tilt density must be even");
    RestrictedMeasure nu;
    nu.weight = std::move(w);
    nu.dim = dim;
    nu.factor = Factor::smooth;
    nu.tilt = std::move(v);
    return nu;
  }
};

using RestrictedMeasured = RestrictedMeasure<double>;

// ---------------------------------------------------------------------------
// Gauss-Legendre rules on [-1, 1], cached by node count

inline const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int q) {
  if (q < 1) throw InvalidInput("gauss_legendre: q >= 1");
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  std::vector<double> x(q), w(q);
  for (int i = 0; i < q; ++i) {
    // Newton iteration from the Chebyshev initial guess
    double t = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1, p1 = t;
      for (int k = 2; k <= q; ++k) {
        const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = q * (t * p1 - p0) / (t * t - 1);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double p0 = 1, p1 = t;
    for (int k = 2; k <= q; ++k) {
      const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = q * (t * p1 - p0) / (t * t - 1);
    x[i] = t;
    w[i] = 2 / ((1 - t * t) * dp * dp);
  }
  return cache.emplace(q, std::make_pair(std::move(x), std::move(w))).first->second;
}

/// Surface area of S^{n-1}.
template <typename Scalar = double>
Scalar sphere_area(int n) {
  return Scalar(2) * std::pow(std::numbers::pi_v<Scalar>, Scalar(n) / 2) / Scalar(std::tgamma(double(n) / 2));
}

namespace detail {

/// Gauss sum of G over [a, b] with q nodes.
template <typename Scalar, typename Fn>
Scalar gl_panel(Fn&& G, Scalar a, Scalar b, int q) {
  const auto& [xs, ws] = gauss_legendre(q);
  const Scalar mid = (a + b) / 2, half = (b - a) / 2;
  Scalar s = 0;
  for (int i = 0; i < q; ++i) s += Scalar(ws[i]) * G(mid + half * Scalar(xs[i]));
  return s * half;
}

/// Radial integral of G over [0, R]: panels geometrically graded toward 0.
/// Returns the fine (q nodes) and coarse (q/2 nodes) values.
template <typename Scalar, typename Fn>
std::pair<Scalar, Scalar> radial_bounded(Fn&& G, Scalar R, int panels, int q) {
  Scalar fine = 0, coarse = 0;
  if (!(R > 0)) return {0, 0};
  const int qc = std::max(2, q / 2);
  Scalar hi = R;
  for (int j = 0; j < panels; ++j) {
    const Scalar lo = (j == panels - 1) ? Scalar(0) : hi / 2;
    fine += gl_panel(G, lo, hi, q);
    coarse += gl_panel(G, lo, hi, qc);
    hi = lo;
  }
  return {fine, coarse};
}

/// Radial integral of G over [0, inf): graded panels on [0,1], then panels
/// growing by factor 1.2 until the panel mass is below tail * accumulated.
/// Throws DivergentMeasure when panel masses stop decreasing in the far tail.
template <typename Scalar, typename Fn>
std::pair<Scalar, Scalar> radial_unbounded(Fn&& G, const QuadratureSpec& spec) {
  const int q = spec.nodes, qc = std::max(2, spec.nodes / 2);
  Scalar fine = 0, coarse = 0, acc_abs = 0;
  {
    Scalar hi = 1;
    const int graded = std::max(8, spec.panels / 2);
    for (int j = 0; j < graded; ++j) {
      const Scalar lo = (j == graded - 1) ? Scalar(0) : hi / 2;
      const Scalar pf = gl_panel(G, lo, hi, q);
      fine += pf;
      coarse += gl_panel(G, lo, hi, qc);
      acc_abs += std::abs(pf);
      hi = lo;
    }
  }
  Scalar lo = 1;
  Scalar prev_mass = std::numeric_limits<Scalar>::infinity();
  int non_decreasing = 0;
  while (lo < Scalar(spec.cap_radius)) {
    const Scalar hi = std::min(lo * Scalar(1.2), Scalar(spec.cap_radius));
    const Scalar pf = gl_panel(G, lo, hi, q);
    fine += pf;
    coarse += gl_panel(G, lo, hi, qc);
    const Scalar mass = std::abs(pf);
    acc_abs += mass;
    if (mass <= Scalar(spec.tail) * acc_abs + Scalar(1e-300)) break;
    // admissible weights are eventually decreasing faster than any polynomial
    // grows or diverge outright; integrands against sub-exponential tails
    // (e.g. e^{-2 sqrt t} against degree-6 polynomials) can peak as late as
    // t ~ 50, so only monitor the far tail
    if (lo > 100) {
      // slack absorbs plateau-level rounding in the panel masses
      if (mass >= prev_mass * Scalar(1 - 1e-3)) {
        if (++non_decreasing >= 3)
          throw DivergentMeasure("radial tail mass is not decreasing; the measure appears infinite");
      } else {
        non_decreasing = 0;
      }
    }
    prev_mass = mass;
    lo = hi;
  }
  return {fine, coarse};
}

template <typename Scalar>
std::vector<Scalar> angular_panel_edges(const RestrictedMeasure<Scalar>& nu,
                                        const QuadratureSpec& spec) {
  const Scalar tau = 2 * std::numbers::pi_v<Scalar>;
  std::vector<Scalar> bps;
  if (nu.factor == RestrictedMeasure<Scalar>::Factor::body_indicator)
    bps = nu.body->angular_breakpoints();
  else if (nu.factor == RestrictedMeasure<Scalar>::Factor::smooth)
    bps = nu.tilt->breakpoints;
  if (bps.empty()) bps = {0};
  const int target_panels = std::max(8, spec.sphere / std::max(1, spec.nodes));
  const Scalar target_h = tau / Scalar(target_panels);
  std::vector<Scalar> edges;
  for (size_t i = 0; i < bps.size(); ++i) {
    const Scalar a = bps[i];
    const Scalar b = (i + 1 < bps.size()) ? bps[i + 1] : bps[0] + tau;
    const int sub = std::max(1, int(std::ceil((b - a) / target_h)));
    for (int k = 0; k < sub; ++k) edges.push_back(a + (b - a) * Scalar(k) / Scalar(sub));
  }
  edges.push_back(bps[0] + tau);
  return edges;
}

}  // namespace detail

/// Core routine: integral of F against the (unnormalized) measure nu.
template <typename Scalar = double>
IntegralResult<Scalar> integrate_field(const RestrictedMeasure<Scalar>& nu,
                                       const std::function<Scalar(const Vector<Scalar>&)>& F,
                                       const QuadratureSpec& spec) {
  const int n = nu.dim;
  if (n < 2) throw InvalidInput("integrate_field: dim >= 2 required");
  const bool bounded = nu.factor == RestrictedMeasure<Scalar>::Factor::body_indicator;

  auto along = [&](const Vector<Scalar>& theta) -> std::pair<Scalar, Scalar> {
    auto G = [&](Scalar r) -> Scalar {
      const Vector<Scalar> x = r * theta;
      Scalar logd = -nu.weight.eval(r);
      if (nu.factor == RestrictedMeasure<Scalar>::Factor::smooth) logd -= nu.tilt->value(x);
      const Scalar d = std::exp(logd);
      if (d == 0) return 0;
      return d * std::pow(r, Scalar(n - 1)) * (F ? F(x) : Scalar(1));
    };
    if (bounded) {
      const Scalar R = nu.body->radial(theta);
      return detail::radial_bounded<Scalar>(G, R, spec.panels, spec.nodes);
    }
    return detail::radial_unbounded<Scalar>(G, spec);
  };

  Scalar fine = 0, coarse = 0;
  const Scalar cn = sphere_area<Scalar>(n);

  if (n == 2) {
    // composite Gauss panels over [0, 2pi), aligned with kink directions;
    // c_2 * normalized dtheta collapses to the raw angular integral
    const auto edges = detail::angular_panel_edges(nu, spec);
    const auto& [xs, ws] = gauss_legendre(std::max(4, spec.nodes));
    for (size_t j = 0; j + 1 < edges.size(); ++j) {
      const Scalar mid = (edges[j] + edges[j + 1]) / 2, half = (edges[j + 1] - edges[j]) / 2;
      for (size_t i = 0; i < xs.size(); ++i) {
        const Scalar a = mid + half * Scalar(xs[i]);
        Vector<Scalar> theta(2);
        theta << std::cos(a), std::sin(a);
        const auto [rf, rc] = along(theta);
        fine += half * Scalar(ws[i]) * rf;
        coarse += half * Scalar(ws[i]) * rc;
      }
    }
  } else if (n == 3) {
    // Gauss in cos(psi) x uniform longitude; raw sphere integral again
    const int mu = 64, mphi = 128;
    const auto& [us, ws] = gauss_legendre(mu);
    const Scalar dphi = 2 * std::numbers::pi_v<Scalar> / Scalar(mphi);
    for (int i = 0; i < mu; ++i) {
      const Scalar u = Scalar(us[i]);
      const Scalar s = std::sqrt(std::max(Scalar(0), 1 - u * u));
      for (int k = 0; k < mphi; ++k) {
        const Scalar phi = dphi * (Scalar(k) + Scalar(0.5));
        Vector<Scalar> theta(3);
        theta << s * std::cos(phi), s * std::sin(phi), u;
        const auto [rf, rc] = along(theta);
        fine += Scalar(ws[i]) * dphi * rf;
        coarse += Scalar(ws[i]) * dphi * rc;
      }
    }
  } else {
    // seeded Monte Carlo over directions with deterministic radial integrals
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0, 1);
    Scalar sum = 0, sumsq = 0, sum_c = 0;
    for (int k = 0; k < spec.mc_samples; ++k) {
      Vector<Scalar> theta(n);
      for (int i = 0; i < n; ++i) theta[i] = Scalar(gauss(rng));
      theta.normalize();
      const auto [rf, rc] = along(theta);
      sum += rf;
      sumsq += rf * rf;
      sum_c += rc;
    }
    const Scalar N = Scalar(spec.mc_samples);
    const Scalar mean = sum / N;
    const Scalar var = std::max(Scalar(0), sumsq / N - mean * mean);
    IntegralResult<Scalar> out;
    out.value = cn * mean;
    out.error_estimate = cn * (3 * std::sqrt(var / N) + std::abs(mean - sum_c / N));
    return out;
  }

  IntegralResult<Scalar> out;
  out.value = fine;
  out.error_estimate = std::abs(fine - coarse) + Scalar(1e-16) * std::abs(fine);
  return out;
}

/// Total (unnormalized) mass of nu.
template <typename Scalar = double>
IntegralResult<Scalar> measure(const RestrictedMeasure<Scalar>& nu, const QuadratureSpec& spec) {
  return integrate_field<Scalar>(nu, nullptr, spec);
}

/// int f dnu, unnormalized.
template <typename Scalar = double>
IntegralResult<Scalar> integrate(const RestrictedMeasure<Scalar>& nu, const TestFunction<Scalar>& f,
                                 const QuadratureSpec& spec) {
  return integrate_field<Scalar>(nu, f.value, spec);
}

/// Variance of f under nu normalized to a probability measure; clamped at 0
/// when roundoff drives the two-moment difference slightly negative.
template <typename Scalar = double>
IntegralResult<Scalar> variance(const RestrictedMeasure<Scalar>& nu, const TestFunction<Scalar>& f,
                                const QuadratureSpec& spec) {
  const auto m0 = measure(nu, spec);
  if (!(m0.value > 0)) throw InvalidInput("variance: measure has zero mass");
  const auto m1 = integrate(nu, f, spec);
  auto f2 = f;
  f2.value = [f](const Vector<Scalar>& x) {
    const Scalar v = f.value(x);
    return v * v;
  };
  const auto m2 = integrate_field<Scalar>(nu, f2.value, spec);
  const Scalar mean = m1.value / m0.value;
  IntegralResult<Scalar> out;
  out.value = std::max(Scalar(0), m2.value / m0.value - mean * mean);
  out.error_estimate = m2.error_estimate / m0.value +
                       2 * std::abs(mean) * m1.error_estimate / m0.value +
                       (m2.value / m0.value + mean * mean) * m0.error_estimate / m0.value;
  return out;
}

}  // namespace rotlab

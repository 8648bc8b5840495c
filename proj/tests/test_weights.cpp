#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rotlab/weights.hpp"

using namespace rotlab;

TEST_CASE("built-in weights match finite-difference derivatives") {
  std::vector<RadialWeightd> ws = {power_weight(0.5),       power_weight(1.0),
                                   power_weight(2.0),       power_weight(4.0),
                                   cauchy_weight(1.5, 2.0), cauchy_weight(3.0, 2.0),
                                   log_perturbed_weight(0.5, gaussian_weight()),
                                   sum_weight(power_weight(1.0), cauchy_weight(2.0, 2.0))};
  for (const auto& w : ws) {
    CAPTURE(w.label);
    for (double t : {0.3, 0.9, 1.7, 4.2}) {
      CHECK(w.deriv(t) == doctest::Approx(oracle::fd1(w.eval, t)).epsilon(1e-6));
      CHECK(w.deriv2(t) == doctest::Approx(oracle::fd2(w.eval, t)).epsilon(1e-4));
    }
  }
}

TEST_CASE("admissibility: built-in families pass, decreasing profile fails") {
  const auto grid = default_admissibility_grid<double>();
  CHECK(admissibility_check(power_weight(0.5), grid).pass);
  CHECK(admissibility_check(power_weight(3.0), grid).pass);
  CHECK(admissibility_check(cauchy_weight(2.0, 2.0), grid).pass);
  CHECK(admissibility_check(log_perturbed_weight(1.0, power_weight(1.0)), grid).pass);

  // w(t) = -t is decreasing: fails on w' >= 0
  auto bad = custom_weight<double>([](double t) { return -t; }, "neg_linear");
  const auto rep = admissibility_check(bad, grid);
  CHECK(!rep.pass);
  CHECK(rep.reason == "w'(t) < 0");

  // w(t) = sqrt(log(1+t)) is increasing but t w'' + w' dips negative for large t
  auto notconv = custom_weight<double>([](double t) { return std::sqrt(std::log1p(t)); },
                                       "sqrt_log");
  CHECK(!admissibility_check(notconv, grid).pass);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(power_weight(0.0), InvalidInput);
  CHECK_THROWS_AS(power_weight(-1.0), InvalidInput);
  CHECK_THROWS_AS(cauchy_weight(-1.0, 2.0), InvalidInput);
  CHECK_THROWS_AS(log_perturbed_weight(-0.5, gaussian_weight()), InvalidInput);
  CHECK_THROWS_AS(admissibility_check(gaussian_weight(), std::vector<double>{}), InvalidInput);
  CHECK_THROWS_AS(admissibility_check(gaussian_weight(), std::vector<double>{-1.0}), InvalidInput);
}

TEST_CASE("gradient of W matches finite differences") {
  const auto w = cauchy_weight(2.5, 2.0);
  auto W = [&](const Vectord& x) { return w.eval(x.norm()); };
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 20; ++k) {
    Vectord x(3);
    x << u(rng), u(rng), u(rng);
    if (x.norm() < 0.1) continue;
    const Vectord g = grad_W(w, x);
    const Vectord gf = oracle::fd_grad(W, x);
    CHECK((g - gf).norm() <= 1e-5 * (1 + gf.norm()));
  }
}

TEST_CASE("shifted operator: rank-one inverse matches dense inversion at 1e3 points") {
  std::vector<RadialWeightd> ws = {power_weight(1.5), gaussian_weight(), cauchy_weight(3.0, 2.0)};
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-3, 3);
  int tested = 0;
  while (tested < 1000) {
    const auto& w = ws[size_t(tested) % ws.size()];
    const int n = 2 + tested % 3;
    Vectord x(n), a(n);
    for (int i = 0; i < n; ++i) {
      x[i] = u(rng);
      a[i] = u(rng);
    }
    if (x.norm() < 1e-2) continue;
    const auto op = shifted_operator(w, x);
    if (!(op.radial_eig > 1e-12) || !(op.tangential_eig > 1e-12)) continue;
    const Matrixd A = op.assemble();
    const Vectord dense = A.fullPivLu().solve(a);
    const Vectord fast = op.apply_inverse(a);
    CHECK((dense - fast).norm() <= 1e-10 * (1 + dense.norm()));
    // apply is the inverse of apply_inverse
    CHECK((op.apply(fast) - a).norm() <= 1e-10 * (1 + a.norm()));
    ++tested;
  }
}

TEST_CASE("hessian of W matches finite differences of the gradient") {
  const auto w = power_weight(3.0);
  Vectord x(2);
  x << 0.8, -0.6;
  const Matrixd H = hessian_W(w, x);
  const double h = 1e-5;
  for (int j = 0; j < 2; ++j) {
    Vectord xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const Vectord col = (grad_W(w, xp) - grad_W(w, xm)) / (2 * h);
    CHECK((H.col(j) - col).norm() <= 1e-6);
  }
}

TEST_CASE("polar form equals the constrained supremum sup <a,b>^2 over <Ab,b> <= 1") {
  const auto w = cauchy_weight(2.0, 2.0);
  Vectord x(2), a(2);
  x << 1.1, 0.4;
  a << 0.7, -1.3;
  const auto op = shifted_operator(w, x);
  const Matrixd A = op.assemble();
  // brute-force scan over directions b = cos(th) e1 + sin(th) e2, scaled to
  // the constraint boundary
  double sup = 0;
  for (int i = 0; i < 200000; ++i) {
    const double th = 2 * std::numbers::pi * i / 200000;
    Vectord b(2);
    b << std::cos(th), std::sin(th);
    const double q = b.dot(A * b);
    if (q <= 0) continue;
    b /= std::sqrt(q);
    sup = std::max(sup, std::pow(a.dot(b), 2));
  }
  CHECK(polar_form(w, x, a) == doctest::Approx(sup).epsilon(1e-6));
}

TEST_CASE("polar form is +inf along null eigendirections") {
  // power p = 1: w'' = 0, so the radial eigenvalue is w'/|x| > 0 but for a
  // weight with w' = 0 somewhere the tangential eigenvalue vanishes.  Use a
  // custom flat-at-1 profile: w(t) = (t-1)^2 near t = 1 has w'(1) = 0.
  auto flat = custom_weight<double>([](double t) { return (t - 1) * (t - 1); }, "flat_at_1");
  Vectord x(2), a(2);
  x << 1.0, 0.0;
  a << 0.0, 1.0;  // purely tangential
  CHECK(polar_form(flat, x, a) == std::numeric_limits<double>::infinity());
  // purely radial component stays finite (radial eigenvalue = w'' = 2)
  Vectord ar(2);
  ar << 1.0, 0.0;
  CHECK(polar_form(flat, x, ar) == doctest::Approx(0.5));
}

TEST_CASE("origin behavior classification") {
  CHECK(power_weight(0.5).origin_behavior == OriginBehavior::integrable_singularity);
  CHECK(power_weight(1.0).origin_behavior == OriginBehavior::finite_at_zero);
  CHECK(log_perturbed_weight(0.5, gaussian_weight()).origin_behavior ==
        OriginBehavior::integrable_singularity);
  CHECK(cauchy_weight(2.0, 2.0).origin_behavior == OriginBehavior::finite_at_zero);
  CHECK_THROWS_AS(grad_W(power_weight(0.5), Vectord(Vectord::Zero(2))), DomainError);
}

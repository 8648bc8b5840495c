#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rotlab/testfns.hpp"

using namespace rotlab;

namespace {

// checks f(-x) = +-f(x) and that the analytic gradient matches central
// finite differences at a handful of generic points
void check_parity_and_gradient(const TestFunctiond& f, int n, double grad_tol = 1e-5) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const double sign = f.parity == Parity::odd ? -1.0 : 1.0;
  for (int k = 0; k < 25; ++k) {
    Vectord x(n);
    for (int i = 0; i < n; ++i) x[i] = u(rng);
    if (x.norm() < 0.2) continue;
    CAPTURE(f.label);
    if (f.parity != Parity::none)
      CHECK(f.value(Vectord(-x)) == doctest::Approx(sign * f.value(x)).epsilon(1e-12));
    if (f.gradient) {
      const Vectord g = f.gradient(x);
      const Vectord gf = oracle::fd_grad(f.value, x);
      CHECK((g - gf).norm() <= grad_tol * (1 + gf.norm()));
    }
  }
}

}  // namespace

TEST_CASE("linear functions are odd with constant gradient") {
  Vectord th(2);
  th << 0.6, -0.8;
  const auto f = linear(th);
  CHECK(f.parity == Parity::odd);
  check_parity_and_gradient(f, 2);
  Vectord x(2);
  x << 2.0, 3.0;
  CHECK(f.value(x) == doctest::Approx(th.dot(x)).epsilon(1e-14));
}

TEST_CASE("extremal functions: parity and gradients") {
  const auto w = cauchy_weight(3.0, 2.0);
  Matrixd A(2, 2);
  A << 1, 0.5, 0.5, -1;
  check_parity_and_gradient(bl_extremal(w, A), 2, 1e-4);
  CHECK(bl_extremal(w, A).parity == Parity::even);
  check_parity_and_gradient(poincare_extremal(w), 2, 1e-4);
  CHECK(poincare_extremal(w).parity == Parity::even);
  // poincare_extremal(w)(x) = w'(|x|) |x|
  Vectord x(2);
  x << 0.9, -1.2;
  const double r = x.norm();
  CHECK(poincare_extremal(w).value(x) == doctest::Approx(w.deriv(r) * r).epsilon(1e-12));
  // bl_extremal(w, A)(x) = <grad W(x), A x>
  CHECK(bl_extremal(w, A).value(x) ==
        doctest::Approx(grad_W(w, x).dot(A * x)).epsilon(1e-12));
}

TEST_CASE("monomial basis: counts, parity filter, gradients") {
  const auto odd3 = basis<double>(Parity::odd, 3, 2);
  // degree 1: x, y; degree 3: x^3, x^2 y, x y^2, y^3 -> 6 functions
  CHECK(odd3.size() == 6);
  const auto even4 = basis<double>(Parity::even, 4, 2);
  // degrees 0,2,4: 1 + 3 + 5 = 9
  CHECK(even4.size() == 9);
  for (const auto& f : odd3) {
    CHECK(f.parity == Parity::odd);
    check_parity_and_gradient(f, 2);
  }
  for (const auto& f : even4) {
    CHECK(f.parity == Parity::even);
    check_parity_and_gradient(f, 2);
  }
  // three variables
  for (const auto& f : basis<double>(Parity::odd, 3, 3)) check_parity_and_gradient(f, 3);
}

TEST_CASE("envelope basis keeps parity and analytic gradients") {
  for (const auto& f : basis<double>(Parity::even, 4, 2, /*envelope=*/true)) {
    CHECK(f.parity == Parity::even);
    check_parity_and_gradient(f, 2);
  }
  // the envelope divides by (1 + |x|^2)
  const auto plain = basis<double>(Parity::even, 2, 2);
  const auto env = basis<double>(Parity::even, 2, 2, true);
  REQUIRE(plain.size() == env.size());
  Vectord x(2);
  x << 1.3, -0.4;
  for (size_t i = 0; i < plain.size(); ++i)
    CHECK(env[i].value(x) ==
          doctest::Approx(plain[i].value(x) / (1 + x.squaredNorm())).epsilon(1e-12));
}

TEST_CASE("linear combinations combine values, gradients, and parity") {
  auto fns = basis<double>(Parity::odd, 3, 2);
  std::vector<double> c(fns.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = 0.1 * double(i + 1);
  const auto f = linear_combination(c, fns);
  CHECK(f.parity == Parity::odd);
  check_parity_and_gradient(f, 2);
  Vectord x(2);
  x << 0.7, 0.2;
  double want = 0;
  for (size_t i = 0; i < c.size(); ++i) want += c[i] * fns[i].value(x);
  CHECK(f.value(x) == doctest::Approx(want).epsilon(1e-13));
  CHECK_THROWS_AS(linear_combination(std::vector<double>{1.0}, fns), InvalidInput);
}

TEST_CASE("gauge squared: even, correct values, breakpoints from the body") {
  const auto K = square_body();
  const auto f = gauge_squared(K);
  CHECK(f.parity == Parity::even);
  Vectord x(2);
  x << 0.5, 1.5;
  CHECK(f.value(x) == doctest::Approx(std::pow(K.gauge(x), 2)).epsilon(1e-12));
  CHECK(f.breakpoints.size() == 4);
  // finite-difference gradient is accurate away from the kink directions
  Vectord y(2);
  y << 1.0, 0.3;
  const Vectord g = f.gradient(y);
  const Vectord gf = oracle::fd_grad(f.value, y, 1e-7);
  CHECK((g - gf).norm() <= 1e-4 * (1 + gf.norm()));
}

TEST_CASE("composition with a linear map") {
  Matrixd M(2, 2);
  M << 1.2, 0.3, -0.1, 0.8;
  const auto K = square_body();
  const auto f = gauge_squared(K);
  const auto g = compose_linear(f, M);
  CHECK(g.parity == Parity::even);
  Vectord x(2);
  x << 0.4, -0.9;
  CHECK(g.value(x) == doctest::Approx(f.value(Vectord(M * x))).epsilon(1e-12));
  // chain rule
  const Vectord gr = g.gradient(x);
  const Vectord want = M.transpose() * f.gradient(Vectord(M * x));
  CHECK((gr - want).norm() <= 1e-10 * (1 + want.norm()));
  // breakpoints are pulled back through M^{-1}: a kink of f at direction d
  // appears for g at direction M^{-1} d
  REQUIRE(g.breakpoints.size() == f.breakpoints.size());
  for (double a : f.breakpoints) {
    Vectord d(2);
    d << std::cos(a), std::sin(a);
    const Vectord pre = M.inverse() * d;
    const double b = std::atan2(pre[1], pre[0]);
    const double bw = b < 0 ? b + 2 * std::numbers::pi : b;
    bool found = false;
    for (double c : g.breakpoints) found = found || std::abs(c - bw) < 1e-9;
    CHECK(found);
  }
}

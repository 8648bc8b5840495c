#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rotlab/bodies.hpp"

using namespace rotlab;

namespace {

Vectord dir2(double th) {
  Vectord u(2);
  u << std::cos(th), std::sin(th);
  return u;
}

}  // namespace

TEST_CASE("gauge/support/radial consistency on a random direction sweep") {
  std::vector<SymmetricBodyd> Ks = {
      SymmetricBodyd::ball(2),
      square_body(),
      diamond_body(),
      hexagon_body(),
      ellipse_body(2.0, 1.0),
      SymmetricBodyd::lq_ball(2, 3.0),
      SymmetricBodyd::minkowski_comb(0.5, square_body(), SymmetricBodyd::ball(2))};
  for (const auto& K : Ks) {
    for (int i = 0; i < 97; ++i) {
      const Vectord u = dir2(2 * std::numbers::pi * i / 97 + 0.013);
      const double rho = K.radial(u);
      // boundary point: gauge = 1
      CHECK(K.gauge(Vectord(rho * u)) == doctest::Approx(1.0).epsilon(1e-8));
      // gauge is 1-homogeneous
      CHECK(K.gauge(Vectord(3.7 * rho * u)) == doctest::Approx(3.7).epsilon(1e-8));
      // support >= <boundary point, u>
      CHECK(K.support(u) >= rho - 1e-9);
      // support/gauge duality on the same direction pair
      CHECK(K.support(u) * K.gauge(u) >= 1 - 1e-9);
    }
  }
}

TEST_CASE("origin symmetry: gauge and support are even") {
  std::vector<SymmetricBodyd> Ks = {hexagon_body(), ellipse_body(1.5, 0.7),
                                    SymmetricBodyd::lq_ball(2, 1.5)};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (const auto& K : Ks)
    for (int k = 0; k < 50; ++k) {
      Vectord x(2);
      x << u(rng), u(rng);
      CHECK(K.gauge(x) == doctest::Approx(K.gauge(Vectord(-x))).epsilon(1e-12));
      CHECK(K.support(x) == doctest::Approx(K.support(Vectord(-x))).epsilon(1e-12));
    }
}

TEST_CASE("square and lq(inf) agree; diamond and lq(1) agree") {
  const auto sq = square_body();
  const auto cube = SymmetricBodyd::lq_ball(2, std::numeric_limits<double>::infinity());
  const auto dm = diamond_body();
  const auto l1 = SymmetricBodyd::lq_ball(2, 1.0);
  for (int i = 0; i < 64; ++i) {
    const Vectord u = dir2(2 * std::numbers::pi * i / 64 + 0.01);
    CHECK(sq.gauge(u) == doctest::Approx(cube.gauge(u)).epsilon(1e-12));
    CHECK(sq.support(u) == doctest::Approx(cube.support(u)).epsilon(1e-12));
    CHECK(dm.gauge(u) == doctest::Approx(l1.gauge(u)).epsilon(1e-12));
    CHECK(dm.support(u) == doctest::Approx(l1.support(u)).epsilon(1e-12));
  }
}

TEST_CASE("ellipsoid gauge is the quadratic form root") {
  Matrixd C(2, 2);
  C << 2.0, 0.3, 0.3, 0.5;
  const auto E = SymmetricBodyd::ellipsoid(C);
  Vectord x(2);
  x << 1.2, -0.7;
  CHECK(E.gauge(x) == doctest::Approx(std::sqrt(x.dot(C * x))).epsilon(1e-12));
  // support h(u) = sqrt(u^T C^{-1} u)
  Vectord u(2);
  u << 0.4, 1.0;
  CHECK(E.support(u) == doctest::Approx(std::sqrt(u.dot(C.inverse() * u))).epsilon(1e-12));
  // support point attains the support value and lies on the boundary
  const auto p = E.support_point(u);
  REQUIRE(p.has_value());
  CHECK(p->dot(u) == doctest::Approx(E.support(u)).epsilon(1e-12));
  CHECK(E.gauge(*p) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(SymmetricBodyd::ellipsoid(Matrixd(-C)), InvalidInput);
}

TEST_CASE("polygon validation rejects non-convex and origin-excluding input") {
  // reflex vertex
  std::vector<Vec2<double>> bad = {{1, 0}, {0.1, 0.05}, {-1, 0.5}};
  CHECK_THROWS_AS(SymmetricBodyd::polygon(std::move(bad)), InvalidInput);
  // clockwise order
  std::vector<Vec2<double>> cw = {{-1, 1}, {1, 1}};
  CHECK_THROWS_AS(SymmetricBodyd::polygon(std::move(cw)), InvalidInput);
}

TEST_CASE("linear image transforms gauge and support correctly") {
  Matrixd T(2, 2);
  T << 1.0, 0.8, -0.2, 1.5;
  const auto K = hexagon_body();
  const auto TK = SymmetricBodyd::linear_image(T, K);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> un(-2, 2);
  for (int k = 0; k < 40; ++k) {
    Vectord x(2);
    x << un(rng), un(rng);
    CHECK(TK.gauge(x) == doctest::Approx(K.gauge(Vectord(T.inverse() * x))).epsilon(1e-10));
    CHECK(TK.support(x) == doctest::Approx(K.support(Vectord(T.transpose() * x))).epsilon(1e-10));
  }
  CHECK_THROWS_AS(SymmetricBodyd::linear_image(Matrixd(Matrixd::Zero(2, 2)), K), InvalidInput);
}

TEST_CASE("matrix exponential matches the scaled Taylor series oracle") {
  Matrixd A(2, 2);
  A << 0, 1, 1, 0;
  const Matrixd E = matrix_exponential(A, 1.0);
  CHECK(E(0, 0) == doctest::Approx(std::cosh(1.0)).epsilon(1e-12));
  CHECK(E(0, 1) == doctest::Approx(std::sinh(1.0)).epsilon(1e-12));
  Matrixd B(3, 3);
  B << 0.4, -0.2, 0.1, -0.2, 0.9, 0.3, 0.1, 0.3, -0.5;
  const Matrixd got = matrix_exponential(B, 0.7);
  const Matrixd ref = oracle::expm_series(Matrixd(0.7 * B));
  CHECK((got - ref).norm() <= 1e-10 * ref.norm());
  // exact identity at t = 0
  CHECK((matrix_exponential(B, 0.0) - Matrixd::Identity(3, 3)).norm() == 0.0);
  Matrixd S(2, 2);
  S << 0, 1, 0, 0;
  CHECK_THROWS_AS(matrix_exponential(S, 1.0), InvalidInput);
}

TEST_CASE("Minkowski combination support is the convex combination of supports") {
  const auto K = square_body();
  const auto L = ellipse_body(1.3, 0.6);
  const double lam = 0.3;
  const auto M = SymmetricBodyd::minkowski_comb(lam, K, L);
  for (int i = 0; i < 50; ++i) {
    const Vectord u = dir2(2 * std::numbers::pi * i / 50 + 0.007);
    CHECK(M.support(u) ==
          doctest::Approx((1 - lam) * K.support(u) + lam * L.support(u)).epsilon(1e-12));
  }
}

TEST_CASE("half square plus half diamond is the expected octagon") {
  const auto M = polygon_minkowski_sum(square_body(), diamond_body(), 0.5);
  REQUIRE(M.is_polygon());
  const auto verts = M.polygon_vertices();
  CHECK(verts.size() == 8);
  // brute-force support oracle over all vertex pairs
  const auto P = square_body().polygon_vertices();
  const auto Q = diamond_body().polygon_vertices();
  for (int i = 0; i < 60; ++i) {
    const double th = 2 * std::numbers::pi * i / 60 + 0.003;
    Eigen::Vector2d d(std::cos(th), std::sin(th));
    std::vector<Eigen::Vector2d> Ph, Qh;
    for (const auto& v : P) Ph.push_back(0.5 * v);
    for (const auto& v : Q) Qh.push_back(0.5 * v);
    CHECK(M.support(Vectord(d)) ==
          doctest::Approx(oracle::minkowski_support_bruteforce(Ph, Qh, d)).epsilon(1e-12));
  }
}

TEST_CASE("comb radial of half square plus half disk at the diagonal") {
  const auto M = SymmetricBodyd::minkowski_comb(0.5, square_body(), SymmetricBodyd::ball(2));
  const Vectord u = dir2(std::numbers::pi / 4);
  // along (1,1)/sqrt2 the boundary point is (1,1)/2 + theta/2:
  // rho = sqrt(2)/2 + 1/2
  CHECK(M.radial(u) == doctest::Approx((std::sqrt(2.0) + 1) / 2).epsilon(1e-8));
  // radial from support minimization agrees with 1/gauge where both exist
  for (int i = 0; i < 30; ++i) {
    const Vectord d = dir2(2 * std::numbers::pi * i / 30 + 0.01);
    CHECK(M.radial(d) * M.gauge(d) == doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("angular breakpoints sit where the radial function kinks") {
  const auto sq = square_body();
  const auto bp = sq.angular_breakpoints();
  REQUIRE(bp.size() == 4);
  for (double a : {std::numbers::pi / 4, 3 * std::numbers::pi / 4, 5 * std::numbers::pi / 4,
                   7 * std::numbers::pi / 4}) {
    bool found = false;
    for (double b : bp) found = found || std::abs(b - a) < 1e-9;
    CHECK(found);
  }
  // smooth bodies report none
  CHECK(SymmetricBodyd::ball(2).angular_breakpoints().empty());
  CHECK(ellipse_body(2.0, 1.0).angular_breakpoints().empty());
  // polygon + smooth combination has breakpoints between edge and arc pieces
  const auto M = SymmetricBodyd::minkowski_comb(0.5, square_body(), SymmetricBodyd::ball(2));
  CHECK(M.angular_breakpoints().size() >= 8);
}

TEST_CASE("rotation invariance of the ball under any image by a rotation") {
  const double c = std::cos(0.6), s = std::sin(0.6);
  Matrixd R(2, 2);
  R << c, -s, s, c;
  const auto B = SymmetricBodyd::ball(2, 1.7);
  const auto RB = SymmetricBodyd::linear_image(R, B);
  for (int i = 0; i < 40; ++i) {
    const Vectord u = dir2(2 * std::numbers::pi * i / 40);
    CHECK(RB.gauge(u) == doctest::Approx(B.gauge(u)).epsilon(1e-12));
    CHECK(RB.radial(u) == doctest::Approx(1.7).epsilon(1e-10));
  }
}

TEST_CASE("3-D bodies: lq ball and Minkowski combination radial") {
  const auto cube = SymmetricBodyd::lq_ball(3, std::numeric_limits<double>::infinity());
  Vectord x(3);
  x << 0.5, -1.0, 0.25;
  CHECK(cube.gauge(x) == doctest::Approx(1.0).epsilon(1e-12));
  const auto M = SymmetricBodyd::minkowski_comb(0.5, cube, SymmetricBodyd::ball(3));
  Vectord d(3);
  d << 1, 1, 1;
  d /= d.norm();
  // along the main diagonal: boundary = (1,1,1)/2 + theta/2
  CHECK(M.radial(d) == doctest::Approx(std::sqrt(3.0) / 2 + 0.5).epsilon(1e-6));
}

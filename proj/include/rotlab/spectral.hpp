#pragma once

// Discretized building blocks behind the measure-level inequalities:
//  - Galerkin check of the spherical weighted Poincare inequality
//      int (n-1 - Rv) g^2 dmu <= int |grad_S g|^2 dmu,   Rv(x) = <grad v, x>,
//    over mean-zero spans of circle modes (n=2) or spherical harmonics (n=3);
//  - the 1-D identity  RHS - LHS = int (g')^2 t^{alpha+2} e^{-w-v} dt, g = f/t;
//  - Rayleigh-quotient sharpness of the variance inequalities on polynomial
//    spans (the pencil's top eigenvalue must stay <= 1);
//  - the elliptic criterion: for even u with Lu = Delta u - <grad W, grad u> = 1
//    on K,  E = int (|hess u|^2 + <hess W grad u, grad u>) dmu_K / mu(K) >= 1/n,
//    solved by finite volumes in polar (disk) or Cartesian (square) form.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "rotlab/bodies.hpp"
#include "rotlab/checks.hpp"
#include "rotlab/common.hpp"
#include "rotlab/quadrature.hpp"
#include "rotlab/report.hpp"
#include "rotlab/testfns.hpp"
#include "rotlab/weights.hpp"

namespace rotlab {

struct GalerkinSystem {
  Matrixd stiffness;  // S
  Matrixd mass_like;  // M
};

// ---------------------------------------------------------------------------
// Spherical weighted Poincare (n = 2, 3)

namespace detail {

/// Normalized associated Legendre values and colatitude derivatives at
/// u = cos(theta): P[m][l] holds \bar P_l^m, orthonormal over the sphere.
inline void normalized_legendre(int L, double u, std::vector<std::vector<double>>& P,
                                std::vector<std::vector<double>>& dP) {
  const double s = std::sqrt(std::max(0.0, 1 - u * u));
  P.assign(L + 1, std::vector<double>(L + 1, 0.0));
  dP.assign(L + 1, std::vector<double>(L + 1, 0.0));
  P[0][0] = std::sqrt(1.0 / (4 * std::numbers::pi));
  for (int m = 1; m <= L; ++m)
    P[m][m] = -std::sqrt((2.0 * m + 1) / (2.0 * m)) * s * P[m - 1][m - 1];
  for (int m = 0; m < L; ++m) P[m][m + 1] = std::sqrt(2.0 * m + 3) * u * P[m][m];
  for (int m = 0; m <= L; ++m) {
    for (int l = m + 2; l <= L; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1) / (double(l) * l - double(m) * m));
      const double ap = std::sqrt((4.0 * (l - 1) * (l - 1) - 1) /
                                  (double(l - 1) * (l - 1) - double(m) * m));
      P[m][l] = a * (u * P[m][l - 1] - P[m][l - 2] / ap);
    }
  }
  for (int m = 0; m <= L; ++m) {
    for (int l = m; l <= L; ++l) {
      if (l == 0) continue;
      const double c = (l > m) ? std::sqrt((2.0 * l + 1) / (2.0 * l - 1) *
                                           (double(l) * l - double(m) * m))
                               : 0.0;
      dP[m][l] = (l * u * P[m][l] - (l > m ? c * P[m][l - 1] : 0.0)) / s;
    }
  }
}

}  // namespace detail

inline CheckReport spherical_poincare_check(const TestFunctiond& v, int n, int basis_size,
                                            double tol = 1e-8) {
  if (basis_size < 2) throw InvalidInput("spherical_poincare_check: basis_size >= 2");
  if (n != 2 && n != 3) throw InvalidInput("spherical_poincare_check: n must be 2 or 3");
  detail::sample_midpoint_convex(v.value, n, 2.0, "spherical_poincare_check");

  // quadrature nodes on the sphere with weights, plus pointwise density and Rv
  struct Node {
    Vectord x;
    double wq;
  };
  std::vector<Node> nodes;
  if (n == 2) {
    std::vector<double> bps = v.breakpoints.empty() ? std::vector<double>{0.0} : v.breakpoints;
    const double tau = 2 * std::numbers::pi;
    const int target = 128;
    const double th = tau / target;
    std::vector<double> edges;
    for (size_t i = 0; i < bps.size(); ++i) {
      const double a = bps[i], b = (i + 1 < bps.size()) ? bps[i + 1] : bps[0] + tau;
      const int sub = std::max(1, int(std::ceil((b - a) / th)));
      for (int k = 0; k < sub; ++k) edges.push_back(a + (b - a) * k / sub);
    }
    edges.push_back(bps[0] + tau);
    const auto& [xs, ws] = gauss_legendre(8);
    for (size_t j = 0; j + 1 < edges.size(); ++j) {
      const double mid = (edges[j] + edges[j + 1]) / 2, half = (edges[j + 1] - edges[j]) / 2;
      for (size_t i = 0; i < xs.size(); ++i) {
        Node nd;
        nd.x = Vectord(2);
        const double a = mid + half * xs[i];
        nd.x << std::cos(a), std::sin(a);
        nd.wq = half * ws[i];
        nodes.push_back(nd);
      }
    }
  } else {
    const int mu = 64, mphi = 128;
    const auto& [us, ws] = gauss_legendre(mu);
    const double dphi = 2 * std::numbers::pi / mphi;
    for (int i = 0; i < mu; ++i) {
      const double s = std::sqrt(std::max(0.0, 1 - us[i] * us[i]));
      for (int k = 0; k < mphi; ++k) {
        const double phi = dphi * (k + 0.5);
        Node nd;
        nd.x = Vectord(3);
        nd.x << s * std::cos(phi), s * std::sin(phi), us[i];
        nd.wq = ws[i] * dphi;
        nodes.push_back(nd);
      }
    }
  }

  // basis values and tangential gradients at the nodes
  int nb = 0;
  Matrixd B;          // values
  Matrixd Gtheta;     // n=2: d/dtheta; n=3: d/dcolatitude
  Matrixd Gphi;       // n=3 only: (1/sin) d/dphi
  if (n == 2) {
    const int m_max = basis_size / 2;
    if (m_max < 1) throw InvalidInput("spherical_poincare_check: basis_size too small");
    nb = 2 * m_max;
    B.resize(long(nodes.size()), nb);
    Gtheta.resize(long(nodes.size()), nb);
    for (size_t p = 0; p < nodes.size(); ++p) {
      const double a = std::atan2(nodes[p].x[1], nodes[p].x[0]);
      for (int k = 1; k <= m_max; ++k) {
        B(long(p), 2 * k - 2) = std::cos(k * a);
        B(long(p), 2 * k - 1) = std::sin(k * a);
        Gtheta(long(p), 2 * k - 2) = -k * std::sin(k * a);
        Gtheta(long(p), 2 * k - 1) = k * std::cos(k * a);
      }
    }
  } else {
    const int L = basis_size;  // interpreted as the max harmonic degree
    if (L < 1 || L > 12) throw InvalidInput("spherical_poincare_check: harmonic degree in [1,12]");
    nb = (L + 1) * (L + 1) - 1;  // all (l,m) with l >= 1
    B.resize(long(nodes.size()), nb);
    Gtheta.resize(long(nodes.size()), nb);
    Gphi.resize(long(nodes.size()), nb);
    std::vector<std::vector<double>> P, dP;
    for (size_t p = 0; p < nodes.size(); ++p) {
      const double u = nodes[p].x[2];
      const double s = std::sqrt(std::max(1e-300, 1 - u * u));
      const double phi = std::atan2(nodes[p].x[1], nodes[p].x[0]);
      detail::normalized_legendre(L, u, P, dP);
      int c = 0;
      for (int l = 1; l <= L; ++l) {
        for (int m = 0; m <= l; ++m) {
          const double norm = (m == 0) ? 1.0 : std::numbers::sqrt2;
          if (m == 0) {
            B(long(p), c) = P[0][l];
            Gtheta(long(p), c) = dP[0][l];
            Gphi(long(p), c) = 0;
            ++c;
          } else {
            const double cm = std::cos(m * phi), sm = std::sin(m * phi);
            B(long(p), c) = norm * P[m][l] * cm;
            Gtheta(long(p), c) = norm * dP[m][l] * cm;
            Gphi(long(p), c) = -norm * P[m][l] * m * sm / s;
            ++c;
            B(long(p), c) = norm * P[m][l] * sm;
            Gtheta(long(p), c) = norm * dP[m][l] * sm;
            Gphi(long(p), c) = norm * P[m][l] * m * cm / s;
            ++c;
          }
        }
      }
    }
  }

  // node weights with density, Rv, and the weighted-mean projection
  Vectord dens(long(nodes.size())), rv(long(nodes.size())), wq(long(nodes.size()));
  double total = 0;
  for (size_t p = 0; p < nodes.size(); ++p) {
    const double vv = v.value(nodes[p].x);
    dens[long(p)] = std::exp(-vv);
    rv[long(p)] = v.gradient(nodes[p].x).dot(nodes[p].x);
    wq[long(p)] = nodes[p].wq;
    total += nodes[p].wq * dens[long(p)];
  }
  Vectord means = Vectord::Zero(nb);
  for (size_t p = 0; p < nodes.size(); ++p)
    means += wq[long(p)] * dens[long(p)] * B.row(long(p)).transpose();
  means /= total;

  Matrixd S = Matrixd::Zero(nb, nb), M = Matrixd::Zero(nb, nb), mass = Matrixd::Zero(nb, nb);
  for (size_t p = 0; p < nodes.size(); ++p) {
    const double wd = wq[long(p)] * dens[long(p)];
    const Vectord b = B.row(long(p)).transpose() - means;
    Vectord g = Gtheta.row(long(p)).transpose();
    S += wd * (g * g.transpose());
    if (n == 3) {
      Vectord g2 = Gphi.row(long(p)).transpose();
      S += wd * (g2 * g2.transpose());
    }
    M += wd * (n - 1 - rv[long(p)]) * (b * b.transpose());
    mass += wd * (b * b.transpose());
  }
  S = ((S + S.transpose()) / 2).eval();
  M = ((M + M.transpose()) / 2).eval();

  Eigen::SelfAdjointEigenSolver<Matrixd> es(S - M);
  const double lam_min = es.eigenvalues().minCoeff();

  CheckReport rep;
  rep.name = "spherical_poincare_check";
  rep.params = {{"v", v.label}, {"n", n}, {"basis_size", basis_size}};
  rep.gaps = {lam_min};
  rep.tolerance = tol;
  rep.extra = {{"lambda_min", lam_min}};
  if (n == 3) {
    // Laplace-Beltrami spectrum of the retained modes (meaningful for v = 0)
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrixd> ges(S, mass);
    std::vector<double> spectrum(ges.eigenvalues().data(),
                                 ges.eigenvalues().data() + ges.eigenvalues().size());
    rep.extra["lb_spectrum"] = spectrum;
  }
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------
// 1-D identity: RHS - LHS = int (g')^2 t^{alpha+2} e^{-w-v} dt with f = t g

struct Scalar1D {
  std::function<double(double)> eval;
  std::function<double(double)> deriv;
};

inline CheckReport lemma_1d_identity(const Scalar1D& w, const Scalar1D& v, const Scalar1D& f,
                                     const Scalar1D& g, double alpha, double support_end,
                                     double tol = 1e-10) {
  if (alpha < 0) throw InvalidInput("lemma_1d_identity: alpha >= 0 required");
  if (!(support_end > 0)) throw InvalidInput("lemma_1d_identity: support bound must be positive");
  if (std::abs(f.eval(0.0)) > 1e-12) throw InvalidInput("lemma_1d_identity: f(0) must vanish");
  auto dens = [&](double t) { return std::exp(-w.eval(t) - v.eval(t)); };
  auto lhs_int = [&](double t) {
    const double ft = f.eval(t);
    return w.deriv(t) / t * ft * ft * std::pow(t, alpha) * dens(t);
  };
  auto rhs_int = [&](double t) {
    const double ft = f.eval(t), fp = f.deriv(t);
    const double q = ft / t;
    return (fp * fp + alpha * q * q - v.deriv(t) * ft * ft / t) * std::pow(t, alpha) * dens(t);
  };
  auto d_int = [&](double t) {
    const double gp = g.deriv(t);
    return gp * gp * std::pow(t, alpha + 2) * dens(t);
  };
  auto integrate = [&](auto&& F) {
    // uniform panels, with the first one subdivided geometrically toward 0
    // to resolve the t^alpha factor
    const int panels = 40;
    const double hstep = support_end / panels;
    double acc = 0;
    {
      double hi = hstep;
      for (int j = 0; j < 24; ++j) {
        const double lo = (j == 23) ? 0.0 : hi / 2;
        acc += detail::gl_panel(F, lo, hi, 12);
        hi = lo;
      }
    }
    for (int j = 1; j < panels; ++j)
      acc += detail::gl_panel(F, j * hstep, (j + 1) * hstep, 12);
    return acc;
  };
  const double lhs = integrate(lhs_int);
  const double rhs = integrate(rhs_int);
  const double d = integrate(d_int);
  const double residual = (rhs - lhs) - d;
  CheckReport rep;
  rep.name = "lemma_1d_identity";
  rep.params = {{"alpha", alpha}, {"support_end", support_end}};
  rep.gaps = {-std::abs(residual)};
  rep.tolerance = tol;
  rep.extra = {{"lhs", lhs}, {"rhs", rhs}, {"difference_integral", d},
               {"residual", residual}, {"inequality_gap", rhs - lhs}};
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------
// Rayleigh-quotient sharpness: top generalized eigenvalue of the pencil must
// not exceed 1 on any finite span

inline CheckReport rayleigh_sharpness(const RadialWeightd& w, const RestrictedMeasured& nu,
                                      Parity parity, int degree, const QuadratureSpec& spec = {},
                                      bool envelope = false, double tol = 1e-6) {
  if (parity == Parity::none) throw InvalidInput("rayleigh_sharpness: parity must be even or odd");
  auto fns = basis<double>(parity, degree, nu.dim, envelope);
  if (parity == Parity::even && !envelope) {
    // constants lie in the kernel of both quadratic forms; drop them
    std::erase_if(fns, [&](const TestFunctiond& f) {
      Vectord probe = Vectord::Constant(nu.dim, 0.7);
      return f.gradient(probe).norm() == 0 && f.gradient(Vectord(2 * probe)).norm() == 0;
    });
  }
  const int nb = int(fns.size());
  if (nb < 1) throw InvalidInput("rayleigh_sharpness: empty basis");
  const double m0 = measure(nu, spec).value;
  Matrixd S = Matrixd::Zero(nb, nb), M = Matrixd::Zero(nb, nb);
  Vectord means = Vectord::Zero(nb);
  if (parity == Parity::even)
    for (int i = 0; i < nb; ++i) means[i] = integrate(nu, fns[i], spec).value / m0;
  for (int i = 0; i < nb; ++i) {
    for (int j = i; j < nb; ++j) {
      double s, m;
      if (parity == Parity::odd) {
        s = integrate_field<double>(
                nu, [&](const Vectord& x) { return fns[i].gradient(x).dot(fns[j].gradient(x)); },
                spec)
                .value;
        m = integrate_field<double>(
                nu,
                [&](const Vectord& x) {
                  const double r = x.norm();
                  return r > 0 ? w.deriv(r) / r * fns[i].value(x) * fns[j].value(x) : 0.0;
                },
                spec)
                .value;
      } else {
        s = integrate_field<double>(
                nu,
                [&](const Vectord& x) {
                  return polar_form_bilinear(w, x, Vectord(fns[i].gradient(x)),
                                             Vectord(fns[j].gradient(x)));
                },
                spec)
                .value;
        m = integrate_field<double>(
                nu, [&](const Vectord& x) { return fns[i].value(x) * fns[j].value(x); }, spec)
                .value -
            m0 * means[i] * means[j];
      }
      S(i, j) = S(j, i) = s / m0;
      M(i, j) = M(j, i) = m / m0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrixd> chk(S);
  const double smin = chk.eigenvalues().minCoeff(), smax = chk.eigenvalues().maxCoeff();
  if (!(smin > 1e-12 * std::max(1.0, smax))) {
    int worst = 0;
    chk.eigenvectors().col(0).cwiseAbs().maxCoeff(&worst);
    throw InvalidInput("rayleigh_sharpness: basis is rank-deficient under nu near index " +
                       std::to_string(worst) + " (" + fns[size_t(worst)].label + ")");
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrixd> ges(M, S);
  const double lam_max = ges.eigenvalues().maxCoeff();
  CheckReport rep;
  rep.name = "rayleigh_sharpness";
  rep.params = {{"weight", w.label}, {"parity", parity == Parity::odd ? "odd" : "even"},
                {"degree", degree}, {"envelope", envelope}, {"basis_size", nb}};
  rep.gaps = {1.0 - lam_max};
  rep.tolerance = tol;
  rep.extra = {{"lambda_max", lam_max}};
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------
// Elliptic criterion on K: finite-volume solve of div(e^{-W} grad u) = e^{-W}
// with a constant-flux boundary closure (discretely compatible), then
// E = int (|hess u|^2 + <hess W grad u, grad u>) dmu_K / mu(K)

namespace detail {

struct KLSolution {
  double E = 0;
  double mass = 0;
  double residual_linf = 0;  // |Lu - 1| on interior cells
};

/// 1-D stencils on a uniform grid of values y (index i), first derivative.
inline double d1(const std::vector<double>& y, long i, long m, double h) {
  if (i == 0) return (-3 * y[0] + 4 * y[1] - y[2]) / (2 * h);
  if (i == m - 1) return (3 * y[m - 1] - 4 * y[m - 2] + y[m - 3]) / (2 * h);
  return (y[i + 1] - y[i - 1]) / (2 * h);
}

inline double d2(const std::vector<double>& y, long i, long m, double h) {
  if (i == 0) return (2 * y[0] - 5 * y[1] + 4 * y[2] - y[3]) / (h * h);
  if (i == m - 1) return (2 * y[m - 1] - 5 * y[m - 2] + 4 * y[m - 3] - y[m - 4]) / (h * h);
  return (y[i + 1] - 2 * y[i] + y[i - 1]) / (h * h);
}

inline KLSolution kl_solve_disk(const RadialWeightd& w, double R, int points) {
  const int nr = points - 1, na = points - 1;  // cells
  const double h = R / nr, dth = 2 * std::numbers::pi / na;
  auto idx = [&](int i, int j) { return i * na + ((j % na + na) % na); };
  auto rc = [&](int i) { return (i + 0.5) * h; };
  std::vector<Eigen::Triplet<double>> trips;
  Vectord rhs = Vectord::Zero(nr * na);
  double mass = 0;
  std::vector<double> dens(nr);
  for (int i = 0; i < nr; ++i) dens[i] = std::exp(-w.eval(rc(i)));
  for (int i = 0; i < nr; ++i) mass += dens[i] * rc(i) * h * dth * na;
  const double bflux = mass / (2 * std::numbers::pi * R);  // e^{-W} du/dn per unit length
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < na; ++j) {
      const int row = idx(i, j);
      double diag = 0;
      // radial faces
      if (i + 1 < nr) {
        const double rf = (i + 1) * h;
        const double c = std::exp(-w.eval(rf)) * rf * dth / h;
        trips.emplace_back(row, idx(i + 1, j), c);
        diag -= c;
      } else {
        rhs[row] -= bflux * R * dth;  // prescribed outward flux
      }
      if (i > 0) {
        const double rf = i * h;
        const double c = std::exp(-w.eval(rf)) * rf * dth / h;
        trips.emplace_back(row, idx(i - 1, j), c);
        diag -= c;
      }
      // angular faces
      const double ca = dens[i] * h / (rc(i) * dth);
      trips.emplace_back(row, idx(i, j + 1), ca);
      trips.emplace_back(row, idx(i, j - 1), ca);
      diag -= 2 * ca;
      trips.emplace_back(row, row, diag);
      rhs[row] += dens[i] * rc(i) * h * dth;
    }
  }
  // ground one degree of freedom (system is compatible; kernel = constants)
  for (auto& t : trips)
    if (t.row() == 0) t = Eigen::Triplet<double>(0, t.col(), t.col() == 0 ? 1.0 : 0.0);
  rhs[0] = 0;
  Eigen::SparseMatrix<double> A(nr * na, nr * na);
  A.setFromTriplets(trips.begin(), trips.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(A);
  if (lu.info() != Eigen::Success) throw std::runtime_error("kl_solve_disk: factorization failed");
  const Vectord u = lu.solve(rhs);

  // E via polar-frame Hessian at cell centers
  KLSolution out;
  out.mass = mass;
  double num = 0;
  std::vector<double> col(nr);
  for (int j = 0; j < na; ++j) {
    for (int i = 0; i < nr; ++i) col[i] = u[idx(i, j)];
    for (int i = 0; i < nr; ++i) {
      const double r = rc(i);
      const double ur = d1(col, i, nr, h);
      const double urr = d2(col, i, nr, h);
      const double ut = (u[idx(i, j + 1)] - u[idx(i, j - 1)]) / (2 * dth);
      const double utt = (u[idx(i, j + 1)] - 2 * u[idx(i, j)] + u[idx(i, j - 1)]) / (dth * dth);
      // cross derivative: centered in theta of du/dr
      double urt;
      {
        std::vector<double> colp(nr), colm(nr);
        for (int k = 0; k < nr; ++k) {
          colp[k] = u[idx(k, j + 1)];
          colm[k] = u[idx(k, j - 1)];
        }
        urt = (d1(colp, i, nr, h) - d1(colm, i, nr, h)) / (2 * dth);
      }
      const double Hrr = urr;
      const double Hrt = (urt * r - ut) / (r * r);
      const double Htt = utt / (r * r) + ur / r;
      const double hess2 = Hrr * Hrr + 2 * Hrt * Hrt + Htt * Htt;
      const double curv = w.deriv2(r) * ur * ur + w.deriv(r) / r * (ut / r) * (ut / r);
      num += (hess2 + curv) * dens[i] * r * h * dth;
      if (i > 0 && i + 1 < nr) {
        const double lap = urr + ur / r + utt / (r * r);
        const double res = lap - w.deriv(r) * ur - 1.0;
        out.residual_linf = std::max(out.residual_linf, std::abs(res));
      }
    }
  }
  out.E = num / mass;
  return out;
}

inline KLSolution kl_solve_square(const RadialWeightd& w, double half, int points) {
  const int n = points - 1;  // cells per axis
  const double h = 2 * half / n;
  auto cc = [&](int i) { return -half + (i + 0.5) * h; };
  auto idx = [&](int i, int j) { return i * n + j; };
  auto dens_at = [&](double x, double y) { return std::exp(-w.eval(std::hypot(x, y))); };
  std::vector<Eigen::Triplet<double>> trips;
  Vectord rhs = Vectord::Zero(n * n);
  double mass = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mass += dens_at(cc(i), cc(j)) * h * h;
  const double bflux = mass / (8 * half);  // constant flux per unit boundary length
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int row = idx(i, j);
      double diag = 0;
      auto face = [&](int i2, int j2, double fx, double fy) {
        if (i2 < 0 || i2 >= n || j2 < 0 || j2 >= n) {
          rhs[row] -= bflux * h;
          return;
        }
        const double c = dens_at(fx, fy);
        trips.emplace_back(row, idx(i2, j2), c);
        diag -= c;
      };
      face(i + 1, j, cc(i) + h / 2, cc(j));
      face(i - 1, j, cc(i) - h / 2, cc(j));
      face(i, j + 1, cc(i), cc(j) + h / 2);
      face(i, j - 1, cc(i), cc(j) - h / 2);
      trips.emplace_back(row, row, diag);
      rhs[row] += dens_at(cc(i), cc(j)) * h * h;
    }
  }
  for (auto& t : trips)
    if (t.row() == 0) t = Eigen::Triplet<double>(0, t.col(), t.col() == 0 ? 1.0 : 0.0);
  rhs[0] = 0;
  Eigen::SparseMatrix<double> A(n * n, n * n);
  A.setFromTriplets(trips.begin(), trips.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(A);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("kl_solve_square: factorization failed");
  const Vectord u = lu.solve(rhs);

  KLSolution out;
  out.mass = mass;
  double num = 0;
  std::vector<double> row_x(n), row_y(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) row_x[k] = u[idx(k, j)];
      for (int k = 0; k < n; ++k) row_y[k] = u[idx(i, k)];
      const double ux = d1(row_x, i, n, h), uy = d1(row_y, j, n, h);
      const double uxx = d2(row_x, i, n, h), uyy = d2(row_y, j, n, h);
      double uxy;
      {
        std::vector<double> rp(n), rm(n);
        const int jp = std::min(j + 1, n - 1), jm = std::max(j - 1, 0);
        for (int k = 0; k < n; ++k) {
          rp[k] = u[idx(k, jp)];
          rm[k] = u[idx(k, jm)];
        }
        uxy = (d1(rp, i, n, h) - d1(rm, i, n, h)) / ((jp - jm) * h);
      }
      const double x = cc(i), y = cc(j), r = std::hypot(x, y);
      const double hess2 = uxx * uxx + 2 * uxy * uxy + uyy * uyy;
      const double wp = w.deriv(r), wpp = w.deriv2(r);
      const double grad2 = ux * ux + uy * uy;
      const double radial = (ux * x + uy * y) / r;
      const double curv = wp / r * grad2 + (wpp - wp / r) * radial * radial;
      num += (hess2 + curv) * dens_at(x, y) * h * h;
      if (i > 0 && i + 1 < n && j > 0 && j + 1 < n) {
        const double res = uxx + uyy - wp / r * (ux * x + uy * y) - 1.0;
        out.residual_linf = std::max(out.residual_linf, std::abs(res));
      }
    }
  }
  out.E = num / mass;
  return out;
}

}  // namespace detail

/// 1-D oracle for the disk: radial solution u'(r) = int_0^r s e^{-w} ds / (r e^{-w(r)}),
/// E = int (u''^2 + (u'/r)^2 + w'' u'^2) e^{-w} r dr / int e^{-w} r dr.
inline double kl_disk_oracle(const RadialWeightd& w, double R) {
  auto up = [&](double r) {
    auto G = [&](double s) { return s * std::exp(-w.eval(s)); };
    double acc = 0, hi = r;
    for (int j = 0; j < 30; ++j) {
      const double lo = (j == 29) ? 0.0 : hi / 2;
      acc += detail::gl_panel(G, lo, hi, 12);
      hi = lo;
    }
    return acc / (r * std::exp(-w.eval(r)));
  };
  auto integrand = [&](double r) {
    const double u1 = up(r);
    const double u2 = 1 + w.deriv(r) * u1 - u1 / r;  // from u'' + u'/r - w'u' = 1
    return (u2 * u2 + (u1 / r) * (u1 / r) + w.deriv2(r) * u1 * u1) * std::exp(-w.eval(r)) * r;
  };
  auto massint = [&](double r) { return std::exp(-w.eval(r)) * r; };
  auto integrate0R = [&](auto&& F) {
    double acc = 0, hi = R;
    for (int j = 0; j < 30; ++j) {
      const double lo = (j == 29) ? 0.0 : hi / 2;
      acc += detail::gl_panel(F, lo, hi, 12);
      hi = lo;
    }
    return acc;
  };
  return integrate0R(integrand) / integrate0R(massint);
}

/// Residual of the pointwise split |hess u|^2 = |hess(u - r)|^2 + (2/n) Lap u - 1/n
/// with r = |x|^2/(2n), evaluated with the discrete stencils on u = r itself.
inline double r_decompose_residual(int n, int points = 41) {
  if (n < 2) throw InvalidInput("r_decompose_residual: n >= 2 required");
  const double h = 2.0 / (points - 1);
  auto rfun = [n](const Vectord& x) { return x.squaredNorm() / (2 * n); };
  double worst = 0;
  // sweep interior points of the n-cube grid
  const long total = long(std::pow(double(points - 2), n));
  for (long flat = 0; flat < total; ++flat) {
    long rem = flat;
    Vectord x(n);
    for (int d = 0; d < n; ++d) {
      const int i = 1 + int(rem % (points - 2));
      rem /= (points - 2);
      x[d] = -1 + i * h;
    }
    double hess2 = 0, lap = 0;
    for (int d = 0; d < n; ++d) {
      Vectord xp = x, xm = x;
      xp[d] += h;
      xm[d] -= h;
      const double udd = (rfun(xp) - 2 * rfun(x) + rfun(xm)) / (h * h);
      hess2 += udd * udd;
      lap += udd;
      for (int e = d + 1; e < n; ++e) {
        Vectord a = x, b = x, c = x, dpt = x;
        a[d] += h; a[e] += h;
        b[d] += h; b[e] -= h;
        c[d] -= h; c[e] += h;
        dpt[d] -= h; dpt[e] -= h;
        const double ude = (rfun(a) - rfun(b) - rfun(c) + rfun(dpt)) / (4 * h * h);
        hess2 += 2 * ude * ude;
      }
    }
    // u - r vanishes identically here, so its Hessian term is zero
    const double residual = hess2 - (0.0 + 2.0 / n * lap - 1.0 / n);
    worst = std::max(worst, std::abs(residual));
  }
  return worst;
}

inline CheckReport kl_condition_check(const RadialWeightd& w, const SymmetricBodyd& K,
                                      int points = 201, double tol = 1e-3) {
  if (K.dim() != 2) throw InvalidInput("kl_condition_check: n = 2 only");
  if (points < 11) throw InvalidInput("kl_condition_check: grid too coarse");
  detail::KLSolution sol;
  double oracle = std::numeric_limits<double>::quiet_NaN();
  std::string shape;
  if (K.kind() == SymmetricBodyd::Kind::ellipsoid) {
    // require a disk: support must be direction-independent
    Vectord e1 = Vectord::Unit(2, 0), d(2);
    d << std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2;
    const double R = K.support(e1);
    if (std::abs(K.support(d) - R) > 1e-12 * R)
      throw InvalidInput("kl_condition_check: ellipsoid must be a disk");
    sol = detail::kl_solve_disk(w, R, points);
    oracle = kl_disk_oracle(w, R);
    shape = "disk";
  } else {
    const auto verts = K.polygon_vertices();
    if (verts.size() != 4) throw InvalidInput("kl_condition_check: polygon must be a square");
    const double half = std::abs(verts[0].x());
    for (const auto& vtx : verts)
      if (std::abs(std::abs(vtx.x()) - half) > 1e-12 || std::abs(std::abs(vtx.y()) - half) > 1e-12)
        throw InvalidInput("kl_condition_check: polygon must be an axis-aligned square");
    sol = detail::kl_solve_square(w, half, points);
    shape = "square";
  }
  CheckReport rep;
  rep.name = "kl_condition_check";
  rep.params = {{"weight", w.label}, {"shape", shape}, {"points", points},
                {"boundary_closure", "constant-flux"}};
  rep.gaps = {sol.E - 0.5};
  rep.tolerance = tol;
  rep.extra = {{"E", sol.E}, {"lower_bound", 0.5}, {"mass", sol.mass},
               {"residual_linf", sol.residual_linf},
               {"r_decompose_residual", r_decompose_residual(2)}};
  if (!std::isnan(oracle)) {
    rep.extra["oracle_E"] = oracle;
    rep.extra["oracle_gap"] = sol.E - oracle;
  }
  rep.finalize();
  return rep;
}

}  // namespace rotlab

#pragma once

// Origin-symmetric convex bodies exposed through gauge, support and radial
// functions, with linear images e^{tA}K and Minkowski combinations
// (1-l)K + lL.
//
// Radial functions of 2-D bodies are piecewise smooth; each body reports the
// angular breakpoints where smoothness degrades (polygon vertices, lq-ball
// axes, edge/arc transitions of polygon+smooth combinations) so that polar
// quadrature can align integration panels with them.

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rotlab/common.hpp"

namespace rotlab {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

namespace detail {

template <typename Scalar>
Scalar wrap_angle(Scalar a) {
  const Scalar tau = Scalar(2) * std::numbers::pi_v<Scalar>;
  a = std::fmod(a, tau);
  if (a < 0) a += tau;
  return a;
}

}  // namespace detail

template <typename Scalar = double>
class SymmetricBody {
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit SymmetricBody(std::shared_ptr<const Impl> p) : impl_(std::move(p)) {}

 public:
  enum class Kind { ellipsoid, lq_ball, polygon_2d, linear_image, minkowski_comb };

  // -- factories ------------------------------------------------------------

  /// K = { x : x^T C x <= 1 }, C symmetric positive definite.
  static SymmetricBody ellipsoid(const Matrix<Scalar>& C);

  /// Euclidean ball of the given radius.
  static SymmetricBody ball(int dim, Scalar radius = Scalar(1));

  /// K = { x : ||x||_q <= scale }.  q >= 1; q = inf gives the cube.
  static SymmetricBody lq_ball(int dim, Scalar q, Scalar scale = Scalar(1));

  /// 2-D polygon from its upper-half vertex list (angles in [0, pi)),
  /// counterclockwise; the lower half is the reflection through the origin.
  static SymmetricBody polygon(std::vector<Vec2<Scalar>> upper_half);

  /// T K0 for an invertible matrix T.
  static SymmetricBody linear_image(const Matrix<Scalar>& T, SymmetricBody inner);

  /// (1-lambda) left + lambda right, lambda in [0,1].
  static SymmetricBody minkowski_comb(Scalar lambda, SymmetricBody left, SymmetricBody right);

  // -- evaluation -----------------------------------------------------------

  int dim() const;
  Kind kind() const;

  /// Minkowski functional ||x||_K; x in K iff gauge <= 1.
  Scalar gauge(const Vector<Scalar>& x) const;

  /// h_K(u) = sup { <x,u> : x in K }.
  Scalar support(const Vector<Scalar>& u) const;

  /// rho_K(theta) = max { t : t theta in K } for a unit vector theta.
  /// For Minkowski combinations the value is recovered from the support
  /// function by directional minimization, accurate to tol.
  Scalar radial(const Vector<Scalar>& theta, Scalar tol = Scalar(1e-10)) const;

  /// Support point argmax_{x in K} <x,u> when available in closed form
  /// (ellipsoids, polygons, their linear images).
  std::optional<Vector<Scalar>> support_point(const Vector<Scalar>& u) const;

  /// Sorted angles in [0, 2pi) where the 2-D radial function loses
  /// smoothness.  Empty for smooth bodies or when dim != 2.
  std::vector<Scalar> angular_breakpoints() const;

  /// Full counterclockwise vertex list when this body is (a linear image
  /// of) a polygon; empty otherwise.
  std::vector<Vec2<Scalar>> polygon_vertices() const;

  bool is_polygon() const { return !polygon_vertices().empty(); }

 private:
  struct Ellipsoid {
    Matrix<Scalar> C, Cinv;
  };
  struct Lq {
    Scalar q, scale;  // q = inf allowed
  };
  struct Polygon {
    std::vector<Vec2<Scalar>> upper;              // stored half
    std::vector<Vec2<Scalar>> full;               // derived, CCW
    std::vector<std::pair<Vec2<Scalar>, Scalar>>  // outward unit normal, offset
        halfspaces;
  };
  struct Image {
    Matrix<Scalar> T, Tinv;
    SymmetricBody inner;
  };
  struct Comb {
    Scalar lambda;
    SymmetricBody left, right;
  };

  struct Impl {
    Kind kind;
    int dim;
    std::optional<Ellipsoid> ell;
    std::optional<Lq> lq;
    std::optional<Polygon> poly;
    std::optional<Image> image;
    std::optional<Comb> comb;
  };

  const Impl& self() const { return *impl_; }
};

using SymmetricBodyd = SymmetricBody<double>;

// ---------------------------------------------------------------------------
// implementation

template <typename Scalar>
SymmetricBody<Scalar> SymmetricBody<Scalar>::ellipsoid(const Matrix<Scalar>& C) {
  if (C.rows() != C.cols() || C.rows() < 2) throw InvalidInput("ellipsoid: C must be square, n >= 2");
  if ((C - C.transpose()).template lpNorm<Eigen::Infinity>() > Scalar(1e-12))
    throw InvalidInput("ellipsoid: C must be symmetric");
  Eigen::LLT<Matrix<Scalar>> llt(C);
  if (llt.info() != Eigen::Success) throw InvalidInput("ellipsoid: C must be positive definite");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::ellipsoid;
  impl->dim = int(C.rows());
  impl->ell = Ellipsoid{C, C.inverse()};
  return SymmetricBody(std::move(impl));
}

template <typename Scalar>
SymmetricBody<Scalar> SymmetricBody<Scalar>::ball(int dim, Scalar radius) {
  if (!(radius > 0)) throw InvalidInput("ball: radius > 0 required");
  Matrix<Scalar> C = Matrix<Scalar>::Identity(dim, dim) / (radius * radius);
  return ellipsoid(C);
}

template <typename Scalar>
SymmetricBody<Scalar> SymmetricBody<Scalar>::lq_ball(int dim, Scalar q, Scalar scale) {
  if (!(q >= 1)) throw InvalidInput("lq_ball: q >= 1 required");
  if (!(scale > 0)) throw InvalidInput("lq_ball: scale > 0 required");
  if (dim < 2) throw InvalidInput("lq_ball: dim >= 2 required");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::lq_ball;
  impl->dim = dim;
  impl->lq = Lq{q, scale};
  return SymmetricBody(std::move(impl));
}

template <typename Scalar>
SymmetricBody<Scalar> SymmetricBody<Scalar>::polygon(std::vector<Vec2<Scalar>> upper_half) {
  if (upper_half.size() < 1) throw InvalidInput("polygon: need at least one upper-half vertex");
  Polygon P;
  P.upper = upper_half;
  P.full = upper_half;
  for (const auto& v : upper_half) P.full.push_back(-v);
  // validate CCW convexity and build halfspaces
  const size_t m = P.full.size();
  if (m < 4) throw InvalidInput("polygon: symmetric polygon needs at least 4 vertices");
  for (size_t i = 0; i < m; ++i) {
    const Vec2<Scalar>& a = P.full[i];
    const Vec2<Scalar>& b = P.full[(i + 1) % m];
    const Vec2<Scalar>& c = P.full[(i + 2) % m];
    const Scalar cross = (b.x() - a.x()) * (c.y() - b.y()) - (b.y() - a.y()) * (c.x() - b.x());
    if (cross < Scalar(-1e-12)) throw InvalidInput("polygon: vertices must be convex in CCW order");
  }
  for (size_t i = 0; i < m; ++i) {
    const Vec2<Scalar>& a = P.full[i];
    const Vec2<Scalar>& b = P.full[(i + 1) % m];
    Vec2<Scalar> e = b - a;
    const Scalar len = e.norm();
    if (len < Scalar(1e-14)) continue;  // repeated vertex
    Vec2<Scalar> n(e.y() / len, -e.x() / len);  // outward for CCW
    const Scalar off = n.dot(a);
    if (!(off > 0)) throw InvalidInput("polygon: origin must be interior");
    P.halfspaces.emplace_back(n, off);
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::polygon_2d;
  impl->dim = 2;
  impl->poly = std::move(P);
  return SymmetricBody(std::move(impl));
}

template <typename Scalar>
SymmetricBody<Scalar> SymmetricBody<Scalar>::linear_image(const Matrix<Scalar>& T,
                                                          SymmetricBody inner) {
  if (T.rows() != T.cols() || int(T.rows()) != inner.dim())
    throw InvalidInput("linear_image: T must be n x n matching the body dimension");
  Eigen::FullPivLU<Matrix<Scalar>> lu(T);
  if (!lu.isInvertible()) throw InvalidInput("linear_image: T must be invertible");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::linear_image;
  impl->dim = inner.dim();
  impl->image = Image{T, lu.inverse(), std::move(inner)};
  return SymmetricBody(std::move(impl));
}

template <typename Scalar>
SymmetricBody<Scalar> SymmetricBody<Scalar>::minkowski_comb(Scalar lambda, SymmetricBody left,
                                                            SymmetricBody right) {
  if (!(lambda >= 0 && lambda <= 1)) throw InvalidInput("minkowski_comb: lambda in [0,1]");
  if (left.dim() != right.dim()) throw InvalidInput("minkowski_comb: dimension mismatch");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::minkowski_comb;
  impl->dim = left.dim();
  impl->comb = Comb{lambda, std::move(left), std::move(right)};
  return SymmetricBody(std::move(impl));
}

template <typename Scalar>
int SymmetricBody<Scalar>::dim() const {
  return self().dim;
}

template <typename Scalar>
typename SymmetricBody<Scalar>::Kind SymmetricBody<Scalar>::kind() const {
  return self().kind;
}

template <typename Scalar>
Scalar SymmetricBody<Scalar>::gauge(const Vector<Scalar>& x) const {
  const Impl& s = self();
  switch (s.kind) {
    case Kind::ellipsoid:
      return std::sqrt(std::max(Scalar(0), Scalar(x.dot(s.ell->C * x))));
    case Kind::lq_ball: {
      const Scalar q = s.lq->q;
      Scalar nrm;
      if (std::isinf(q)) {
        nrm = x.template lpNorm<Eigen::Infinity>();
      } else if (q == Scalar(1)) {
        nrm = x.template lpNorm<1>();
      } else if (q == Scalar(2)) {
        nrm = x.norm();
      } else {
        Scalar acc = 0;
        for (int i = 0; i < x.size(); ++i) acc += std::pow(std::abs(x[i]), q);
        nrm = std::pow(acc, Scalar(1) / q);
      }
      return nrm / s.lq->scale;
    }
    case Kind::polygon_2d: {
      Scalar g = 0;
      for (const auto& [n, off] : s.poly->halfspaces) {
        const Scalar v = (n.x() * x[0] + n.y() * x[1]) / off;
        g = std::max(g, v);
      }
      return g;
    }
    case Kind::linear_image:
      return s.image->inner.gauge(s.image->Tinv * x);
    case Kind::minkowski_comb: {
      const Scalar r = x.norm();
      if (r == 0) return 0;
      return r / radial(Vector<Scalar>(x / r));
    }
  }
  throw InvalidInput("gauge: unknown body kind");
}

template <typename Scalar>
Scalar SymmetricBody<Scalar>::support(const Vector<Scalar>& u) const {
  const Impl& s = self();
  switch (s.kind) {
    case Kind::ellipsoid:
      return std::sqrt(std::max(Scalar(0), Scalar(u.dot(s.ell->Cinv * u))));
    case Kind::lq_ball: {
      // dual exponent
      const Scalar q = s.lq->q;
      Scalar nrm;
      if (std::isinf(q)) {
        nrm = u.template lpNorm<1>();
      } else if (q == Scalar(1)) {
        nrm = u.template lpNorm<Eigen::Infinity>();
      } else if (q == Scalar(2)) {
        nrm = u.norm();
      } else {
        const Scalar qs = q / (q - 1);
        Scalar acc = 0;
        for (int i = 0; i < u.size(); ++i) acc += std::pow(std::abs(u[i]), qs);
        nrm = std::pow(acc, Scalar(1) / qs);
      }
      return s.lq->scale * nrm;
    }
    case Kind::polygon_2d: {
      Scalar h = 0;
      for (const auto& v : s.poly->upper) h = std::max(h, std::abs(v.x() * u[0] + v.y() * u[1]));
      return h;
    }
    case Kind::linear_image:
      return s.image->inner.support(s.image->T.transpose() * u);
    case Kind::minkowski_comb:
      return (1 - s.comb->lambda) * s.comb->left.support(u) + s.comb->lambda * s.comb->right.support(u);
  }
  throw InvalidInput("support: unknown body kind");
}

template <typename Scalar>
std::optional<Vector<Scalar>> SymmetricBody<Scalar>::support_point(const Vector<Scalar>& u) const {
  const Impl& s = self();
  switch (s.kind) {
    case Kind::ellipsoid: {
      const Vector<Scalar> y = s.ell->Cinv * u;
      const Scalar h = std::sqrt(std::max(Scalar(1e-300), Scalar(u.dot(y))));
      return Vector<Scalar>(y / h);
    }
    case Kind::polygon_2d: {
      Scalar best = -std::numeric_limits<Scalar>::infinity();
      Vec2<Scalar> arg = s.poly->full.front();
      for (const auto& v : s.poly->full) {
        const Scalar val = v.x() * u[0] + v.y() * u[1];
        if (val > best) {
          best = val;
          arg = v;
        }
      }
      Vector<Scalar> out(2);
      out << arg.x(), arg.y();
      return out;
    }
    case Kind::linear_image: {
      auto p = s.image->inner.support_point(s.image->T.transpose() * u);
      if (!p) return std::nullopt;
      return Vector<Scalar>(s.image->T * (*p));
    }
    case Kind::minkowski_comb: {
      auto a = s.comb->left.support_point(u);
      auto b = s.comb->right.support_point(u);
      if (!a || !b) return std::nullopt;
      return Vector<Scalar>((1 - s.comb->lambda) * (*a) + s.comb->lambda * (*b));
    }
    default:
      return std::nullopt;
  }
}

template <typename Scalar>
Scalar SymmetricBody<Scalar>::radial(const Vector<Scalar>& theta, Scalar tol) const {
  if (!(tol > 0)) throw InvalidInput("radial: tol > 0 required");
  const Impl& s = self();
  if (s.kind != Kind::minkowski_comb) {
    const Scalar g = gauge(theta);
    if (!(g > 0)) throw InvalidInput("radial: unbounded direction");
    return Scalar(1) / g;
  }
  // Minkowski combination: rho(theta) = inf_{<theta,u> > 0} h(u) / <theta,u>.
  if (s.dim == 2) {
    const Scalar beta = std::atan2(theta[1], theta[0]);
    auto g = [&](Scalar alpha) {
      Vector<Scalar> u(2);
      u << std::cos(alpha), std::sin(alpha);
      const Scalar c = std::cos(alpha - beta);
      return support(u) / c;
    };
    // coarse scan over the open half-window, then golden-section refinement
    const int m = 720;
    const Scalar half = std::numbers::pi_v<Scalar> / 2 - Scalar(1e-3);
    Scalar best_a = beta, best_v = g(beta);
    for (int i = 0; i < m; ++i) {
      const Scalar a = beta - half + 2 * half * (Scalar(i) + Scalar(0.5)) / Scalar(m);
      const Scalar v = g(a);
      if (v < best_v) {
        best_v = v;
        best_a = a;
      }
    }
    Scalar lo = best_a - 2 * half / m, hi = best_a + 2 * half / m;
    const Scalar gr = (std::sqrt(Scalar(5)) - 1) / 2;
    Scalar c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    Scalar fc = g(c), fd = g(d);
    while (hi - lo > tol) {
      if (fc < fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - gr * (hi - lo);
        fc = g(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + gr * (hi - lo);
        fd = g(d);
      }
    }
    return std::min(std::min(fc, fd), best_v);
  }
  // n >= 3: minimize over a direction grid with local pattern refinement.
  const int N = 2562;
  Scalar best = std::numeric_limits<Scalar>::infinity();
  Vector<Scalar> best_u = theta;
  const Scalar golden = std::numbers::pi_v<Scalar> * (3 - std::sqrt(Scalar(5)));
  for (int i = 0; i < N; ++i) {
    // spherical Fibonacci points (3-D only)
    const Scalar z = 1 - 2 * (Scalar(i) + Scalar(0.5)) / N;
    const Scalar rr = std::sqrt(std::max(Scalar(0), 1 - z * z));
    const Scalar ph = golden * i;
    Vector<Scalar> u(3);
    u << rr * std::cos(ph), rr * std::sin(ph), z;
    const Scalar c = theta.dot(u);
    if (c <= Scalar(1e-6)) continue;
    const Scalar v = support(u) / c;
    if (v < best) {
      best = v;
      best_u = u;
    }
  }
  // local refinement by shrinking pattern search around best_u
  Scalar step = Scalar(0.05);
  while (step > tol) {
    bool improved = false;
    for (int axis = 0; axis < 3; ++axis) {
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        Vector<Scalar> u = best_u;
        u[axis] += sgn * step;
        u.normalize();
        const Scalar c = theta.dot(u);
        if (c <= Scalar(1e-6)) continue;
        const Scalar v = support(u) / c;
        if (v < best) {
          best = v;
          best_u = u;
          improved = true;
        }
      }
    }
    if (!improved) step /= 2;
  }
  return best;
}

template <typename Scalar>
std::vector<Vec2<Scalar>> SymmetricBody<Scalar>::polygon_vertices() const {
  const Impl& s = self();
  if (s.kind == Kind::polygon_2d) return s.poly->full;
  if (s.kind == Kind::linear_image && s.dim == 2) {
    auto inner = s.image->inner.polygon_vertices();
    for (auto& v : inner) v = (s.image->T * v.matrix()).eval();
    return inner;
  }
  return {};
}

template <typename Scalar>
std::vector<Scalar> SymmetricBody<Scalar>::angular_breakpoints() const {
  const Impl& s = self();
  if (s.dim != 2) return {};
  std::vector<Scalar> bps;
  switch (s.kind) {
    case Kind::ellipsoid:
      break;
    case Kind::lq_ball:
      if (s.lq->q != Scalar(2)) {
        const Scalar pi = std::numbers::pi_v<Scalar>;
        bps = {0, pi / 2, pi, 3 * pi / 2};
      }
      break;
    case Kind::polygon_2d:
      for (const auto& v : s.poly->full) bps.push_back(detail::wrap_angle(std::atan2(v.y(), v.x())));
      break;
    case Kind::linear_image: {
      // kink directions transform with the body
      const auto inner = s.image->inner.angular_breakpoints();
      for (Scalar a : inner) {
        Vector<Scalar> x(2);
        x << std::cos(a), std::sin(a);
        const Vector<Scalar> y = s.image->T * x;
        bps.push_back(detail::wrap_angle(std::atan2(y[1], y[0])));
      }
      break;
    }
    case Kind::minkowski_comb: {
      const Scalar lam = s.comb->lambda;
      auto edge_arc_transitions = [&](const SymmetricBody& polyside, Scalar sp,
                                      const SymmetricBody& smooth, Scalar ss) -> bool {
        const auto verts = polyside.polygon_vertices();
        if (verts.empty()) return false;
        const size_t m = verts.size();
        for (size_t i = 0; i < m; ++i) {
          const Vec2<Scalar>& a = verts[i];
          const Vec2<Scalar>& b = verts[(i + 1) % m];
          Vec2<Scalar> e = b - a;
          Vector<Scalar> n(2);
          n << e.y(), -e.x();
          n.normalize();
          auto p = smooth.support_point(n);
          if (!p) return false;
          for (const Vec2<Scalar>* v : {&a, &b}) {
            const Scalar px = sp * v->x() + ss * (*p)[0];
            const Scalar py = sp * v->y() + ss * (*p)[1];
            bps.push_back(detail::wrap_angle(std::atan2(py, px)));
          }
        }
        return true;
      };
      bool done = false;
      if (s.comb->left.is_polygon() && !s.comb->right.is_polygon())
        done = edge_arc_transitions(s.comb->left, 1 - lam, s.comb->right, lam);
      else if (s.comb->right.is_polygon() && !s.comb->left.is_polygon())
        done = edge_arc_transitions(s.comb->right, lam, s.comb->left, 1 - lam);
      if (!done) {
        for (Scalar a : s.comb->left.angular_breakpoints()) bps.push_back(a);
        for (Scalar a : s.comb->right.angular_breakpoints()) bps.push_back(a);
      }
      break;
    }
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end(),
                        [](Scalar a, Scalar b) { return std::abs(a - b) < Scalar(1e-12); }),
            bps.end());
  return bps;
}

// ---------------------------------------------------------------------------
// Exact 2-D Minkowski sum (1-lambda) P + lambda Q by merged edge sweep

template <typename Scalar = double>
SymmetricBody<Scalar> polygon_minkowski_sum(const SymmetricBody<Scalar>& P,
                                            const SymmetricBody<Scalar>& Q, Scalar lambda) {
  if (!(lambda >= 0 && lambda <= 1)) throw InvalidInput("polygon_minkowski_sum: lambda in [0,1]");
  auto vp = P.polygon_vertices();
  auto vq = Q.polygon_vertices();
  if (vp.empty() || vq.empty())
    throw InvalidInput("polygon_minkowski_sum: both bodies must be polygons");
  if (lambda == Scalar(0)) return P;
  if (lambda == Scalar(1)) return Q;
  for (auto& v : vp) v *= (1 - lambda);
  for (auto& v : vq) v *= lambda;

  auto rotate_to_bottom = [](std::vector<Vec2<Scalar>>& v) {
    size_t k = 0;
    for (size_t i = 1; i < v.size(); ++i)
      if (v[i].y() < v[k].y() - Scalar(1e-14) ||
          (std::abs(v[i].y() - v[k].y()) <= Scalar(1e-14) && v[i].x() < v[k].x()))
        k = i;
    std::rotate(v.begin(), v.begin() + long(k), v.end());
  };
  rotate_to_bottom(vp);
  rotate_to_bottom(vq);

  auto edge = [](const std::vector<Vec2<Scalar>>& v, size_t i) -> Vec2<Scalar> {
    return v[(i + 1) % v.size()] - v[i];
  };
  auto angle = [](const Vec2<Scalar>& e) {
    // starting from the bottom-most vertex, CCW edge angles increase in [0, 2pi)
    Scalar a = std::atan2(e.y(), e.x());
    if (a < -Scalar(1e-12)) a += 2 * std::numbers::pi_v<Scalar>;
    return a;
  };

  std::vector<Vec2<Scalar>> out;
  Vec2<Scalar> cur = vp[0] + vq[0];
  size_t i = 0, j = 0;
  const size_t np = vp.size(), nq = vq.size();
  while (i < np || j < nq) {
    out.push_back(cur);
    Vec2<Scalar> step;
    if (i < np && j < nq) {
      const Scalar ai = angle(edge(vp, i)), aj = angle(edge(vq, j));
      if (std::abs(ai - aj) < Scalar(1e-12)) {
        step = edge(vp, i) + edge(vq, j);
        ++i;
        ++j;
      } else if (ai < aj) {
        step = edge(vp, i);
        ++i;
      } else {
        step = edge(vq, j);
        ++j;
      }
    } else if (i < np) {
      step = edge(vp, i);
      ++i;
    } else {
      step = edge(vq, j);
      ++j;
    }
    cur += step;
  }
  // keep the upper half (angle in [0, pi)) for reconstruction
  std::vector<Vec2<Scalar>> upper;
  for (const auto& v : out) {
    const Scalar a = std::atan2(v.y(), v.x());
    if (a >= -Scalar(1e-12) && a < std::numbers::pi_v<Scalar> - Scalar(1e-12)) upper.push_back(v);
  }
  // re-sort by angle so the stored half is CCW
  std::sort(upper.begin(), upper.end(), [](const Vec2<Scalar>& a, const Vec2<Scalar>& b) {
    return std::atan2(a.y(), a.x()) < std::atan2(b.y(), b.x());
  });
  return SymmetricBody<Scalar>::polygon(std::move(upper));
}

// ---------------------------------------------------------------------------
// Matrix exponential of a symmetric matrix via spectral decomposition

template <typename Scalar = double>
Matrix<Scalar> matrix_exponential(const Matrix<Scalar>& A, Scalar t) {
  if (A.rows() != A.cols()) throw InvalidInput("matrix_exponential: A must be square");
  if ((A - A.transpose()).template lpNorm<Eigen::Infinity>() > Scalar(1e-12))
    throw InvalidInput("matrix_exponential: A must be symmetric");
  if (t == Scalar(0)) return Matrix<Scalar>::Identity(A.rows(), A.cols());
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(A);
  Vector<Scalar> lam = es.eigenvalues();
  for (int i = 0; i < lam.size(); ++i) lam[i] = std::exp(t * lam[i]);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

// ---------------------------------------------------------------------------
// Stock 2-D bodies

template <typename Scalar = double>
SymmetricBody<Scalar> square_body(Scalar half_side = Scalar(1)) {
  std::vector<Vec2<Scalar>> up = {{half_side, half_side}, {-half_side, half_side}};
  return SymmetricBody<Scalar>::polygon(std::move(up));
}

template <typename Scalar = double>
SymmetricBody<Scalar> diamond_body(Scalar scale = Scalar(1)) {
  std::vector<Vec2<Scalar>> up = {{scale, 0}, {0, scale}};
  return SymmetricBody<Scalar>::polygon(std::move(up));
}

template <typename Scalar = double>
SymmetricBody<Scalar> hexagon_body(Scalar circumradius = Scalar(1)) {
  const Scalar s = circumradius;
  const Scalar h = s * std::sqrt(Scalar(3)) / 2;
  std::vector<Vec2<Scalar>> up = {{s, 0}, {s / 2, h}, {-s / 2, h}};
  return SymmetricBody<Scalar>::polygon(std::move(up));
}

/// Axis-aligned ellipse with the given semi-axes.
template <typename Scalar = double>
SymmetricBody<Scalar> ellipse_body(Scalar a, Scalar b) {
  Matrix<Scalar> C(2, 2);
  C << 1 / (a * a), 0, 0, 1 / (b * b);
  return SymmetricBody<Scalar>::ellipsoid(C);
}

}  // namespace rotlab

#pragma once

// Radial weight profiles w and the curvature operators they induce.
//
// A rotationally invariant measure dmu = e^{-w(|x|)} dx is admissible when
// w is increasing and s -> w(e^s) is convex, i.e. w' >= 0 and
// t w''(t) + w'(t) >= 0.  The shifted operator
//     A(x) = Hess W(x) + (w'(|x|)/|x|) Id,   W(x) = w(|x|),
// is a rank-one perturbation of a scalar matrix: its eigenvalue on the
// radial direction x/|x| is w'' + w'/|x| and on the tangent space
// 2 w'/|x|, so its inverse and polar form are available in closed form.

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <utility>

#include "rotlab/common.hpp"

namespace rotlab {

enum class OriginBehavior { finite_at_zero, integrable_singularity };

template <typename Scalar = double>
struct RadialWeight {
  std::function<Scalar(Scalar)> eval;    // w(t), t > 0
  std::function<Scalar(Scalar)> deriv;   // w'(t)
  std::function<Scalar(Scalar)> deriv2;  // w''(t)
  std::string label;
  OriginBehavior origin_behavior = OriginBehavior::finite_at_zero;

  Scalar operator()(Scalar t) const { return eval(t); }
};

using RadialWeightd = RadialWeight<double>;

// ---------------------------------------------------------------------------
// Built-in families

/// w(t) = t^p / p, p > 0.  p = 2 is the Gaussian weight.
template <typename Scalar = double>
RadialWeight<Scalar> power_weight(Scalar p) {
  if (!(p > 0)) throw InvalidInput("power_weight: p > 0 required");
  RadialWeight<Scalar> w;
  w.eval = [p](Scalar t) { return std::pow(t, p) / p; };
  w.deriv = [p](Scalar t) { return std::pow(t, p - 1); };
  w.deriv2 = [p](Scalar t) { return (p - 1) * std::pow(t, p - 2); };
  w.label = "power:p=" + std::to_string(p);
  // w'(t) = t^{p-1} blows up at the origin for p < 1 (still integrable)
  w.origin_behavior = p < 1 ? OriginBehavior::integrable_singularity : OriginBehavior::finite_at_zero;
  return w;
}

template <typename Scalar = double>
RadialWeight<Scalar> gaussian_weight() {
  return power_weight<Scalar>(Scalar(2));
}

/// w(t) = a log(1 + t^b), a > 0, b >= 0.  Density (1+|x|^b)^{-a}.
template <typename Scalar = double>
RadialWeight<Scalar> cauchy_weight(Scalar a, Scalar b) {
  if (!(a > 0) || !(b >= 0)) throw InvalidInput("cauchy_weight: a > 0, b >= 0 required");
  RadialWeight<Scalar> w;
  w.eval = [a, b](Scalar t) { return a * std::log1p(std::pow(t, b)); };
  w.deriv = [a, b](Scalar t) {
    const Scalar tb = std::pow(t, b);
    return a * b * std::pow(t, b - 1) / (1 + tb);
  };
  w.deriv2 = [a, b](Scalar t) {
    const Scalar tb = std::pow(t, b);
    const Scalar d = 1 + tb;
    return a * b * std::pow(t, b - 2) * ((b - 1) - tb) / (d * d);
  };
  w.label = "cauchy:a=" + std::to_string(a) + ",b=" + std::to_string(b);
  w.origin_behavior = OriginBehavior::finite_at_zero;
  return w;
}

/// w(t) = alpha log t + base(t), 0 <= alpha (density |x|^{-alpha} e^{-base}).
/// Local integrability around zero requires alpha < n.
template <typename Scalar = double>
RadialWeight<Scalar> log_perturbed_weight(Scalar alpha, RadialWeight<Scalar> base) {
  if (!(alpha >= 0)) throw InvalidInput("log_perturbed_weight: alpha >= 0 required");
  RadialWeight<Scalar> w;
  w.eval = [alpha, b = base.eval](Scalar t) { return alpha * std::log(t) + b(t); };
  w.deriv = [alpha, b = base.deriv](Scalar t) { return alpha / t + b(t); };
  w.deriv2 = [alpha, b = base.deriv2](Scalar t) { return -alpha / (t * t) + b(t); };
  w.label = "logpert:alpha=" + std::to_string(alpha) + ",base=" + base.label;
  w.origin_behavior = alpha > 0 ? OriginBehavior::integrable_singularity : base.origin_behavior;
  return w;
}

/// Pointwise sum w1 + w2 (product of the two densities).
template <typename Scalar = double>
RadialWeight<Scalar> sum_weight(RadialWeight<Scalar> w1, RadialWeight<Scalar> w2) {
  RadialWeight<Scalar> w;
  w.eval = [a = w1.eval, b = w2.eval](Scalar t) { return a(t) + b(t); };
  w.deriv = [a = w1.deriv, b = w2.deriv](Scalar t) { return a(t) + b(t); };
  w.deriv2 = [a = w1.deriv2, b = w2.deriv2](Scalar t) { return a(t) + b(t); };
  w.label = "sum:(" + w1.label + ")+(" + w2.label + ")";
  w.origin_behavior = (w1.origin_behavior == OriginBehavior::integrable_singularity ||
                       w2.origin_behavior == OriginBehavior::integrable_singularity)
                          ? OriginBehavior::integrable_singularity
                          : OriginBehavior::finite_at_zero;
  return w;
}

/// User-supplied profile with central finite-difference derivatives.
/// Accuracy contract: deriv/deriv2 are O(step^2)-accurate, roughly 1e-5
/// relative for smooth profiles at the default step.
template <typename Scalar = double>
RadialWeight<Scalar> custom_weight(std::function<Scalar(Scalar)> eval, std::string label,
                                   Scalar step = Scalar(1e-4)) {
  RadialWeight<Scalar> w;
  w.eval = eval;
  w.deriv = [eval, step](Scalar t) {
    const Scalar h = step * std::max(Scalar(1), std::abs(t));
    return (eval(t + h) - eval(t - h)) / (2 * h);
  };
  w.deriv2 = [eval, step](Scalar t) {
    const Scalar h = step * std::max(Scalar(1), std::abs(t));
    return (eval(t + h) - 2 * eval(t) + eval(t - h)) / (h * h);
  };
  w.label = std::move(label);
  return w;
}

// ---------------------------------------------------------------------------
// Admissibility

template <typename Scalar = double>
struct AdmissibilityReport {
  bool pass = true;
  Scalar first_violation_t = std::numeric_limits<Scalar>::quiet_NaN();
  std::string reason;  // empty when pass
};

/// Samples w' >= 0 and t w'' + w' >= 0 on the grid (slack -1e-12).
template <typename Scalar = double>
AdmissibilityReport<Scalar> admissibility_check(const RadialWeight<Scalar>& w,
                                                const std::vector<Scalar>& grid) {
  if (grid.empty()) throw InvalidInput("admissibility_check: empty grid");
  const Scalar slack = Scalar(-1e-12);
  AdmissibilityReport<Scalar> rep;
  for (Scalar t : grid) {
    if (!(t > 0)) throw InvalidInput("admissibility_check: grid must lie in (0, inf)");
    const Scalar d1 = w.deriv(t);
    if (d1 < slack) {
      rep.pass = false;
      rep.first_violation_t = t;
      rep.reason = "w'(t) < 0";
      return rep;
    }
    const Scalar c = t * w.deriv2(t) + d1;
    if (c < slack) {
      rep.pass = false;
      rep.first_violation_t = t;
      rep.reason = "t w''(t) + w'(t) < 0";
      return rep;
    }
  }
  return rep;
}

/// Default sampling grid: 10^3 log-spaced points on [1e-3, 1e3].
template <typename Scalar = double>
std::vector<Scalar> default_admissibility_grid() {
  return log_spaced<Scalar>(Scalar(1e-3), Scalar(1e3), 1000);
}

// ---------------------------------------------------------------------------
// Composite evaluator W(x) = w(|x|) and its derivatives

template <typename Scalar = double>
Scalar weight_value(const RadialWeight<Scalar>& w, const Vector<Scalar>& x) {
  return w.eval(x.norm());
}

/// grad W(x) = w'(|x|) x / |x|, x != 0.
template <typename Scalar = double>
Vector<Scalar> grad_W(const RadialWeight<Scalar>& w, const Vector<Scalar>& x) {
  const Scalar r = x.norm();
  if (r == 0) {
    if (w.origin_behavior == OriginBehavior::integrable_singularity)
      throw DomainError("grad_W: weight singular at the origin");
    return Vector<Scalar>::Zero(x.size());
  }
  return (w.deriv(r) / r) * x;
}

// ---------------------------------------------------------------------------
// Shifted curvature operator A(x) = Hess W + (w'/|x|) Id

template <typename Scalar = double>
struct CurvatureOperator {
  Vector<Scalar> point;
  Vector<Scalar> direction;  // x / |x|
  Scalar radial_eig;         // w''(|x|) + w'(|x|)/|x|
  Scalar tangential_eig;     // 2 w'(|x|)/|x|

  Vector<Scalar> apply(const Vector<Scalar>& y) const {
    const Scalar c = direction.dot(y);
    return radial_eig * c * direction + tangential_eig * (y - c * direction);
  }

  /// Closed-form inverse via eigenvalue reciprocals; requires both
  /// eigenvalues > 0 (otherwise use polar_form).
  Vector<Scalar> apply_inverse(const Vector<Scalar>& y) const {
    if (!(radial_eig > 0) || !(tangential_eig > 0))
      throw DomainError("CurvatureOperator::apply_inverse: singular operator");
    const Scalar c = direction.dot(y);
    return (c / radial_eig) * direction + (y - c * direction) / tangential_eig;
  }

  Matrix<Scalar> assemble() const {
    const auto n = direction.size();
    const Matrix<Scalar> uu = direction * direction.transpose();
    return radial_eig * uu + tangential_eig * (Matrix<Scalar>::Identity(n, n) - uu);
  }
};

template <typename Scalar = double>
CurvatureOperator<Scalar> shifted_operator(const RadialWeight<Scalar>& w, const Vector<Scalar>& x) {
  const Scalar r = x.norm();
  if (r == 0) throw DomainError("shifted_operator: x != 0 required");
  CurvatureOperator<Scalar> op;
  op.point = x;
  op.direction = x / r;
  op.radial_eig = w.deriv2(r) + w.deriv(r) / r;
  op.tangential_eig = 2 * w.deriv(r) / r;
  return op;
}

/// Hess W(x) alone (radial eigenvalue w'', tangential w'/|x|).
template <typename Scalar = double>
Matrix<Scalar> hessian_W(const RadialWeight<Scalar>& w, const Vector<Scalar>& x) {
  const Scalar r = x.norm();
  if (r == 0) throw DomainError("hessian_W: x != 0 required");
  const Vector<Scalar> u = x / r;
  const Matrix<Scalar> uu = u * u.transpose();
  const auto n = x.size();
  return w.deriv2(r) * uu + (w.deriv(r) / r) * (Matrix<Scalar>::Identity(n, n) - uu);
}

/// Polar form Q_x^o(a) = sup { <a,b>^2 : <A(x) b, b> <= 1 } in [0, +inf].
/// Equals <A(x)^{-1} a, a> when A(x) is nonsingular; +inf when a has a
/// component along a null eigendirection.
template <typename Scalar = double>
Scalar polar_form(const RadialWeight<Scalar>& w, const Vector<Scalar>& x, const Vector<Scalar>& a) {
  const auto op = shifted_operator(w, x);
  const Scalar c = op.direction.dot(a);
  const Scalar rad2 = c * c;
  const Scalar tan2 = a.squaredNorm() - rad2;
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  Scalar q = 0;
  if (rad2 > 0) {
    if (op.radial_eig <= 0) return inf;
    q += rad2 / op.radial_eig;
  }
  if (tan2 > Scalar(1e-30)) {
    if (op.tangential_eig <= 0) return inf;
    q += tan2 / op.tangential_eig;
  }
  return q;
}

/// Bilinear extension <A(x)^{-1} a, b>; both eigenvalues must be > 0.
template <typename Scalar = double>
Scalar polar_form_bilinear(const RadialWeight<Scalar>& w, const Vector<Scalar>& x,
                           const Vector<Scalar>& a, const Vector<Scalar>& b) {
  const auto op = shifted_operator(w, x);
  return op.apply_inverse(a).dot(b);
}

}  // namespace rotlab

#pragma once

// Scalar fields with analytic gradients and declared parity.  The two
// distinguished builders produce the extremal functions of the variance
// inequalities: f0(x) = <grad W(x), Ax> with gradient A(x) Ax, where
// A(x) = hess W + (w'/|x|) Id, and its A = Id specialization w'(|x|)|x|.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "rotlab/bodies.hpp"
#include "rotlab/common.hpp"
#include "rotlab/weights.hpp"

namespace rotlab {

enum class Parity { even, odd, none };

template <typename Scalar = double>
struct TestFunction {
  std::function<Scalar(const Vector<Scalar>&)> value;
  std::function<Vector<Scalar>(const Vector<Scalar>&)> gradient;
  Parity parity = Parity::none;
  std::string label;
  /// 2-D angular kink directions of the field, if any; lets polar quadrature
  /// align panels with them.
  std::vector<Scalar> breakpoints;
};

using TestFunctiond = TestFunction<double>;

/// h(x) = <x, theta>.
template <typename Scalar = double>
TestFunction<Scalar> linear(const Vector<Scalar>& theta) {
  if (theta.norm() == 0) throw InvalidInput("linear: theta must be nonzero");
  TestFunction<Scalar> f;
  f.value = [theta](const Vector<Scalar>& x) { return Scalar(theta.dot(x)); };
  f.gradient = [theta](const Vector<Scalar>&) { return theta; };
  f.parity = Parity::odd;
  f.label = "linear";
  return f;
}

/// f0(x) = <grad W(x), Ax> = (w'(|x|)/|x|) <x, Ax>, with the closed-form
/// gradient (hess W + (w'/|x|) Id) Ax.
template <typename Scalar = double>
TestFunction<Scalar> bl_extremal(const RadialWeight<Scalar>& w, const Matrix<Scalar>& A) {
  if ((A - A.transpose()).template lpNorm<Eigen::Infinity>() > Scalar(1e-12))
    throw InvalidInput("bl_extremal: A must be symmetric");
  TestFunction<Scalar> f;
  f.value = [w, A](const Vector<Scalar>& x) {
    const Scalar r = x.norm();
    if (r == 0) return Scalar(0);
    return Scalar(w.deriv(r) / r * x.dot(A * x));
  };
  f.gradient = [w, A](const Vector<Scalar>& x) -> Vector<Scalar> {
    const Scalar r = x.norm();
    if (r == 0) return Vector<Scalar>::Zero(x.size());
    return shifted_operator(w, x).apply(Vector<Scalar>(A * x));
  };
  f.parity = Parity::even;
  f.label = "bl_extremal(" + w.label + ")";
  return f;
}

/// f(x) = w'(|x|) |x|; equals bl_extremal with A = Id.
template <typename Scalar = double>
TestFunction<Scalar> poincare_extremal(const RadialWeight<Scalar>& w) {
  TestFunction<Scalar> f;
  f.value = [w](const Vector<Scalar>& x) {
    const Scalar r = x.norm();
    if (r == 0) return Scalar(0);
    return Scalar(w.deriv(r) * r);
  };
  f.gradient = [w](const Vector<Scalar>& x) -> Vector<Scalar> {
    const Scalar r = x.norm();
    if (r == 0) return Vector<Scalar>::Zero(x.size());
    return Vector<Scalar>((w.deriv2(r) + w.deriv(r) / r) * x);
  };
  f.parity = Parity::even;
  f.label = "poincare_extremal(" + w.label + ")";
  return f;
}

namespace detail {

template <typename Scalar>
void enumerate_multi_indices(int n, int degree, std::vector<int>& cur,
                             std::vector<std::vector<int>>& out) {
  if (int(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int k = 0; k <= degree; ++k) {
    cur.push_back(k);
    enumerate_multi_indices<Scalar>(n, degree - k, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// Monomials x^alpha with |alpha| <= degree and |alpha| of the requested
/// parity; with envelope = true each is divided by (1 + |x|^2), which keeps
/// variance and Dirichlet integrals finite under heavy-tailed weights.
template <typename Scalar = double>
std::vector<TestFunction<Scalar>> basis(Parity parity, int degree, int n, bool envelope = false) {
  if (degree < 1) throw InvalidInput("basis: degree >= 1 required");
  if (parity == Parity::none) throw InvalidInput("basis: parity must be even or odd");
  std::vector<std::vector<int>> alphas;
  std::vector<int> cur;
  detail::enumerate_multi_indices<Scalar>(n, degree, cur, alphas);
  std::vector<TestFunction<Scalar>> fns;
  for (const auto& alpha : alphas) {
    int total = 0;
    for (int a : alpha) total += a;
    const bool is_even = total % 2 == 0;
    if ((parity == Parity::even) != is_even) continue;
    TestFunction<Scalar> f;
    f.parity = parity;
    std::string lbl = "x^(";
    for (size_t i = 0; i < alpha.size(); ++i) lbl += std::to_string(alpha[i]) + (i + 1 < alpha.size() ? "," : ")");
    f.label = (envelope ? "env*" : "") + lbl;
    auto mono = [alpha](const Vector<Scalar>& x) {
      Scalar v = 1;
      for (size_t i = 0; i < alpha.size(); ++i)
        for (int k = 0; k < alpha[i]; ++k) v *= x[long(i)];
      return v;
    };
    auto mono_grad = [alpha](const Vector<Scalar>& x) -> Vector<Scalar> {
      Vector<Scalar> g = Vector<Scalar>::Zero(x.size());
      for (size_t j = 0; j < alpha.size(); ++j) {
        if (alpha[j] == 0) continue;
        Scalar v = Scalar(alpha[j]);
        for (size_t i = 0; i < alpha.size(); ++i) {
          const int pow_i = int(i) == int(j) ? alpha[i] - 1 : alpha[i];
          for (int k = 0; k < pow_i; ++k) v *= x[long(i)];
        }
        g[long(j)] = v;
      }
      return g;
    };
    if (!envelope) {
      f.value = mono;
      f.gradient = mono_grad;
    } else {
      f.value = [mono](const Vector<Scalar>& x) { return mono(x) / (1 + x.squaredNorm()); };
      f.gradient = [mono, mono_grad](const Vector<Scalar>& x) -> Vector<Scalar> {
        const Scalar d = 1 + x.squaredNorm();
        return Vector<Scalar>(mono_grad(x) / d - mono(x) * 2 / (d * d) * x);
      };
    }
    fns.push_back(std::move(f));
  }
  return fns;
}

/// sum_i c_i f_i; parity is preserved when all terms share it.
template <typename Scalar = double>
TestFunction<Scalar> linear_combination(const std::vector<Scalar>& coeffs,
                                        const std::vector<TestFunction<Scalar>>& fns) {
  if (coeffs.size() != fns.size() || fns.empty())
    throw InvalidInput("linear_combination: coefficient/function count mismatch");
  Parity p = fns.front().parity;
  for (const auto& f : fns)
    if (f.parity != p) p = Parity::none;
  TestFunction<Scalar> out;
  out.parity = p;
  out.label = "combo";
  out.value = [coeffs, fns](const Vector<Scalar>& x) {
    Scalar v = 0;
    for (size_t i = 0; i < fns.size(); ++i) v += coeffs[i] * fns[i].value(x);
    return v;
  };
  out.gradient = [coeffs, fns](const Vector<Scalar>& x) -> Vector<Scalar> {
    Vector<Scalar> g = Vector<Scalar>::Zero(x.size());
    for (size_t i = 0; i < fns.size(); ++i) g += coeffs[i] * fns[i].gradient(x);
    return g;
  };
  return out;
}

/// v(x) = ||x||_K^2, convex and even; the gradient uses the active
/// halfspace/level direction and is defined almost everywhere.
template <typename Scalar = double>
TestFunction<Scalar> gauge_squared(const SymmetricBody<Scalar>& K) {
  TestFunction<Scalar> f;
  f.parity = Parity::even;
  f.label = "gauge^2";
  f.breakpoints = K.angular_breakpoints();
  f.value = [K](const Vector<Scalar>& x) {
    const Scalar g = K.gauge(x);
    return g * g;
  };
  f.gradient = [K](const Vector<Scalar>& x) -> Vector<Scalar> {
    // central differences; the gauge of a comb has no cheap closed-form gradient
    const Scalar h = Scalar(1e-6) * std::max(Scalar(1), x.norm());
    Vector<Scalar> g(x.size());
    for (int i = 0; i < x.size(); ++i) {
      Vector<Scalar> xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      const Scalar gp = K.gauge(xp), gm = K.gauge(xm);
      g[i] = (gp * gp - gm * gm) / (2 * h);
    }
    return g;
  };
  return f;
}

/// f(Mx) with gradient M^T grad f (Mx).
template <typename Scalar = double>
TestFunction<Scalar> compose_linear(const TestFunction<Scalar>& f, const Matrix<Scalar>& M) {
  TestFunction<Scalar> out;
  out.parity = f.parity;
  out.label = f.label + "@M";
  if (!f.breakpoints.empty() && M.rows() == 2) {
    // x -> f(Mx) kinks where Mx lies along a kink direction of f
    const Matrix<Scalar> Minv = M.inverse();
    for (Scalar a : f.breakpoints) {
      Vector<Scalar> d(2);
      d << std::cos(a), std::sin(a);
      const Vector<Scalar> y = Minv * d;
      out.breakpoints.push_back(std::atan2(y[1], y[0]));
    }
    for (auto& a : out.breakpoints)
      if (a < 0) a += 2 * std::numbers::pi_v<Scalar>;
    std::sort(out.breakpoints.begin(), out.breakpoints.end());
  }
  out.value = [f, M](const Vector<Scalar>& x) { return f.value(M * x); };
  out.gradient = [f, M](const Vector<Scalar>& x) -> Vector<Scalar> {
    return M.transpose() * f.gradient(M * x);
  };
  return out;
}

}  // namespace rotlab

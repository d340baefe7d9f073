#pragma once

// Adaptive composite Simpson quadrature with absolute + relative error control.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>

#include "eqaff/errors.hpp"

namespace eqaff {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_depth = 40;
};

namespace detail {

template <class F>
struct SimpsonState {
  F& f;
  int max_depth;
  long evaluations = 0;
  double error = 0.0;

  double eval(double x) {
    ++evaluations;
    return f(x);
  }

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = eval(lm), frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // Below the roundoff floor further splitting cannot help.
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (std::fabs(left) + std::fabs(right));
    if (std::fabs(delta) <= 15.0 * tol || std::fabs(delta) <= floor) {
      error += std::fabs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth >= max_depth) {
      throw QuadratureFailure("tolerance not met on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace detail

// Integral of f over [a, b]; b < a gives the negated integral.
template <class F>
QuadratureResult adaptive_simpson(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  if (a == b) return {};
  if (b < a) {
    auto r = adaptive_simpson(f, b, a, opt);
    r.value = -r.value;
    return r;
  }
  detail::SimpsonState<std::remove_reference_t<F>> st{f, opt.max_depth};
  const double fa = st.eval(a), fb = st.eval(b), fm = st.eval(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = std::max(opt.abs_tol, opt.rel_tol * std::fabs(whole));
  const double value = st.recurse(a, b, fa, fm, fb, whole, tol, 0);
  return {value, st.error, st.evaluations};
}

}  // namespace eqaff

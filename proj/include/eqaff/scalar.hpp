#pragma once

// Plain-real members of the scalar algebra family. Every algebra the
// expression evaluator runs on (double, Jet, SpatialBundle<S>) provides the
// same set of free functions in namespace eqaff, so generic code can call
// them unqualified.

#include <cmath>

#include "eqaff/errors.hpp"

namespace eqaff {

// Leading coefficients below this magnitude are rejected by the sign-sensitive
// primitives (division, signed cube root, abs-sqrt).
inline constexpr double kDegeneracyThreshold = 1e-12;

inline double leading(double v) noexcept { return v; }
inline double constant_like(double /*proto*/, double v) noexcept { return v; }

inline double sin(double u) { return std::sin(u); }
inline double cos(double u) { return std::cos(u); }
inline double tan(double u) { return std::tan(u); }
inline double sinh(double u) { return std::sinh(u); }
inline double cosh(double u) { return std::cosh(u); }
inline double tanh(double u) { return std::tanh(u); }
inline double exp(double u) { return std::exp(u); }
inline double abs(double u) { return std::fabs(u); }

inline double log(double u) {
  if (!(u > 0.0)) throw DomainError("log of nonpositive value");
  return std::log(u);
}

inline double sqrt(double u) {
  if (!(u >= 0.0)) throw DomainError("sqrt of negative value");
  return std::sqrt(u);
}

// Real cube root, cbrt(-8) = -2.
inline double signed_cbrt(double u, double /*threshold*/ = 0.0) { return std::cbrt(u); }

// |u|^(1/2)
inline double abs_sqrt(double u, double /*threshold*/ = 0.0) { return std::sqrt(std::fabs(u)); }

// u^p for a real exponent; only defined for a positive base.
inline double pow_real(double u, double p) {
  if (!(u > 0.0)) throw DomainError("real power of nonpositive base");
  return std::pow(u, p);
}

inline int sign_of(double v) noexcept { return v < 0.0 ? -1 : 1; }

}  // namespace eqaff

#pragma once

// Second-order two-direction perturbation bundle.
//
// A SpatialBundle<S> carries f and its spatial partials f_x, f_y, f_xx, f_xy,
// f_yy about a point. The coefficient type S is itself a scalar algebra
// (double or Jet), which is how metric partials along a curve become
// functions of the curve parameter.

#include <cmath>
#include <type_traits>

#include "eqaff/errors.hpp"
#include "eqaff/jet.hpp"
#include "eqaff/scalar.hpp"

namespace eqaff {

template <class S>
struct SpatialBundle {
  S v{}, dx{}, dy{}, dxx{}, dxy{}, dyy{};

  static SpatialBundle constant(const S& value) {
    const S z = constant_like(value, 0.0);
    return {value, z, z, z, z, z};
  }
  static SpatialBundle x_coordinate(const S& x) {
    const S z = constant_like(x, 0.0);
    return {x, constant_like(x, 1.0), z, z, z, z};
  }
  static SpatialBundle y_coordinate(const S& y) {
    const S z = constant_like(y, 0.0);
    return {y, z, constant_like(y, 1.0), z, z, z};
  }

  friend SpatialBundle operator-(const SpatialBundle& a) {
    return {-a.v, -a.dx, -a.dy, -a.dxx, -a.dxy, -a.dyy};
  }
  friend SpatialBundle operator+(const SpatialBundle& a, const SpatialBundle& b) {
    return {a.v + b.v, a.dx + b.dx, a.dy + b.dy, a.dxx + b.dxx, a.dxy + b.dxy, a.dyy + b.dyy};
  }
  friend SpatialBundle operator-(const SpatialBundle& a, const SpatialBundle& b) {
    return {a.v - b.v, a.dx - b.dx, a.dy - b.dy, a.dxx - b.dxx, a.dxy - b.dxy, a.dyy - b.dyy};
  }
  friend SpatialBundle operator*(const SpatialBundle& a, const SpatialBundle& b) {
    return {a.v * b.v,
            a.dx * b.v + a.v * b.dx,
            a.dy * b.v + a.v * b.dy,
            a.dxx * b.v + 2.0 * (a.dx * b.dx) + a.v * b.dxx,
            a.dxy * b.v + a.dx * b.dy + a.dy * b.dx + a.v * b.dxy,
            a.dyy * b.v + 2.0 * (a.dy * b.dy) + a.v * b.dyy};
  }
  friend SpatialBundle operator/(const SpatialBundle& a, const SpatialBundle& b) {
    return a * reciprocal(b);
  }
  friend SpatialBundle operator*(const S& s, const SpatialBundle& a) {
    return {s * a.v, s * a.dx, s * a.dy, s * a.dxx, s * a.dxy, s * a.dyy};
  }
  friend SpatialBundle operator*(double s, const SpatialBundle& a)
    requires(!std::is_same_v<S, double>)
  {
    return {s * a.v, s * a.dx, s * a.dy, s * a.dxx, s * a.dxy, s * a.dyy};
  }

  friend SpatialBundle reciprocal(const SpatialBundle& u) {
    const S inv = constant_like(u.v, 1.0) / u.v;
    return chain(u, inv, -(inv * inv), 2.0 * (inv * inv * inv));
  }

  // h = phi(u) given phi(u0), phi'(u0), phi''(u0).
  friend SpatialBundle chain(const SpatialBundle& u, const S& f0, const S& f1, const S& f2) {
    return {f0,
            f1 * u.dx,
            f1 * u.dy,
            f2 * (u.dx * u.dx) + f1 * u.dxx,
            f2 * (u.dx * u.dy) + f1 * u.dxy,
            f2 * (u.dy * u.dy) + f1 * u.dyy};
  }
};

template <class S>
S leading_coeff(const SpatialBundle<S>& b) {
  return b.v;
}

template <class S>
double leading(const SpatialBundle<S>& b) {
  return leading(b.v);
}

template <class S>
SpatialBundle<S> constant_like(const SpatialBundle<S>& proto, double v) {
  return SpatialBundle<S>::constant(constant_like(proto.v, v));
}

template <class S>
SpatialBundle<S> sin(const SpatialBundle<S>& u) {
  const S s = sin(u.v), c = cos(u.v);
  return chain(u, s, c, -s);
}

template <class S>
SpatialBundle<S> cos(const SpatialBundle<S>& u) {
  const S s = sin(u.v), c = cos(u.v);
  return chain(u, c, -s, -c);
}

template <class S>
SpatialBundle<S> tan(const SpatialBundle<S>& u) {
  const S t = tan(u.v);
  const S sec2 = t * t + 1.0;
  return chain(u, t, sec2, 2.0 * (t * sec2));
}

template <class S>
SpatialBundle<S> sinh(const SpatialBundle<S>& u) {
  const S s = sinh(u.v), c = cosh(u.v);
  return chain(u, s, c, s);
}

template <class S>
SpatialBundle<S> cosh(const SpatialBundle<S>& u) {
  const S s = sinh(u.v), c = cosh(u.v);
  return chain(u, c, s, c);
}

template <class S>
SpatialBundle<S> tanh(const SpatialBundle<S>& u) {
  const S t = tanh(u.v);
  const S sech2 = 1.0 - t * t;
  return chain(u, t, sech2, -2.0 * (t * sech2));
}

template <class S>
SpatialBundle<S> exp(const SpatialBundle<S>& u) {
  const S e = exp(u.v);
  return chain(u, e, e, e);
}

template <class S>
SpatialBundle<S> log(const SpatialBundle<S>& u) {
  const S l = log(u.v);
  const S inv = constant_like(u.v, 1.0) / u.v;
  return chain(u, l, inv, -(inv * inv));
}

template <class S>
SpatialBundle<S> pow_real(const SpatialBundle<S>& u, double p) {
  const S w = pow_real(u.v, p);
  const S inv = constant_like(u.v, 1.0) / u.v;
  return chain(u, w, p * (w * inv), (p * (p - 1.0)) * (w * inv * inv));
}

template <class S>
SpatialBundle<S> sqrt(const SpatialBundle<S>& u) {
  const S r = sqrt(u.v);
  if (!(leading(r) > 0.0)) throw DomainError("sqrt bundle at zero is not smooth");
  const S inv_r = constant_like(r, 1.0) / r;
  return chain(u, r, 0.5 * inv_r, -0.25 * (inv_r * inv_r * inv_r));
}

template <class S>
SpatialBundle<S> signed_cbrt(const SpatialBundle<S>& u, double threshold = kDegeneracyThreshold) {
  if (!(std::fabs(leading(u.v)) >= threshold)) throw DegenerateJet("signed cube root near zero");
  const S r = signed_cbrt(u.v);
  const S inv = constant_like(u.v, 1.0) / u.v;
  return chain(u, r, (1.0 / 3.0) * (r * inv), (-2.0 / 9.0) * (r * inv * inv));
}

template <class S>
SpatialBundle<S> abs_sqrt(const SpatialBundle<S>& u, double threshold = kDegeneracyThreshold) {
  if (!(std::fabs(leading(u.v)) >= threshold)) throw DegenerateJet("abs-sqrt near zero");
  const double eps = leading(u.v) < 0.0 ? -1.0 : 1.0;
  const S r = abs_sqrt(u.v);
  const S inv_r = constant_like(r, 1.0) / r;
  const S inv_u = constant_like(u.v, 1.0) / u.v;
  return chain(u, r, (0.5 * eps) * inv_r, (-0.25 * eps) * (inv_r * inv_u));
}

template <class S>
SpatialBundle<S> abs(const SpatialBundle<S>& u, double threshold = kDegeneracyThreshold) {
  if (!(std::fabs(leading(u.v)) >= threshold)) throw DegenerateJet("abs near zero is not smooth");
  return leading(u.v) < 0.0 ? -u : u;
}

}  // namespace eqaff

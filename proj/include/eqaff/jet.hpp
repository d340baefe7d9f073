#pragma once

// Truncated univariate Taylor jets.
//
// A Jet of order n holds f(t0), f'(t0), ..., f^(n)(t0): the k-th entry is the
// k-th derivative, not the k-th monomial coefficient. Arithmetic propagates
// derivatives exactly; the analytic primitives work on the factorial-scaled
// (monomial) coefficients internally and convert back.

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>

#include "eqaff/errors.hpp"
#include "eqaff/scalar.hpp"

namespace eqaff {

class Jet {
 public:
  static constexpr int kMaxOrder = 12;
  using Coeffs = std::array<double, kMaxOrder + 1>;

  Jet() = default;

  // Literal coefficients in derivative convention; order = size - 1.
  Jet(std::initializer_list<double> coeffs) {
    if (coeffs.size() == 0 || coeffs.size() > kMaxOrder + 1) {
      throw OrderMismatch("jet literal must have 1.." + std::to_string(kMaxOrder + 1) + " entries");
    }
    order_ = static_cast<int>(coeffs.size()) - 1;
    std::copy(coeffs.begin(), coeffs.end(), c_.begin());
  }

  static Jet from_coeffs(std::span<const double> coeffs) {
    if (coeffs.empty() || coeffs.size() > kMaxOrder + 1) {
      throw OrderMismatch("jet must have 1.." + std::to_string(kMaxOrder + 1) + " coefficients");
    }
    Jet j;
    j.order_ = static_cast<int>(coeffs.size()) - 1;
    std::copy(coeffs.begin(), coeffs.end(), j.c_.begin());
    return j;
  }

  static Jet constant(double value, int order) {
    Jet j(checked(order));
    j.c_[0] = value;
    return j;
  }

  // The identity function seeded at `value`: [value, 1, 0, ...].
  static Jet variable(double value, int order) {
    Jet j = constant(value, order);
    if (order > 0) j.c_[1] = 1.0;
    return j;
  }

  int order() const noexcept { return order_; }
  double value() const noexcept { return c_[0]; }
  double operator[](int k) const noexcept { return c_[static_cast<std::size_t>(k)]; }
  std::span<const double> coeffs() const noexcept {
    return {c_.data(), static_cast<std::size_t>(order_ + 1)};
  }

  friend bool operator==(const Jet& a, const Jet& b) noexcept {
    return a.order_ == b.order_ && std::equal(a.c_.begin(), a.c_.begin() + a.order_ + 1, b.c_.begin());
  }

  friend Jet operator-(const Jet& a) {
    Jet r(a.order_);
    for (int k = 0; k <= a.order_; ++k) r.c_[k] = -a.c_[k];
    return r;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    check_same(a, b);
    Jet r(a.order_);
    for (int k = 0; k <= a.order_; ++k) r.c_[k] = a.c_[k] + b.c_[k];
    return r;
  }

  friend Jet operator-(const Jet& a, const Jet& b) {
    check_same(a, b);
    Jet r(a.order_);
    for (int k = 0; k <= a.order_; ++k) r.c_[k] = a.c_[k] - b.c_[k];
    return r;
  }

  // Leibniz rule: (ab)^(k) = sum_j C(k,j) a^(j) b^(k-j).
  friend Jet operator*(const Jet& a, const Jet& b) {
    check_same(a, b);
    Jet r(a.order_);
    for (int k = 0; k <= a.order_; ++k) {
      double acc = 0.0;
      for (int j = 0; j <= k; ++j) acc += binomial(k, j) * a.c_[j] * b.c_[k - j];
      r.c_[k] = acc;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return divide(a, b, kDegeneracyThreshold); }

  friend Jet divide(const Jet& a, const Jet& b, double threshold) {
    check_same(a, b);
    if (!(std::fabs(b.c_[0]) >= threshold)) {
      throw DivisionByNearZero("divisor leading coefficient " + std::to_string(b.c_[0]));
    }
    Coeffs am = a.monomial(), bm = b.monomial(), cm{};
    for (int k = 0; k <= a.order_; ++k) {
      double acc = am[k];
      for (int j = 1; j <= k; ++j) acc -= bm[j] * cm[k - j];
      cm[k] = acc / bm[0];
    }
    return from_monomial(cm, a.order_);
  }

  friend Jet operator+(const Jet& a, double s) {
    Jet r = a;
    r.c_[0] += s;
    return r;
  }
  friend Jet operator+(double s, const Jet& a) { return a + s; }
  friend Jet operator-(const Jet& a, double s) { return a + (-s); }
  friend Jet operator-(double s, const Jet& a) { return (-a) + s; }
  friend Jet operator*(const Jet& a, double s) {
    Jet r(a.order_);
    for (int k = 0; k <= a.order_; ++k) r.c_[k] = a.c_[k] * s;
    return r;
  }
  friend Jet operator*(double s, const Jet& a) { return a * s; }
  friend Jet operator/(const Jet& a, double s) {
    Jet r(a.order_);
    for (int k = 0; k <= a.order_; ++k) r.c_[k] = a.c_[k] / s;
    return r;
  }
  friend Jet operator/(double s, const Jet& a) { return constant(s, a.order_) / a; }

  friend std::ostream& operator<<(std::ostream& os, const Jet& a) {
    os << '[';
    for (int k = 0; k <= a.order_; ++k) os << (k ? ", " : "") << a.c_[k];
    return os << ']';
  }

  // Factorial-scaled coefficients f^(k)/k!.
  Coeffs monomial() const noexcept {
    Coeffs m{};
    for (int k = 0; k <= order_; ++k) m[k] = c_[k] / factorial(k);
    return m;
  }

  static Jet from_monomial(const Coeffs& m, int order) {
    Jet r(order);
    for (int k = 0; k <= order; ++k) r.c_[k] = m[k] * factorial(k);
    return r;
  }

  static double factorial(int k) noexcept {
    static constexpr auto table = [] {
      std::array<double, kMaxOrder + 1> t{};
      t[0] = 1.0;
      for (int i = 1; i <= kMaxOrder; ++i) t[i] = t[i - 1] * i;
      return t;
    }();
    return table[static_cast<std::size_t>(k)];
  }

  static double binomial(int n, int k) noexcept { return factorial(n) / (factorial(k) * factorial(n - k)); }

 private:
  explicit Jet(int order) : order_(order) {}

  static int checked(int order) {
    if (order < 0 || order > kMaxOrder) {
      throw OrderMismatch("jet order " + std::to_string(order) + " outside [0, " +
                          std::to_string(kMaxOrder) + "]");
    }
    return order;
  }

  static void check_same(const Jet& a, const Jet& b) {
    if (a.order_ != b.order_) {
      throw OrderMismatch("jets of order " + std::to_string(a.order_) + " and " +
                          std::to_string(b.order_));
    }
  }

  int order_ = 0;
  Coeffs c_{};
};

inline double leading(const Jet& a) noexcept { return a.value(); }
inline Jet constant_like(const Jet& proto, double v) { return Jet::constant(v, proto.order()); }

inline Jet jet_variable(double value, int order) { return Jet::variable(value, order); }

// Derivative of the jet's function: drops one order.
inline Jet derivative(const Jet& a) {
  if (a.order() == 0) throw OrderMismatch("derivative of an order-0 jet");
  return Jet::from_coeffs(a.coeffs().subspan(1));
}

inline Jet truncate(const Jet& a, int order) {
  if (order < 0 || order > a.order()) {
    throw OrderMismatch("cannot truncate order " + std::to_string(a.order()) + " jet to " +
                        std::to_string(order));
  }
  return Jet::from_coeffs(a.coeffs().first(static_cast<std::size_t>(order + 1)));
}

namespace detail {

// b = a^p given b0, via a b' = p a' b.
inline Jet power_series(const Jet& a, double p, double b0) {
  const int n = a.order();
  const auto am = a.monomial();
  Jet::Coeffs bm{};
  bm[0] = b0;
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += (p * j - (k - j)) * am[j] * bm[k - j];
    bm[k] = acc / (k * am[0]);
  }
  return Jet::from_monomial(bm, n);
}

// Simultaneous (s, c) with s' = c a', c' = sign * s a'.
inline std::pair<Jet, Jet> coupled_series(const Jet& a, double s0, double c0, double sign) {
  const int n = a.order();
  const auto am = a.monomial();
  Jet::Coeffs sm{}, cm{};
  sm[0] = s0;
  cm[0] = c0;
  for (int k = 1; k <= n; ++k) {
    double ds = 0.0, dc = 0.0;
    for (int j = 1; j <= k; ++j) {
      ds += j * am[j] * cm[k - j];
      dc += j * am[j] * sm[k - j];
    }
    sm[k] = ds / k;
    cm[k] = sign * dc / k;
  }
  return {Jet::from_monomial(sm, n), Jet::from_monomial(cm, n)};
}

}  // namespace detail

inline Jet exp(const Jet& a) {
  const int n = a.order();
  const auto am = a.monomial();
  Jet::Coeffs bm{};
  bm[0] = std::exp(am[0]);
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * am[j] * bm[k - j];
    bm[k] = acc / k;
  }
  return Jet::from_monomial(bm, n);
}

inline Jet log(const Jet& a) {
  if (!(a.value() > 0.0)) throw DomainError("log of jet with nonpositive leading coefficient");
  const int n = a.order();
  const auto am = a.monomial();
  Jet::Coeffs bm{};
  bm[0] = std::log(am[0]);
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j < k; ++j) acc += j * bm[j] * am[k - j];
    bm[k] = (am[k] - acc / k) / am[0];
  }
  return Jet::from_monomial(bm, n);
}

inline Jet sin(const Jet& a) {
  return detail::coupled_series(a, std::sin(a.value()), std::cos(a.value()), -1.0).first;
}
inline Jet cos(const Jet& a) {
  return detail::coupled_series(a, std::sin(a.value()), std::cos(a.value()), -1.0).second;
}
inline Jet tan(const Jet& a) {
  auto [s, c] = detail::coupled_series(a, std::sin(a.value()), std::cos(a.value()), -1.0);
  if (c.value() == 0.0) throw DomainError("tan at a pole");
  return divide(s, c, 0.0);
}
inline Jet sinh(const Jet& a) {
  return detail::coupled_series(a, std::sinh(a.value()), std::cosh(a.value()), 1.0).first;
}
inline Jet cosh(const Jet& a) {
  return detail::coupled_series(a, std::sinh(a.value()), std::cosh(a.value()), 1.0).second;
}
inline Jet tanh(const Jet& a) {
  auto [s, c] = detail::coupled_series(a, std::sinh(a.value()), std::cosh(a.value()), 1.0);
  return divide(s, c, 0.0);
}

inline Jet pow_real(const Jet& a, double p) {
  if (!(a.value() > 0.0)) throw DomainError("real power of jet with nonpositive leading coefficient");
  return detail::power_series(a, p, std::pow(a.value(), p));
}

inline Jet sqrt(const Jet& a) {
  if (!(a.value() > 0.0)) throw DomainError("sqrt of jet with nonpositive leading coefficient");
  return detail::power_series(a, 0.5, std::sqrt(a.value()));
}

inline Jet signed_cbrt(const Jet& a, double threshold = kDegeneracyThreshold) {
  if (!(std::fabs(a.value()) >= threshold)) {
    throw DegenerateJet("signed cube root near zero (" + std::to_string(a.value()) + ")");
  }
  return detail::power_series(a, 1.0 / 3.0, std::cbrt(a.value()));
}

// sqrt(eps * u) with eps = sign(u0).
inline Jet abs_sqrt(const Jet& a, double threshold = kDegeneracyThreshold) {
  if (!(std::fabs(a.value()) >= threshold)) {
    throw DegenerateJet("abs-sqrt near zero (" + std::to_string(a.value()) + ")");
  }
  const Jet signed_a = a.value() < 0.0 ? -a : a;
  return detail::power_series(signed_a, 0.5, std::sqrt(signed_a.value()));
}

inline Jet abs(const Jet& a, double threshold = kDegeneracyThreshold) {
  if (!(std::fabs(a.value()) >= threshold)) throw DegenerateJet("abs near zero is not smooth");
  return a.value() < 0.0 ? -a : a;
}

}  // namespace eqaff

#pragma once

// Dense univariate polynomials over an exact coefficient ring. Nesting the
// template gives multivariate rings: Poly<Rational> is Q[x],
// Poly<Poly<Rational>> is Q[y][x], and so on.

#include <algorithm>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include "rmcalc/errors.hpp"
#include "rmcalc/rational.hpp"

namespace rmcalc {

template <class R>
class Poly;

namespace ring {

template <class R>
struct Unit;

template <>
struct Unit<Rational> {
  static Rational one() { return Rational(1); }
};

template <class S>
struct Unit<Poly<S>> {
  static Poly<S> one() { return Poly<S>(Unit<S>::one()); }
};

template <class R>
R one() {
  return Unit<R>::one();
}

template <class R>
inline constexpr bool is_field_v = std::is_same_v<R, Rational>;

inline bool is_zero(const Rational& a) { return sgn(a) == 0; }
inline Rational divexact(const Rational& a, const Rational& b) {
  if (sgn(b) == 0) throw ComputationError("division by zero");
  return Rational(a / b);
}
inline Rational gcd(const Rational& a, const Rational& b) { return rational_gcd(a, b); }
inline Rational content(const Rational& a) { return abs(a); }
inline Rational lead_rational(const Rational& a) { return a; }
inline Rational scaled(const Rational& a, const Rational& s) { return Rational(a * s); }
inline Rational power(const Rational& a, unsigned e) { return rmcalc::pow(a, e); }

template <class S>
bool is_zero(const Poly<S>& p);
template <class S>
Poly<S> divexact(const Poly<S>& a, const Poly<S>& b);
template <class S>
Poly<S> gcd(const Poly<S>& a, const Poly<S>& b);
template <class S>
Rational content(const Poly<S>& p);
template <class S>
Rational lead_rational(const Poly<S>& p);
template <class S>
Poly<S> scaled(const Poly<S>& p, const Rational& s);
template <class S>
Poly<S> power(const Poly<S>& p, unsigned e);

}  // namespace ring

template <class R>
class Poly {
 public:
  using coeff_type = R;

  Poly() = default;
  explicit Poly(R c) {
    if (!ring::is_zero(c)) c_.push_back(std::move(c));
  }
  explicit Poly(std::vector<R> c) : c_(std::move(c)) { trim(); }

  static Poly monomial(R c, int k) {
    if (ring::is_zero(c)) return Poly();
    std::vector<R> v(static_cast<std::size_t>(k) + 1);
    v[static_cast<std::size_t>(k)] = std::move(c);
    Poly p;
    p.c_ = std::move(v);
    return p;
  }
  static Poly x() { return monomial(ring::one<R>(), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  const R& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  R coeff(int i) const { return (i >= 0 && i <= degree()) ? c_[static_cast<std::size_t>(i)] : R(); }
  const R& lead() const { return c_.back(); }
  const std::vector<R>& coeffs() const { return c_; }

  void set_coeff(int i, R v) {
    if (static_cast<std::size_t>(i) >= c_.size()) {
      if (ring::is_zero(v)) return;
      c_.resize(static_cast<std::size_t>(i) + 1);
    }
    c_[static_cast<std::size_t>(i)] = std::move(v);
    trim();
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
  }
  Poly& operator*=(const R& s) {
    if (ring::is_zero(s)) {
      c_.clear();
      return *this;
    }
    for (auto& c : c_) c *= s;
    trim();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<R> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (ring::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(out));
  }
  friend Poly operator*(Poly a, const R& s) { return a *= s; }
  friend Poly operator*(const R& s, Poly a) { return a *= s; }
  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<R> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = ring::scaled(c_[i], Rational(static_cast<long>(i)));
    return Poly(std::move(d));
  }

  // Multiply by x^k.
  Poly shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    Poly r;
    r.c_.assign(static_cast<std::size_t>(k), R());
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
  }

 private:
  std::vector<R> c_;
  void trim() {
    while (!c_.empty() && ring::is_zero(c_.back())) c_.pop_back();
  }
};

using QPoly = Poly<Rational>;

template <class R>
R ipow(const R& base, unsigned e) {
  R result = ring::one<R>();
  R b = base;
  while (e) {
    if (e & 1u) result = result * b;
    e >>= 1u;
    if (e) b = b * b;
  }
  return result;
}

template <class R>
Poly<R> scale_rational(const Poly<R>& p, const Rational& s) {
  std::vector<R> c(p.coeffs());
  for (auto& x : c) x = ring::scaled(x, s);
  return Poly<R>(std::move(c));
}

// Divide every coefficient by d exactly.
template <class R>
Poly<R> divide_coeffs(const Poly<R>& p, const R& d) {
  std::vector<R> c(p.coeffs());
  for (auto& x : c) x = ring::divexact(x, d);
  return Poly<R>(std::move(c));
}

// Make rational content 1 and the deepest leading coefficient positive.
template <class R>
Poly<R> normalize(const Poly<R>& p) {
  if (p.is_zero()) return p;
  Rational c = ring::content(p);
  if (ring::lead_rational(p) < 0) c = -c;
  return scale_rational(p, Rational(1 / c));
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
template <class R>
Poly<R> prem(const Poly<R>& a, const Poly<R>& b) {
  if (b.is_zero()) throw ComputationError("pseudo-remainder by zero");
  if (a.degree() < b.degree()) return a;
  const R& l = b.lead();
  int e = a.degree() - b.degree() + 1;
  Poly<R> r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    Poly<R> t = Poly<R>::monomial(r.lead(), r.degree() - b.degree());
    r = r * l - t * b;
    --e;
  }
  if (e > 0) r *= ipow(l, static_cast<unsigned>(e));
  return r;
}

// Quotient and remainder over a field.
template <class R>
std::pair<Poly<R>, Poly<R>> divmod(const Poly<R>& a, const Poly<R>& b) {
  static_assert(ring::is_field_v<R>);
  if (b.is_zero()) throw ComputationError("polynomial division by zero");
  Poly<R> q, r = a;
  R inv = R(1 / b.lead());
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int k = r.degree() - b.degree();
    R c = R(r.lead() * inv);
    q.set_coeff(k, c);
    r -= Poly<R>::monomial(c, k) * b;
  }
  return {q, r};
}

template <class R>
Poly<R> poly_divexact(const Poly<R>& a, const Poly<R>& b) {
  if (b.is_zero()) throw ComputationError("polynomial division by zero");
  Poly<R> q, r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int k = r.degree() - b.degree();
    R c = ring::divexact(r.lead(), b.lead());
    int before = r.degree();
    r -= Poly<R>::monomial(c, k) * b;
    q.set_coeff(k, std::move(c));
    if (!r.is_zero() && r.degree() >= before) throw ComputationError("inexact polynomial division");
  }
  if (!r.is_zero()) throw ComputationError("inexact polynomial division");
  return q;
}

// gcd of all coefficients in the coefficient ring.
template <class R>
R content_ring(const Poly<R>& p) {
  R g{};
  for (const auto& c : p.coeffs()) {
    g = ring::gcd(g, c);
  }
  return g;
}

template <class R>
Poly<R> primitive_part(const Poly<R>& p) {
  if (p.is_zero()) return p;
  return divide_coeffs(p, content_ring(p));
}

template <class R>
Poly<R> poly_gcd(Poly<R> a, Poly<R> b) {
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  if constexpr (ring::is_field_v<R>) {
    while (!b.is_zero()) {
      Poly<R> r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return normalize(a);
  } else {
    // Subresultant polynomial remainder sequence.
    if (a.degree() < b.degree()) std::swap(a, b);
    R ca = content_ring(a), cb = content_ring(b);
    R d = ring::gcd(ca, cb);
    a = divide_coeffs(a, ca);
    b = divide_coeffs(b, cb);
    R g = ring::one<R>(), h = ring::one<R>();
    for (;;) {
      int delta = a.degree() - b.degree();
      Poly<R> r = prem(a, b);
      if (r.is_zero()) break;
      if (r.degree() == 0) {
        b = Poly<R>(ring::one<R>());
        break;
      }
      a = std::move(b);
      b = divide_coeffs(r, R(g * ipow(h, static_cast<unsigned>(delta))));
      g = a.lead();
      if (delta > 0) h = ring::divexact(ipow(g, static_cast<unsigned>(delta)), ipow(h, static_cast<unsigned>(delta - 1)));
    }
    return normalize(primitive_part(b) * d);
  }
}

namespace ring {

template <class S>
bool is_zero(const Poly<S>& p) {
  return p.is_zero();
}
template <class S>
Poly<S> divexact(const Poly<S>& a, const Poly<S>& b) {
  return poly_divexact(a, b);
}
template <class S>
Poly<S> gcd(const Poly<S>& a, const Poly<S>& b) {
  return poly_gcd(a, b);
}
template <class S>
Rational content(const Poly<S>& p) {
  Rational g;
  for (const auto& c : p.coeffs()) g = rational_gcd(g, content(c));
  return g;
}
template <class S>
Rational lead_rational(const Poly<S>& p) {
  return p.is_zero() ? Rational(0) : lead_rational(p.lead());
}
template <class S>
Poly<S> scaled(const Poly<S>& p, const Rational& s) {
  return scale_rational(p, s);
}
template <class S>
Poly<S> power(const Poly<S>& p, unsigned e) {
  return ipow(p, e);
}

}  // namespace ring

// Horner evaluation of a rational polynomial at a rational point.
inline Rational eval(const QPoly& p, const Rational& x) {
  Rational r;
  for (int i = p.degree(); i >= 0; --i) r = r * x + p[i];
  return r;
}

// Compose p(a x + b) exactly.
inline QPoly compose_affine(const QPoly& p, const Rational& a, const Rational& b) {
  QPoly lin(std::vector<Rational>{b, a});
  QPoly r;
  for (int i = p.degree(); i >= 0; --i) r = r * lin + QPoly(p[i]);
  return r;
}

}  // namespace rmcalc

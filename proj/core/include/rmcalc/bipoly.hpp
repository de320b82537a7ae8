#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "rmcalc/poly.hpp"
#include "rmcalc/rational.hpp"

namespace rmcalc {

// Q[v][u]: outer index is the power of u, each coefficient l_j(v) is in Q[v].
using QPoly2 = Poly<QPoly>;

inline constexpr int kMaxDegree = 64;

class BiPoly {
 public:
  BiPoly() : u_("u"), v_("v") {}
  BiPoly(std::string u_label, std::string v_label, QPoly2 p = {});

  // rows[j][k] is the coefficient of u^j v^k.
  static BiPoly from_coeffs(std::string u_label, std::string v_label,
                            const std::vector<std::vector<Rational>>& rows);
  static BiPoly constant(std::string u_label, std::string v_label, const Rational& c);
  static BiPoly u_var(std::string u_label, std::string v_label);
  static BiPoly v_var(std::string u_label, std::string v_label);

  const std::string& u_label() const { return u_; }
  const std::string& v_label() const { return v_; }
  const QPoly2& poly() const { return p_; }

  bool is_zero() const { return p_.is_zero(); }
  int du() const { return p_.degree(); }
  int dv() const;
  Rational coeff(int j, int k) const { return p_.coeff(j).coeff(k); }
  QPoly row(int j) const { return p_.coeff(j); }
  std::vector<std::vector<Rational>> coeff_matrix() const;

  BiPoly relabeled(std::string u_label, std::string v_label) const;
  bool same_labels(const BiPoly& o) const { return u_ == o.u_ && v_ == o.v_; }

  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.same_labels(b) && a.p_ == b.p_; }
  friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

 private:
  std::string u_, v_;
  QPoly2 p_;
};

BiPoly add(const BiPoly& a, const BiPoly& b);
BiPoly sub(const BiPoly& a, const BiPoly& b);
BiPoly mul(const BiPoly& a, const BiPoly& b);
BiPoly scale(const BiPoly& a, const Rational& s);
BiPoly power(const BiPoly& a, unsigned e);

inline BiPoly operator+(const BiPoly& a, const BiPoly& b) { return add(a, b); }
inline BiPoly operator-(const BiPoly& a, const BiPoly& b) { return sub(a, b); }
inline BiPoly operator*(const BiPoly& a, const BiPoly& b) { return mul(a, b); }
inline BiPoly operator*(const Rational& s, const BiPoly& a) { return scale(a, s); }
inline BiPoly operator-(const BiPoly& a) { return scale(a, Rational(-1)); }

BiPoly derivative_u(const BiPoly& L);
BiPoly derivative_v(const BiPoly& L);

// Numerator of L(Pu/Qu, Pv/Qv) in lowest terms, canonicalized.
// Pu, Qu, Pv, Qv share the target labels, which the result inherits.
BiPoly substitute_rational(const BiPoly& L, const BiPoly& pu, const BiPoly& qu, const BiPoly& pv,
                           const BiPoly& qv);

// L(Pu/Qu, Pv/Qv) multiplied through by Qu^Du Qv^Dv, nothing cancelled.
BiPoly substitute_raw(const BiPoly& L, const BiPoly& pu, const BiPoly& qu, const BiPoly& pv,
                      const BiPoly& qv);

struct ComplexSlice {
  std::vector<std::complex<double>> coeffs;  // ascending powers of u
  bool degree_drop = false;
};

ComplexSlice eval_slice(const BiPoly& L, std::complex<double> z0);
QPoly eval_slice_exact(const BiPoly& L, const Rational& v0);

BiPoly canonicalize(const BiPoly& L);
// Divides out the largest factor that depends on u alone.
BiPoly remove_u_content(const BiPoly& L);
bool is_canonical(const BiPoly& L);

QPoly leading_coeff_u(const BiPoly& L);
QPoly discriminant_u(const BiPoly& L);

bool equivalent(const BiPoly& a, const BiPoly& b);

std::string to_string(const QPoly& p, std::string_view var);
std::string to_string(const BiPoly& L);

// Arithmetic expression in the two labels: + - * ^, parentheses, rational
// and decimal literals, juxtaposition as multiplication ("2z m^2").
BiPoly parse_bipoly(std::string_view text, const std::string& u_label, const std::string& v_label);

std::string to_json(const BiPoly& L, std::string_view kind = {});
BiPoly bipoly_from_json(std::string_view text, std::string* kind = nullptr);

}  // namespace rmcalc

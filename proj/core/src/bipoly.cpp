#include "rmcalc/bipoly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "rmcalc/algops.hpp"
#include "rmcalc/errors.hpp"

namespace rmcalc {

namespace {

void require_same_labels(const BiPoly& a, const BiPoly& b, const char* op) {
  if (!a.same_labels(b))
    throw InvalidArgument(std::string(op) + ": variable labels differ (" + a.u_label() + "," + a.v_label() + ") vs (" +
                          b.u_label() + "," + b.v_label() + ")");
}

void check_degree_cap(const BiPoly& L) {
  if (L.du() > kMaxDegree || L.dv() > kMaxDegree)
    throw ComputationError("degree cap exceeded: deg_u=" + std::to_string(L.du()) + " deg_v=" + std::to_string(L.dv()) +
                           " (limit " + std::to_string(kMaxDegree) + ")");
}

QPoly2 map_rows(const QPoly2& p, QPoly (*f)(const QPoly&)) {
  std::vector<QPoly> rows(p.coeffs());
  for (auto& r : rows) r = f(r);
  return QPoly2(std::move(rows));
}

}  // namespace

BiPoly::BiPoly(std::string u_label, std::string v_label, QPoly2 p)
    : u_(std::move(u_label)), v_(std::move(v_label)), p_(std::move(p)) {
  if (u_ == v_) throw InvalidArgument("BiPoly needs two distinct variable labels, got '" + u_ + "' twice");
}

BiPoly BiPoly::from_coeffs(std::string u_label, std::string v_label, const std::vector<std::vector<Rational>>& rows) {
  std::vector<QPoly> r;
  r.reserve(rows.size());
  for (const auto& row : rows) r.emplace_back(row);
  return BiPoly(std::move(u_label), std::move(v_label), QPoly2(std::move(r)));
}

BiPoly BiPoly::constant(std::string u_label, std::string v_label, const Rational& c) {
  return BiPoly(std::move(u_label), std::move(v_label), QPoly2(QPoly(c)));
}

BiPoly BiPoly::u_var(std::string u_label, std::string v_label) {
  return BiPoly(std::move(u_label), std::move(v_label), QPoly2::monomial(QPoly(Rational(1)), 1));
}

BiPoly BiPoly::v_var(std::string u_label, std::string v_label) {
  return BiPoly(std::move(u_label), std::move(v_label), QPoly2(QPoly::monomial(Rational(1), 1)));
}

int BiPoly::dv() const {
  int d = -1;
  for (const auto& r : p_.coeffs()) d = std::max(d, r.degree());
  return d;
}

std::vector<std::vector<Rational>> BiPoly::coeff_matrix() const {
  const int nv = std::max(dv(), 0) + 1;
  std::vector<std::vector<Rational>> m;
  for (int j = 0; j <= du(); ++j) {
    std::vector<Rational> row(static_cast<std::size_t>(nv));
    for (int k = 0; k < nv; ++k) row[static_cast<std::size_t>(k)] = coeff(j, k);
    m.push_back(std::move(row));
  }
  return m;
}

BiPoly BiPoly::relabeled(std::string u_label, std::string v_label) const {
  return BiPoly(std::move(u_label), std::move(v_label), p_);
}

BiPoly add(const BiPoly& a, const BiPoly& b) {
  require_same_labels(a, b, "add");
  return BiPoly(a.u_label(), a.v_label(), a.poly() + b.poly());
}

BiPoly sub(const BiPoly& a, const BiPoly& b) {
  require_same_labels(a, b, "sub");
  return BiPoly(a.u_label(), a.v_label(), a.poly() - b.poly());
}

BiPoly mul(const BiPoly& a, const BiPoly& b) {
  require_same_labels(a, b, "mul");
  return BiPoly(a.u_label(), a.v_label(), a.poly() * b.poly());
}

BiPoly scale(const BiPoly& a, const Rational& s) {
  return BiPoly(a.u_label(), a.v_label(), scale_rational(a.poly(), s));
}

BiPoly power(const BiPoly& a, unsigned e) { return BiPoly(a.u_label(), a.v_label(), ipow(a.poly(), e)); }

BiPoly derivative_u(const BiPoly& L) { return BiPoly(L.u_label(), L.v_label(), L.poly().derivative()); }

BiPoly derivative_v(const BiPoly& L) {
  return BiPoly(L.u_label(), L.v_label(), map_rows(L.poly(), [](const QPoly& r) { return r.derivative(); }));
}

BiPoly substitute_raw(const BiPoly& L, const BiPoly& pu, const BiPoly& qu, const BiPoly& pv, const BiPoly& qv) {
  require_same_labels(pu, qu, "substitute");
  require_same_labels(pu, pv, "substitute");
  require_same_labels(pu, qv, "substitute");
  if (qu.is_zero() || qv.is_zero()) throw InvalidArgument("substitute: zero denominator");
  if (L.is_zero()) throw ComputationError("substitute: zero polynomial");
  const int du = L.du(), dv = std::max(L.dv(), 0);

  auto powers = [](const QPoly2& base, int n) {
    std::vector<QPoly2> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    out.emplace_back(QPoly(Rational(1)));
    for (int i = 1; i <= n; ++i) out.push_back(out.back() * base);
    return out;
  };
  const auto pu_pow = powers(pu.poly(), du), qu_pow = powers(qu.poly(), du);
  const auto pv_pow = powers(pv.poly(), dv), qv_pow = powers(qv.poly(), dv);

  QPoly2 total;
  for (int j = 0; j <= du; ++j) {
    const QPoly& row = L.poly().coeff(j);
    if (row.is_zero()) continue;
    QPoly2 h;
    for (int k = 0; k <= row.degree(); ++k) {
      if (sgn(row[k]) == 0) continue;
      h += (pv_pow[static_cast<std::size_t>(k)] * qv_pow[static_cast<std::size_t>(dv - k)]) * QPoly(row[k]);
    }
    total += h * (pu_pow[static_cast<std::size_t>(j)] * qu_pow[static_cast<std::size_t>(du - j)]);
  }
  if (total.is_zero()) throw ComputationError("substitution yields the zero polynomial");
  return BiPoly(pu.u_label(), pu.v_label(), std::move(total));
}

BiPoly substitute_rational(const BiPoly& L, const BiPoly& pu, const BiPoly& qu, const BiPoly& pv, const BiPoly& qv) {
  BiPoly raw = substitute_raw(L, pu, qu, pv, qv);
  // Numerator in lowest terms: cancel what the cleared denominator shares with it.
  const QPoly2 cleared = ipow(qu.poly(), static_cast<unsigned>(L.du())) *
                         ipow(qv.poly(), static_cast<unsigned>(std::max(L.dv(), 0)));
  if (cleared.degree() > 0 || cleared.lead().degree() > 0) {
    const QPoly2 g = poly_gcd(raw.poly(), cleared);
    if (g.degree() > 0 || g.lead().degree() > 0) raw = BiPoly(raw.u_label(), raw.v_label(), poly_divexact(raw.poly(), g));
  }
  return canonicalize(raw);
}

ComplexSlice eval_slice(const BiPoly& L, std::complex<double> z0) {
  ComplexSlice s;
  double scale = 0.0;
  for (int j = 0; j <= L.du(); ++j) {
    const QPoly& row = L.poly().coeff(j);
    std::complex<double> acc = 0.0;
    for (int k = row.degree(); k >= 0; --k) acc = acc * z0 + to_double(row[k]);
    s.coeffs.push_back(acc);
    scale = std::max(scale, std::abs(acc));
  }
  if (scale == 0.0) throw ComputationError("singular slice: all coefficients vanish");
  while (!s.coeffs.empty() && std::abs(s.coeffs.back()) <= 1e-15 * scale) {
    s.coeffs.pop_back();
    s.degree_drop = true;
  }
  return s;
}

QPoly eval_slice_exact(const BiPoly& L, const Rational& v0) {
  std::vector<Rational> c;
  for (int j = 0; j <= L.du(); ++j) c.push_back(eval(L.poly().coeff(j), v0));
  return QPoly(std::move(c));
}

BiPoly canonicalize(const BiPoly& L) {
  if (L.is_zero()) throw ComputationError("canonicalize: zero polynomial");
  QPoly2 p = normalize(L.poly());
  QPoly c = content_ring(p);
  if (c.degree() > 0) p = divide_coeffs(p, c);
  if (p.degree() >= 1) {
    QPoly2 g = poly_gcd(p, p.derivative());
    if (g.degree() > 0) p = poly_divexact(p, g);
  }
  BiPoly out(L.u_label(), L.v_label(), normalize(p));
  check_degree_cap(out);
  return out;
}

BiPoly remove_u_content(const BiPoly& L) {
  const int du = L.du(), dv = L.dv();
  if (du < 1 || dv < 0) return L;
  // Swap roles: rows indexed by the power of v, entries polynomials in u.
  std::vector<QPoly> t(static_cast<std::size_t>(dv) + 1);
  for (int j = 0; j <= du; ++j)
    for (int k = 0; k <= dv; ++k) t[k].set_coeff(j, L.coeff(j, k));
  const QPoly2 swapped(std::move(t));
  const QPoly c = content_ring(swapped);
  if (c.degree() < 1) return L;
  std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(du) + 1);
  for (int k = 0; k <= dv; ++k) {
    const QPoly q = poly_divexact(swapped[k], c);
    for (int j = 0; j <= q.degree(); ++j) {
      if (rows[j].size() <= static_cast<std::size_t>(k)) rows[j].resize(static_cast<std::size_t>(k) + 1);
      rows[j][k] = q[j];
    }
  }
  return canonicalize(BiPoly::from_coeffs(L.u_label(), L.v_label(), rows));
}

bool is_canonical(const BiPoly& L) {
  if (L.is_zero()) return false;
  return canonicalize(L) == L;
}

QPoly leading_coeff_u(const BiPoly& L) {
  if (L.is_zero()) return QPoly();
  return L.poly().lead();
}

QPoly discriminant_u(const BiPoly& L) {
  const int n = L.du();
  if (n < 2) throw InvalidArgument("discriminant_u needs degree >= 2 in " + L.u_label());
  QPoly res = resultant(L.poly(), L.poly().derivative());
  QPoly d = poly_divexact(res, L.poly().lead());
  if ((n * (n - 1) / 2) % 2 == 1) d = -d;
  return d;
}

bool equivalent(const BiPoly& a, const BiPoly& b) {
  if (!a.same_labels(b)) return false;
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  const BiPoly ca = canonicalize(a), cb = canonicalize(b);
  if (ca == cb) return true;
  if (ca.du() != cb.du()) return false;
  // Slice check at fixed pseudo-random rational points.
  unsigned long state = 0x9e3779b9ul;
  for (int t = 0; t < 8; ++t) {
    state = state * 6364136223846793005ul + 1442695040888963407ul;
    Rational v0(Integer(static_cast<long>((state >> 33) % 1997) - 998), Integer(static_cast<long>((state >> 17) % 97) + 1));
    v0.canonicalize();
    QPoly sa = eval_slice_exact(ca, v0), sb = eval_slice_exact(cb, v0);
    if (sa.is_zero() || sb.is_zero()) return false;
    auto squarefree = [](const QPoly& s) {
      if (s.degree() < 1) return normalize(s);
      return normalize(divmod(s, poly_gcd(s, s.derivative())).first);
    };
    if (squarefree(sa) != squarefree(sb)) return false;
  }
  return true;
}

std::string to_string(const QPoly& p, std::string_view var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational& c = p[k];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = mag == 1;
    if (!unit || k == 0) os << mag.get_str();
    if (k > 0) {
      if (!unit) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

std::string to_string(const BiPoly& L) {
  if (L.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int j = L.du(); j >= 0; --j) {
    const QPoly& row = L.poly().coeff(j);
    if (row.is_zero()) continue;
    int nonzero = 0;
    for (const auto& c : row.coeffs())
      if (sgn(c) != 0) ++nonzero;
    std::string body;
    bool negative = false;
    if (j == 0) {
      body = to_string(row, L.v_label());
      if (nonzero == 1 && body[0] == '-') {
        negative = true;
        body = body.substr(1);
      }
    } else {
      std::string upow = L.u_label() + (j > 1 ? "^" + std::to_string(j) : "");
      if (nonzero == 1) {
        std::string r = to_string(row, L.v_label());
        if (r[0] == '-') {
          negative = true;
          r = r.substr(1);
        }
        body = r == "1" ? upow : r + "*" + upow;
      } else {
        body = "(" + to_string(row, L.v_label()) + ")*" + upow;
      }
    }
    if (first)
      os << (negative ? "-" : "") << body;
    else
      os << (negative ? " - " : " + ") << body;
    first = false;
  }
  return os.str();
}

namespace {

class BiPolyParser {
 public:
  BiPolyParser(std::string_view text, const std::string& u, const std::string& v) : s_(text), u_(u), v_(v) {}

  BiPoly parse() {
    BiPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  std::string_view s_;
  std::string u_, v_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  BiPoly constant(const Rational& c) const { return BiPoly::constant(u_, v_, c); }

  BiPoly expr() {
    BiPoly acc = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc = acc + term();
      } else if (peek('-')) {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }
  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '.';
  }
  BiPoly term() {
    BiPoly acc = unary();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc = acc * unary();
      } else if (peek('/')) {
        ++pos_;
        BiPoly d = unary();
        if (d.du() > 0 || d.dv() > 0 || d.is_zero()) fail("division only by a nonzero constant");
        acc = scale(acc, Rational(1 / d.coeff(0, 0)));
      } else if (starts_factor()) {
        acc = acc * power_expr();
      } else {
        return acc;
      }
    }
  }
  BiPoly unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power_expr();
  }
  BiPoly power_expr() {
    BiPoly base = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      base = power(base, static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }
  BiPoly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      BiPoly r = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      return constant(parse_rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      // Longest label match; "zm" reads as z*m.
      const std::string* best = nullptr;
      for (const std::string* cand : {&u_, &v_}) {
        if (s_.substr(pos_, cand->size()) == *cand && (!best || cand->size() > best->size())) best = cand;
      }
      if (!best) fail("unknown symbol at '" + std::string(s_.substr(pos_, 8)) + "'");
      pos_ += best->size();
      return best == &u_ ? BiPoly::u_var(u_, v_) : BiPoly::v_var(u_, v_);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace

BiPoly parse_bipoly(std::string_view text, const std::string& u_label, const std::string& v_label) {
  return BiPolyParser(text, u_label, v_label).parse();
}

}  // namespace rmcalc

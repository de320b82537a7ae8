#include "rmcalc/expr.hpp"

#include <cctype>
#include <map>

#include "rmcalc/errors.hpp"

namespace rmcalc {

namespace {

// Argument shapes: E expression, Q rational, T trailing list of w@x masses.
struct Signature {
  NodeKind kind;
  std::string_view name;
  std::string_view args;
};

constexpr Signature kSignatures[] = {
    {NodeKind::Identity, "identity", ""},
    {NodeKind::Atomic, "atomic", "T"},
    {NodeKind::Wigner, "wigner", ""},
    {NodeKind::Wishart, "wishart", "Q"},
    {NodeKind::Mobius, "mobius", "EQQQQ"},
    {NodeKind::Inv, "inv", "E"},
    {NodeKind::Scale, "scale", "EQ"},
    {NodeKind::Shift, "shift", "EQ"},
    {NodeKind::Square, "square", "E"},
    {NodeKind::BlockDiag, "blockdiag", "EEQ"},
    {NodeKind::Corner, "corner", "EQQ"},
    {NodeKind::AddAtomicWishart, "addwishart", "EQT"},
    {NodeKind::MulWishart, "mulwishart", "EQ"},
    {NodeKind::InfoPlusNoise, "infonoise", "EQQ"},
    {NodeKind::FreeAdd, "freeadd", "EE"},
    {NodeKind::FreeMul, "freemul", "EE"},
    {NodeKind::Compress, "compress", "EQ"},
    {NodeKind::WishartCov, "wishartcov", "EEQ"},
    {NodeKind::TransposeSwap, "transpose", "EQ"},
};

const Signature& signature(NodeKind k) {
  for (const auto& s : kSignatures)
    if (s.kind == k) return s;
  throw InvalidArgument("unknown node kind");
}

const std::map<std::string, NodeKind, std::less<>>& name_table() {
  static const std::map<std::string, NodeKind, std::less<>> table = [] {
    std::map<std::string, NodeKind, std::less<>> t;
    for (const auto& s : kSignatures) t.emplace(std::string(s.name), s.kind);
    t.emplace("identity_law", NodeKind::Identity);
    t.emplace("inverse", NodeKind::Inv);
    t.emplace("inverse_law", NodeKind::Inv);
    t.emplace("scale_law", NodeKind::Scale);
    t.emplace("shift_law", NodeKind::Shift);
    t.emplace("block_diag", NodeKind::BlockDiag);
    t.emplace("add_atomic_wishart", NodeKind::AddAtomicWishart);
    t.emplace("multiply_wishart", NodeKind::MulWishart);
    t.emplace("info_plus_noise", NodeKind::InfoPlusNoise);
    t.emplace("free_add", NodeKind::FreeAdd);
    t.emplace("free_mul", NodeKind::FreeMul);
    t.emplace("wishart_covariance", NodeKind::WishartCov);
    t.emplace("transpose_swap", NodeKind::TransposeSwap);
    return t;
  }();
  return table;
}

enum class Tok { Ident, Number, LParen, RParen, Comma, Plus, Star, Minus, Slash, At, End };

struct Token {
  Tok type;
  std::string text;
  int line, column;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    const int l0 = line, c0 = col;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), l0, c0});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      std::size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
          while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
          j = k;
        }
      }
      out.push_back({Tok::Number, std::string(s.substr(i, j - i)), l0, c0});
      advance(j - i);
      continue;
    }
    Tok t;
    switch (ch) {
      case '(': t = Tok::LParen; break;
      case ')': t = Tok::RParen; break;
      case ',': t = Tok::Comma; break;
      case '+': t = Tok::Plus; break;
      case '*': t = Tok::Star; break;
      case '-': t = Tok::Minus; break;
      case '/': t = Tok::Slash; break;
      case '@': t = Tok::At; break;
      default: throw ParseError(std::string("unexpected character '") + ch + "'", l0, c0);
    }
    out.push_back({t, std::string(1, ch), l0, c0});
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

std::string describe(const Token& t) { return t.type == Tok::End ? "end of input" : "'" + t.text + "'"; }

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    if (peek().type != Tok::End) fail("unexpected " + describe(peek()));
    return e;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }
  void expect(Tok t, const char* what) {
    if (peek().type != t) fail(std::string("expected ") + what + ", found " + describe(peek()));
    ++pos_;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (peek().type == Tok::Plus || peek().type == Tok::Star) {
      const Token op = take();
      ExprPtr rhs = term();
      auto node = std::make_shared<Expr>();
      node->kind = op.type == Tok::Plus ? NodeKind::FreeAdd : NodeKind::FreeMul;
      node->children = {lhs, rhs};
      node->line = op.line;
      node->column = op.column;
      lhs = node;
    }
    return lhs;
  }

  ExprPtr term() {
    if (peek().type == Tok::LParen) {
      ++pos_;
      ExprPtr e = expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (peek().type != Tok::Ident) fail("expected an expression, found " + describe(peek()));
    const Token id = take();
    const auto& table = name_table();
    auto it = table.find(id.text);
    if (it == table.end()) throw ParseError("unknown function '" + id.text + "'", id.line, id.column);
    const Signature& sig = signature(it->second);
    auto node = std::make_shared<Expr>();
    node->kind = sig.kind;
    node->line = id.line;
    node->column = id.column;

    if (sig.args.empty()) {
      if (peek().type == Tok::LParen) {
        ++pos_;
        if (peek().type != Tok::RParen) fail("'" + id.text + "' takes no arguments");
        ++pos_;
      }
      return node;
    }
    if (peek().type != Tok::LParen)
      throw ParseError("'" + id.text + "' needs arguments", peek().line, peek().column);
    ++pos_;
    for (std::size_t k = 0; k < sig.args.size(); ++k) {
      const char a = sig.args[k];
      if (a == 'T') {
        masses(*node);
        break;
      }
      if (k > 0) {
        if (peek().type == Tok::RParen)
          fail("'" + id.text + "' expects " + std::to_string(sig.args.size()) + " arguments, got " +
               std::to_string(k));
        expect(Tok::Comma, "','");
      }
      if (a == 'E')
        node->children.push_back(expr());
      else
        node->scalars.push_back(rational());
    }
    if (peek().type == Tok::Comma)
      fail("'" + id.text + "' expects " + std::to_string(sig.args.size()) + " arguments, got more");
    expect(Tok::RParen, "')'");
    return node;
  }

  // w@x, w@x, ... following any leading arguments.
  void masses(Expr& node) {
    if (!node.children.empty() || !node.scalars.empty()) expect(Tok::Comma, "','");
    for (;;) {
      AtomicSpec::Mass m;
      m.weight = rational();
      expect(Tok::At, "'@'");
      m.location = rational();
      node.atoms.masses.push_back(m);
      if (peek().type != Tok::Comma) break;
      ++pos_;
    }
  }

  Rational rational() {
    bool negative = false;
    while (peek().type == Tok::Minus || peek().type == Tok::Plus) negative ^= take().type == Tok::Minus;
    if (peek().type != Tok::Number) fail("expected a number, found " + describe(peek()));
    const Token num = take();
    Rational v;
    try {
      v = parse_rational(num.text);
      if (peek().type == Tok::Slash) {
        ++pos_;
        if (peek().type != Tok::Number) fail("expected a denominator, found " + describe(peek()));
        const Token den = peek();
        const Rational d = parse_rational(den.text);
        if (d == 0) fail("zero denominator");
        ++pos_;
        v /= d;
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), num.line, num.column);
    }
    return negative ? Rational(-v) : v;
  }
};

BiPoly child(const Expr& e, std::size_t i) { return evaluate(*e.children.at(i)); }

}  // namespace

std::string_view node_name(NodeKind k) { return signature(k).name; }

ExprPtr make_expr(NodeKind k, std::vector<ExprPtr> children, std::vector<Rational> scalars, AtomicSpec atoms) {
  const Signature& sig = signature(k);
  std::size_t ne = 0, nq = 0;
  bool t = false;
  for (char a : sig.args) {
    ne += a == 'E';
    nq += a == 'Q';
    t |= a == 'T';
  }
  if (children.size() != ne || scalars.size() != nq || (t && atoms.masses.empty()))
    throw InvalidArgument(std::string("make_expr: wrong arguments for ") + std::string(sig.name));
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->children = std::move(children);
  e->scalars = std::move(scalars);
  e->atoms = std::move(atoms);
  return e;
}

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string print_expr(const Expr& e) {
  const Signature& sig = signature(e.kind);
  if (sig.args.empty()) return std::string(sig.name);
  std::string out(sig.name);
  out += '(';
  std::size_t ci = 0, si = 0;
  bool first = true;
  for (char a : sig.args) {
    if (a == 'T') {
      for (const auto& m : e.atoms.masses) {
        if (!first) out += ", ";
        out += to_string(m.weight) + "@" + to_string(m.location);
        first = false;
      }
      continue;
    }
    if (!first) out += ", ";
    out += a == 'E' ? print_expr(*e.children.at(ci++)) : to_string(e.scalars.at(si++));
    first = false;
  }
  return out + ')';
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.scalars != b.scalars || a.children.size() != b.children.size()) return false;
  if (a.atoms.masses.size() != b.atoms.masses.size()) return false;
  for (std::size_t i = 0; i < a.atoms.masses.size(); ++i)
    if (a.atoms.masses[i].weight != b.atoms.masses[i].weight ||
        a.atoms.masses[i].location != b.atoms.masses[i].location)
      return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!structurally_equal(*a.children[i], *b.children[i])) return false;
  return true;
}

BiPoly evaluate(const Expr& e) {
  const auto& q = e.scalars;
  switch (e.kind) {
    case NodeKind::Identity: return identity_law();
    case NodeKind::Atomic: return atomic(e.atoms);
    case NodeKind::Wigner: return wigner();
    case NodeKind::Wishart: return wishart(q.at(0));
    case NodeKind::Mobius: return mobius(child(e, 0), MobiusParams{q.at(0), q.at(1), q.at(2), q.at(3)});
    case NodeKind::Inv: return inverse_law(child(e, 0));
    case NodeKind::Scale: return scale_law(child(e, 0), q.at(0));
    case NodeKind::Shift: return shift_law(child(e, 0), q.at(0));
    case NodeKind::Square: return square(child(e, 0));
    case NodeKind::BlockDiag: return block_diag(child(e, 0), child(e, 1), q.at(0));
    case NodeKind::Corner: return corner(child(e, 0), q.at(0), q.at(1));
    case NodeKind::AddAtomicWishart: return add_atomic_wishart(child(e, 0), q.at(0), e.atoms);
    case NodeKind::MulWishart: return multiply_wishart(child(e, 0), q.at(0));
    case NodeKind::InfoPlusNoise: return info_plus_noise(child(e, 0), q.at(0), q.at(1));
    case NodeKind::FreeAdd: return free_add(child(e, 0), child(e, 1));
    case NodeKind::FreeMul: return free_mul(child(e, 0), child(e, 1));
    case NodeKind::Compress: return compress(child(e, 0), q.at(0));
    case NodeKind::WishartCov: return wishart_covariance(child(e, 0), child(e, 1), q.at(0));
    case NodeKind::TransposeSwap: return transpose_swap(child(e, 0), q.at(0));
  }
  throw InvalidArgument("evaluate: unknown node kind");
}

}  // namespace rmcalc

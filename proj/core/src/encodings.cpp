#include "rmcalc/encodings.hpp"

#include "rmcalc/errors.hpp"

namespace rmcalc {

namespace {

struct Vars {
  BiPoly one, u, v;
};

Vars vars_for(Kind k) {
  auto [u, v] = kind_labels(k);
  return {BiPoly::constant(u, v, Rational(1)), BiPoly::u_var(u, v), BiPoly::v_var(u, v)};
}

void require_labels(const BiPoly& l, Kind k) {
  auto [u, v] = kind_labels(k);
  if (l.u_label() != u || l.v_label() != v)
    throw InvalidArgument("polynomial labels (" + l.u_label() + "," + l.v_label() + ") do not match kind " +
                          kind_name(k));
}

}  // namespace

static BiPoly to_mz_raw(const BiPoly& l, Kind source);

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::mz: return "mz";
    case Kind::gz: return "gz";
    case Kind::rg: return "rg";
    case Kind::sy: return "sy";
    case Kind::muz: return "muz";
    case Kind::etaz: return "etaz";
  }
  return "?";
}

Kind parse_kind(std::string_view name) {
  for (Kind k : kAllKinds)
    if (kind_name(k) == name) return k;
  throw InvalidArgument("unknown encoding kind '" + std::string(name) + "'");
}

std::pair<std::string, std::string> kind_labels(Kind k) {
  switch (k) {
    case Kind::mz: return {"m", "z"};
    case Kind::gz: return {"g", "z"};
    case Kind::rg: return {"r", "g"};
    case Kind::sy: return {"s", "y"};
    case Kind::muz: return {"mu", "z"};
    case Kind::etaz: return {"eta", "z"};
  }
  return {"u", "v"};
}

EncodedDistribution make_encoded(Kind kind, const BiPoly& poly) {
  require_labels(poly, kind);
  return {kind, canonicalize(poly)};
}

BiPoly from_mz(const BiPoly& lmz, Kind target) {
  require_labels(lmz, Kind::mz);
  const Vars t = vars_for(target);
  const BiPoly& U = t.u;
  const BiPoly& V = t.v;
  switch (target) {
    case Kind::mz: return canonicalize(lmz);
    // m = -g
    case Kind::gz: return substitute_rational(lmz, -U, t.one, V, t.one);
    // m = -g, z = r + 1/g
    case Kind::rg: return substitute_rational(lmz, -V, t.one, U * V + t.one, V);
    // m = -y s, z = (y + 1)/(s y)
    case Kind::sy: return substitute_rational(lmz, -(U * V), t.one, V + t.one, U * V);
    // m = -z mu, z = 1/z
    case Kind::muz: return substitute_rational(lmz, -(U * V), t.one, t.one, V);
    // m = z eta, z = -1/z
    case Kind::etaz: return substitute_rational(lmz, U * V, t.one, -t.one, V);
  }
  throw InvalidArgument("unknown encoding kind");
}

BiPoly to_mz(const BiPoly& l, Kind source) {
  require_labels(l, source);
  return remove_u_content(to_mz_raw(l, source));
}

BiPoly to_mz_raw(const BiPoly& l, Kind source) {
  const Vars t = vars_for(Kind::mz);
  const BiPoly& m = t.u;
  const BiPoly& z = t.v;
  switch (source) {
    case Kind::mz: return canonicalize(l);
    // g = -m
    case Kind::gz: return substitute_rational(l, -m, t.one, z, t.one);
    // r = (z m + 1)/m, g = -m
    case Kind::rg: return substitute_rational(l, z * m + t.one, m, -m, t.one);
    // s = m/(z m + 1), y = -z m - 1
    case Kind::sy: return substitute_rational(l, m, z * m + t.one, -(z * m) - t.one, t.one);
    // mu(1/z) = -z m
    case Kind::muz: return substitute_rational(l, -(z * m), t.one, t.one, z);
    // eta(-1/z) = -z m
    case Kind::etaz: return substitute_rational(l, -(z * m), t.one, -t.one, z);
  }
  throw InvalidArgument("unknown encoding kind");
}

BiPoly convert(const BiPoly& l, Kind source, Kind target) {
  if (source == target) {
    require_labels(l, source);
    return canonicalize(l);
  }
  const BiPoly hub = source == Kind::mz ? canonicalize(l) : to_mz(l, source);
  return target == Kind::mz ? hub : from_mz(hub, target);
}

EncodedDistribution convert(const EncodedDistribution& d, Kind target) {
  return {target, convert(d.poly, d.kind, target)};
}

}  // namespace rmcalc

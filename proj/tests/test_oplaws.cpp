#include <doctest.h>

#include "rmcalc/density.hpp"
#include "rmcalc/encodings.hpp"
#include "rmcalc/oplaws.hpp"
#include "support.hpp"

using namespace rmcalc;
using rmcalc::test::mz;
using rmcalc::test::q;

namespace {

const BiPoly kApB = mz("m^3+(z+2)*m^2-(-2*z+1)*m+2");
const BiPoly kAtB = mz("m^4*z^2-2*m^3*z+m^2+4*m*z+4");

AtomicSpec masses(std::initializer_list<std::pair<Rational, Rational>> wl) {
  AtomicSpec t;
  for (auto [w, l] : wl) t.masses.push_back({w, l});
  return t;
}

BiPoly half_half() { return atomic(masses({{q(1, 2), q(0)}, {q(1, 2), q(1)}})); }

// The paper's chain polynomials with c1, c2 substituted textually.
std::string subst(std::string s, const std::string& c1, const std::string& c2) {
  for (std::size_t p; (p = s.find("c1")) != std::string::npos;) s.replace(p, 2, "(" + c1 + ")");
  for (std::size_t p; (p = s.find("c2")) != std::string::npos;) s.replace(p, 2, "(" + c2 + ")");
  return s;
}

const char* kJacobiEqs[] = {
    "(1-z)*m-1",
    "z*c1*m^2-(-c1-z+1)*m+1",
    "z^2*c1*m^2+(c1*z+z-1)*m+1",
    "(c1*z^2+c2*z)*m^2+(c1*z+z-1+c2)*m+1",
    "((z-1)^2*c1+c2*(z-1))*m^2+(c1*(z-1)+z-2+c2)*m+1",
    "(c1*z+z^3*c1-2*c1*z^2-c2*z^3+c2*z^2)*m^2"
    "+(-1+2*z+c1-3*c1*z+2*c1*z^2+c2*z-2*c2*z^2)*m-c2*z-c1+2+c1*z",
};

std::vector<BiPoly> jacobi_chain(const Rational& c1, const Rational& c2) {
  std::vector<BiPoly> out{identity_law()};
  out.push_back(multiply_wishart(out.back(), c1));
  out.push_back(inverse_law(out.back()));
  out.push_back(multiply_wishart(out.back(), c2));
  out.push_back(shift_law(out.back(), 1));
  out.push_back(inverse_law(out.back()));
  return out;
}

double mass_of(const BiPoly& L) { return density_grid(L, 1000).total_mass; }

}  // namespace

TEST_CASE("generators") {
  CHECK(atomic(masses({{q(1), q(1)}})) == canonicalize(mz("(1-z)*m-1")));
  CHECK(equivalent(half_half(), mz("m*(2*z^2-2*z)-(1-2*z)")));
  CHECK(wigner() == mz("m^2+z*m+1"));
  CHECK(equivalent(wishart(q(1, 2)), mz("(1/2)*z*m^2-(1/2-z)*m+1")));
  CHECK_THROWS_AS(atomic(masses({{q(1, 2), q(0)}})), InvalidArgument);
  CHECK_THROWS_AS(atomic(masses({{q(1, 2), q(0)}, {q(1, 2), q(0)}})), InvalidArgument);
  CHECK_THROWS_AS(wishart(0), InvalidArgument);
}

TEST_CASE("introduction identities") {
  const BiPoly W = wigner();
  CHECK(equivalent(add_atomic_wishart(W, 2, masses({{q(1), q(1, 2)}})), kApB));
  CHECK(equivalent(free_add(W, wishart(q(1, 2))), kApB));
  CHECK(equivalent(multiply_wishart(W, q(1, 2)), kAtB));
  CHECK(equivalent(free_mul(W, wishart(q(1, 2))), kAtB));
}

TEST_CASE("Jacobi chain matches the printed polynomials") {
  for (auto [c1, c2] : {std::pair{q(1, 10), q(5, 8)}, std::pair{q(1, 3), q(2)}, std::pair{q(1, 2), q(1, 2)}}) {
    const auto chain = jacobi_chain(c1, c2);
    for (std::size_t i = 0; i < chain.size(); ++i) {
      INFO("A" << i + 1 << " c1=" << c1 << " c2=" << c2);
      CHECK(equivalent(chain[i], mz(subst(kJacobiEqs[i], to_string(c1), to_string(c2)))));
    }
  }
}

TEST_CASE("mobius") {
  const BiPoly L = mz("z*m^2+(2*z-1)*m+2");
  CHECK(mobius(L, {}) == L);
  CHECK(equivalent(inverse_law(inverse_law(L)), L));
  // (p z + q) / (r z + s) composed with itself.
  const MobiusParams a{q(2), q(1), q(1), q(3)}, b{q(1), q(-1), q(2), q(1)};
  const MobiusParams ba{b.p * a.p + b.q * a.r, b.p * a.q + b.q * a.s, b.r * a.p + b.s * a.r, b.r * a.q + b.s * a.s};
  CHECK(equivalent(mobius(mobius(L, a), b), mobius(L, ba)));
  CHECK_THROWS_AS(mobius(L, {q(1), q(1), q(1), q(1)}), InvalidArgument);
  CHECK(equivalent(scale_law(wigner(), 2), mz("4*m^2+z*m+1")));
  CHECK(equivalent(shift_law(atomic(masses({{q(1), q(0)}})), 3), atomic(masses({{q(1), q(3)}}))));
}

TEST_CASE("transpose_swap") {
  const BiPoly L = wishart(q(1, 3));
  CHECK(equivalent(transpose_swap(L, 1), L));
  CHECK(equivalent(transpose_swap(atomic(masses({{q(1), q(1)}})), q(1, 2)), half_half()));
  const auto a = atom_weights(transpose_swap(wishart(q(1, 2)), q(1, 2)));
  REQUIRE(a.size() == 1);
  CHECK(a[0].location == doctest::Approx(0).epsilon(1e-9));
  CHECK(a[0].weight == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(atom_weights(transpose_swap(wishart(2), 2)).empty());
}

TEST_CASE("square") {
  CHECK(equivalent(square(wigner()), mz("z*m^2+z*m+1")));
  CHECK(equivalent(square(atomic(masses({{q(1), q(1)}}))), atomic(masses({{q(1), q(1)}}))));
  CHECK(equivalent(square(atomic(masses({{q(1, 2), q(-1)}, {q(1, 2), q(1)}}))), atomic(masses({{q(1), q(1)}}))));
  const BiPoly s = free_add(wigner(), atomic(masses({{q(1, 2), q(-1)}, {q(1, 2), q(1)}})));
  CHECK(equivalent(square(s), square(scale_law(s, -1))));
  CHECK(equivalent(square(shift_law(wigner(), 0)), square(wigner())));
}

TEST_CASE("block_diag") {
  const BiPoly a0 = atomic(masses({{q(1), q(0)}})), a1 = atomic(masses({{q(1), q(1)}}));
  CHECK(equivalent(block_diag(a0, a1, q(1, 2)), half_half()));
  CHECK(equivalent(block_diag(wigner(), wigner(), q(1, 3)), wigner()));
  const BiPoly mix = block_diag(wigner(), wishart(2), q(1, 2));
  CHECK(mix.du() == 4);
  CHECK(std::abs(mass_of(mix) - 1) <= 1e-3);
  CHECK_THROWS_AS(block_diag(a0, a1, 1), InvalidArgument);
}

TEST_CASE("corner") {
  CHECK(equivalent(corner(half_half(), 2, 0), atomic(masses({{q(1), q(1)}}))));
  CHECK(equivalent(corner(wigner(), 1, 5), wigner()));
  const BiPoly big = block_diag(wishart(q(1, 2)), atomic(masses({{q(1), q(3)}})), q(2, 3));
  CHECK(equivalent(corner(big, q(3, 2), 3), wishart(q(1, 2))));
  CHECK_THROWS_AS(corner(wigner(), q(1, 2), 0), InvalidArgument);
}

TEST_CASE("add_atomic_wishart") {
  const BiPoly W = wigner();
  CHECK(equivalent(add_atomic_wishart(W, 3, masses({{q(1), q(0)}})), W));
  for (const Rational c : {q(1, 2), q(1), q(3)}) {
    const BiPoly zero = mz("z*m+1");
    const BiPoly expect = mz("z*m^2+(z+1-(" + to_string(c) + "))*m+1");
    CHECK(equivalent(add_atomic_wishart(zero, c, masses({{q(1), q(1)}})), expect));
  }
  const BiPoly there = add_atomic_wishart(W, 1, masses({{q(1), q(1)}}));
  CHECK_FALSE(equivalent(add_atomic_wishart(there, 1, masses({{q(1), q(-1)}})), W));
}

TEST_CASE("multiply_wishart") {
  for (const Rational c : {q(1, 10), q(1, 2), q(2)})
    CHECK(equivalent(multiply_wishart(identity_law(), c), wishart(c)));
  const BiPoly eq3 = mz(subst(kJacobiEqs[2], "1/10", "5/8"));
  CHECK(equivalent(multiply_wishart(eq3, q(5, 8)), mz(subst(kJacobiEqs[3], "1/10", "5/8"))));
}

TEST_CASE("info_plus_noise") {
  const BiPoly L = half_half();
  CHECK(equivalent(info_plus_noise(L, q(1, 2), 0), L));
  // Pure noise: (sqrt(s) G)(sqrt(s) G)' is s times the Wishart law.
  for (const Rational s : {q(1), q(3)})
    CHECK(equivalent(info_plus_noise(mz("z*m+1"), q(1, 2), s), scale_law(wishart(q(1, 2)), s)));
  const BiPoly ipn = info_plus_noise(identity_law(), 1, 1);
  CHECK(std::abs(mass_of(ipn) - 1) <= 1e-3);
  CHECK_THROWS_AS(info_plus_noise(L, 1, -1), InvalidArgument);
}

TEST_CASE("free convolutions") {
  const BiPoly W = wigner();
  CHECK(equivalent(free_add(W, W), mz("2*m^2+z*m+1")));
  CHECK(equivalent(free_add(wishart(2), atomic(masses({{q(1), q(0)}}))), wishart(2)));
  CHECK(equivalent(free_mul(half_half(), atomic(masses({{q(1), q(1)}}))), half_half()));
  CHECK(equivalent(free_mul(wishart(q(1, 2)), atomic(masses({{q(1), q(2)}}))), scale_law(wishart(q(1, 2)), 2)));
  CHECK(equivalent(free_add(free_add(W, wishart(2)), half_half()), free_add(W, free_add(wishart(2), half_half()))));
  CHECK(equivalent(free_mul(free_mul(wishart(q(1, 2)), wishart(2)), half_half()),
                   free_mul(wishart(q(1, 2)), free_mul(wishart(2), half_half()))));
}

TEST_CASE("compress") {
  for (const Rational c : {q(2, 5), q(1, 3), q(3, 4)}) {
    const std::string cs = "(" + to_string(c) + ")";
    const BiPoly expect =
        mz("(-2*" + cs + "*z^2+2*" + cs + "*z)*m^2-(-2*" + cs + "+4*" + cs + "*z+1-2*z)*m-2*" + cs + "+2");
    CHECK(equivalent(compress(half_half(), c), expect));
    CHECK(equivalent(compress(wigner(), c), mz(cs + "*m^2+z*m+1")));
  }
  CHECK(equivalent(compress(wishart(q(1, 2)), 1), wishart(q(1, 2))));
  CHECK(equivalent(compress(compress(wishart(2), q(1, 2)), q(2, 3)), compress(wishart(2), q(1, 3))));
  CHECK_THROWS_AS(compress(wigner(), 2), InvalidArgument);
}

TEST_CASE("wishart_covariance") {
  const BiPoly I = identity_law();
  CHECK(equivalent(wishart_covariance(half_half(), I, q(1, 2)), multiply_wishart(half_half(), q(1, 2))));
  CHECK(equivalent(wishart_covariance(I, I, q(1, 3)), wishart(q(1, 3))));
  const BiPoly a = atomic(masses({{q(1, 2), q(1)}, {q(1, 2), q(2)}}));
  const BiPoly b = atomic(masses({{q(1, 2), q(1)}, {q(1, 2), q(3)}}));
  CHECK(std::abs(mass_of(wishart_covariance(a, b, q(1, 2))) - 1) <= 1e-3);
}

TEST_CASE("every law returns canonical polynomials with unit mass") {
  const BiPoly W = wigner(), A = half_half();
  const std::vector<BiPoly> outs = {
      inverse_law(wishart(q(1, 2))),         scale_law(W, 3),
      shift_law(A, -1),                      transpose_swap(wishart(q(1, 2)), q(1, 2)),
      square(W),                             block_diag(W, A, q(1, 3)),
      corner(A, 2, 0),                       add_atomic_wishart(A, q(1, 2), masses({{q(1, 2), q(1)}, {q(1, 2), q(2)}})),
      multiply_wishart(A, q(1, 2)),          info_plus_noise(A, q(1, 2), 1),
      free_add(W, A),                        free_mul(wishart(q(1, 2)), A),
      compress(A, q(2, 5)),                  wishart_covariance(A, identity_law(), q(1, 2)),
  };
  for (const auto& L : outs) {
    INFO(to_string(L));
    CHECK(is_canonical(L));
    CHECK(std::abs(mass_of(L) - 1) <= 1e-3);
  }
}

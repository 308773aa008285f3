#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "balltrace/symbol.hpp"
#include "oracles.hpp"

using namespace balltrace;

namespace {

PolySymbol P(const char* s, int d = 2) { return parse_symbol(s, d); }

PolySymbol sum_sq(int d) {
  PolySymbol s(d);
  for (int j = 1; j <= d; ++j) s = s + PolySymbol::z(d, j) * PolySymbol::zbar(d, j);
  return s;
}

}  // namespace

TEST_CASE("parser basics") {
  CHECK(P("z1") == PolySymbol::z(2, 1));
  CHECK(P("conj(z1)*z1 + 2") == PolySymbol::z(2, 1) * PolySymbol::zbar(2, 1) + PolySymbol::constant(2, 2));
  const auto z1 = PolySymbol::z(2, 1), z2 = PolySymbol::z(2, 2);
  CHECK(P("(z1+z2)^2") == z1 * z1 + PolySymbol::constant(2, 2) * z1 * z2 + z2 * z2);
  CHECK(P("  z1 *  z2 ") == z1 * z2);
  CHECK(P("1+2i") == PolySymbol::constant(2, Coefficient(ExactComplex(1, 2))));
  CHECK(P("0.5*z1") == z1.scaled(Coefficient(ExactComplex(Rational(1, 2)))));
  CHECK(P("z1^0") == PolySymbol::constant(2, 1));
  CHECK(P("-z1 - -z2") == z2 - z1);
  CHECK(P("conj((1+i)*z1)") == PolySymbol::zbar(2, 1).scaled(Coefficient(ExactComplex(1, -1))));
}

TEST_CASE("parser extras") {
  CHECK(P("z", 1) == PolySymbol::z(1, 1));
  CHECK(P("z1/2") == PolySymbol::z(2, 1).scaled(Coefficient(ExactComplex(Rational(1, 2)))));
  CHECK(P("sqrt(4)*z1") == P("2*z1"));
  CHECK(P("sqrt(2)").terms().begin()->second.value().real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-16));
  CHECK_FALSE(P("sqrt(2)").is_exact());
  CHECK(P("x1") == P("(z1+conj(z1))/2"));
  CHECK(P("y1") == P("-i/2*(z1-conj(z1))"));
  CHECK(P("1e-3") == PolySymbol::constant(2, Coefficient(ExactComplex(Rational(1, 1000)))));
}

TEST_CASE("parser errors carry byte offsets") {
  auto offset_of = [](const char* s, int d) -> std::size_t {
    try {
      parse_symbol(s, d);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return static_cast<std::size_t>(-1);
  };
  CHECK(offset_of("z1 + z3", 2) == 5);
  CHECK(offset_of("z1 +", 2) == 4);
  CHECK(offset_of("(z1", 2) == 3);
  CHECK(offset_of("z1 $ z2", 2) == 3);
  CHECK_THROWS_AS(parse_symbol("z1^-1", 2), ParseError);
  CHECK_THROWS_AS(parse_symbol("1/z1", 2), ParseError);
  CHECK_THROWS_AS(parse_symbol("1/0", 2), ParseError);
}

TEST_CASE("pair lists") {
  const auto pairs = parse_pairs("conj(z1),z1;conj(z2),z2", 2);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[1].first == PolySymbol::zbar(2, 2));
  CHECK(pairs[1].second == PolySymbol::z(2, 2));
  CHECK(parse_symbol_list("z,conj(z)", 1).size() == 2);
  CHECK_THROWS_AS(parse_pairs("z1;z2", 2), ParseError);
}

TEST_CASE("conj is an involution and swaps exponents") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto f = oracle::random_poly(2, 4, 5, rng);
    const auto g = f.conj();
    CHECK(g.conj() == f);
    for (const auto& [k, c] : f.terms()) {
      const auto it = g.terms().find({k.second, k.first});
      REQUIRE(it != g.terms().end());
      CHECK(it->second.value() == std::conj(c.value()));
    }
  }
}

TEST_CASE("no zero coefficients are stored") {
  const auto f = P("z1 + z2 - z1");
  CHECK(f.size() == 1);
  CHECK((P("z1") - P("z1")).is_zero());
}

TEST_CASE("to_string round-trips exact symbols") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto f = oracle::random_poly(3, 4, 6, rng);
    CHECK(parse_symbol(f.to_string(), 3) == f);
  }
}

TEST_CASE("derivative examples") {
  CHECK(radial(P("z1^2")) == P("2*z1^2"));
  CHECK(d_anti(0, P("z1")).is_zero());
  CHECK(radial_bar(P("z1*conj(z1)")) == P("z1*conj(z1)"));
  CHECK(d_holo(1, P("z1*z2^3")) == P("3*z1*z2^2"));
}

TEST_CASE("boundary CR examples") {
  CHECK(boundary_cr(0, P("z1")) == P("1 - conj(z1)*z1"));
  CHECK(boundary_cr(0, P("z2")) == P("-conj(z1)*z2"));
  CHECK(boundary_cr_bar(0, P("z1")).is_zero());
}

TEST_CASE("poisson examples") {
  std::mt19937_64 rng(5);
  const auto f = oracle::random_poly(2, 3, 4, rng);
  CHECK(poisson(f, f).is_zero());
  CHECK(poisson(P("z1"), P("conj(z1)")) == P("1"));
  CHECK(poisson(P("z1"), P("z2")).is_zero());
}

TEST_CASE("boundary poisson examples") {
  CHECK(reduce_on_sphere(boundary_poisson(P("z1"), P("conj(z1)"))) == reduce_on_sphere(P("1 - z1*conj(z1)")));
  CHECK(reduce_on_sphere(boundary_poisson(P("conj(z1)"), P("z1"))) == reduce_on_sphere(P("-(1 - z1*conj(z1))")));
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const auto f = oracle::random_poly(2, 3, 4, rng), g = oracle::random_poly(2, 3, 4, rng);
    CHECK(boundary_poisson(f, g) == -boundary_poisson(g, f));
  }
}

TEST_CASE("reduce_on_sphere examples") {
  CHECK(reduce_on_sphere(P("z1*conj(z1) + z2*conj(z2)")) == P("1"));
  CHECK(reduce_on_sphere(P("z1")) == P("z1"));
  const auto r2 = sum_sq(2);
  CHECK(reduce_on_sphere(r2 * r2 - P("1")).is_zero());
  const auto r3 = sum_sq(3);
  CHECK(reduce_on_sphere(r3 * r3 * r3 - PolySymbol::constant(3, 1)).is_zero());
}

TEST_CASE("reduce_on_sphere is idempotent and canonical") {
  std::mt19937_64 rng(13);
  const auto r = sum_sq(3);
  for (int i = 0; i < 30; ++i) {
    const auto f = oracle::random_poly(3, 4, 5, rng), g = oracle::random_poly(3, 2, 3, rng);
    const auto rf = reduce_on_sphere(f);
    CHECK(reduce_on_sphere(rf) == rf);
    // f and f + (|z|^2 - 1) g agree on S
    CHECK(reduce_on_sphere(f + (r - PolySymbol::constant(3, 1)) * g) == rf);
    for (const auto& [k, c] : rf.terms()) CHECK_FALSE((k.first[2] > 0 && k.second[2] > 0));
  }
}

TEST_CASE("hankel_density examples") {
  CHECK(hankel_density(P("z1")) == P("1 - z1*conj(z1)"));
  CHECK(hankel_density(P("3+2i")).is_zero());
  CHECK(hankel_density(P("z1+z2")) == P("2 - (z1+z2)*conj(z1+z2)"));
  CHECK_THROWS_AS(hankel_density(P("conj(z1)")), domain_error);
}

TEST_CASE("first-order operators are derivations") {
  std::mt19937_64 rng(17);
  const int d = 3;
  for (int i = 0; i < 100; ++i) {
    const auto f = oracle::random_poly(d, 3, 4, rng), g = oracle::random_poly(d, 3, 4, rng);
    const auto fg = f * g;
    const int j = i % d;
    CHECK(d_holo(j, fg) == d_holo(j, f) * g + f * d_holo(j, g));
    CHECK(d_anti(j, fg) == d_anti(j, f) * g + f * d_anti(j, g));
    CHECK(radial(fg) == radial(f) * g + f * radial(g));
    CHECK(radial_bar(fg) == radial_bar(f) * g + f * radial_bar(g));
    CHECK(boundary_cr(j, fg) == boundary_cr(j, f) * g + f * boundary_cr(j, g));
    CHECK(boundary_cr_bar(j, fg) == boundary_cr_bar(j, f) * g + f * boundary_cr_bar(j, g));
  }
}

TEST_CASE("tangential CR fields are linearly dependent on the sphere") {
  std::mt19937_64 rng(19);
  const int d = 3;
  const auto one = PolySymbol::constant(d, 1);
  for (int i = 0; i < 30; ++i) {
    const auto f = oracle::random_poly(d, 4, 5, rng);
    PolySymbol s(d);
    for (int j = 0; j < d; ++j) s = s + PolySymbol::z(d, j + 1) * boundary_cr(j, f);
    CHECK(s == (one - sum_sq(d)) * radial(f));
    CHECK(reduce_on_sphere(s).is_zero());
  }
}

TEST_CASE("conjugating the bracket reverses and conjugates its arguments") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 30; ++i) {
    const auto f = oracle::random_poly(2, 3, 4, rng), g = oracle::random_poly(2, 3, 4, rng);
    CHECK(boundary_poisson(f, g).conj() == boundary_poisson(g.conj(), f.conj()));
  }
}

TEST_CASE("reduced bracket agrees pointwise on the sphere") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 10; ++i) {
    const auto f = oracle::random_poly(3, 3, 4, rng), g = oracle::random_poly(3, 3, 4, rng);
    const auto b = boundary_poisson(f, g);
    const auto rb = reduce_on_sphere(b);
    for (int k = 0; k < 50; ++k) {
      const auto z = oracle::sphere_point(3, rng);
      const auto x = b.evaluate(z), y = rb.evaluate(z);
      CHECK(std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(x)));
    }
  }
}

TEST_CASE("hankel density is the bracket of f with its conjugate on the sphere") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 30; ++i) {
    const auto f = oracle::random_holomorphic(2 + i % 2, 3, 3, rng);
    CHECK(reduce_on_sphere(hankel_density(f)) == reduce_on_sphere(boundary_poisson(f, f.conj())));
    CHECK(reduce_on_sphere(hankel_density(f)) == -reduce_on_sphere(boundary_poisson(f.conj(), f)));
  }
}

TEST_CASE("inexact coefficients propagate") {
  const auto f = P("sqrt(2)*z1") * P("z1");
  CHECK_FALSE(f.is_exact());
  CHECK(f.terms().begin()->second.value().real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(max_coefficient_difference(f, P("1.4142135623730951*z1^2")) < 1e-15);
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS(P("z1", 2) + P("z1", 3));
}

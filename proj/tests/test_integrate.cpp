#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "balltrace/integrate.hpp"
#include "oracles.hpp"

using namespace balltrace;

namespace {

PolySymbol P(const char* s, int d = 2) { return parse_symbol(s, d); }

ExactComplex exact(const IntegralValue& v) {
  REQUIRE(v.exact.has_value());
  return *v.exact;
}

ExactComplex q(long long p, long long r = 1) { return ExactComplex(Rational(p, r)); }

}  // namespace

TEST_CASE("sphere monomials against Monte Carlo") {
  CHECK(exact(sphere_monomial(MultiIndex{0, 0}, MultiIndex{0, 0})) == q(1));
  CHECK(exact(sphere_monomial(MultiIndex{1, 0}, MultiIndex{1, 0})) == q(1, 2));
  CHECK(exact(sphere_monomial(MultiIndex{1, 1}, MultiIndex{1, 1})) == q(1, 6));
  CHECK(exact(sphere_monomial(MultiIndex{1, 0}, MultiIndex{0, 1})) == q(0));

  const std::uint64_t n = 10'000'000;
  const double m10 = oracle::sphere_mean(2, n, 1, [](const oracle::Point& z) { return std::norm(z[0]); });
  const double m11 = oracle::sphere_mean(2, n, 2, [](const oracle::Point& z) { return std::norm(z[0]) * std::norm(z[1]); });
  CHECK(std::abs(m10 - 0.5) < 1e-3);
  CHECK(std::abs(m11 - 1.0 / 6.0) < 1e-3);
}

TEST_CASE("sphere monomials for a few more exponents") {
  std::mt19937_64 rng(3);
  const std::vector<MultiIndex> as{{2, 0, 0}, {1, 1, 1}, {3, 1, 0}};
  for (std::size_t i = 0; i < as.size(); ++i) {
    const auto& a = as[i];
    const double mc = oracle::sphere_mean(3, 2'000'000, 10 + i, [&](const oracle::Point& z) {
      double v = 1;
      for (int j = 0; j < 3; ++j) v *= std::pow(std::norm(z[static_cast<std::size_t>(j)]), a[j]);
      return v;
    });
    CHECK(std::abs(mc - sphere_monomial(a, a).approx.real()) < 2e-3);
  }
}

TEST_CASE("sphere_integral examples") {
  CHECK(exact(sphere_integral(P("(1 - z1*conj(z1))^2"))) == q(1, 3));
  const auto b1 = boundary_poisson(P("z1"), P("conj(z1)")), b2 = boundary_poisson(P("z2"), P("conj(z2)"));
  CHECK(exact(sphere_integral(b1 * b2)) == q(1, 6));
  CHECK(exact(sphere_integral(P("z1"))) == q(0));
  const auto v = sphere_integral(P("sqrt(2)*z1*conj(z1)"));
  CHECK_FALSE(v.exact.has_value());
  CHECK(v.approx.real() == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));
}

TEST_CASE("sphere_integral is unchanged by reduction on the sphere") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const int d = 1 + i % 3;
    const auto f = oracle::random_poly(d, 5, 6, rng);
    CHECK(exact(sphere_integral(reduce_on_sphere(f))) == exact(sphere_integral(f)));
  }
}

TEST_CASE("sphere_integral is invariant under coordinate permutations and phase rotations") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 30; ++i) {
    const auto f = oracle::random_poly(3, 5, 6, rng);
    const auto base = exact(sphere_integral(f));
    // cyclic permutation z1 -> z2 -> z3 -> z1, and a transposition
    for (const std::vector<int>& perm : {std::vector<int>{1, 2, 0}, std::vector<int>{1, 0, 2}}) {
      PolySymbol g(3);
      for (const auto& [k, c] : f.terms()) {
        MultiIndex a(3), b(3);
        for (int j = 0; j < 3; ++j) {
          a.set(perm[static_cast<std::size_t>(j)], k.first[j]);
          b.set(perm[static_cast<std::size_t>(j)], k.second[j]);
        }
        g.add_term(a, b, c);
      }
      CHECK(exact(sphere_integral(g)) == base);
    }
    // z_j -> i z_j multiplies z^a zbar^b by i^(a_j - b_j): a unimodular exact phase
    for (int j = 0; j < 3; ++j) {
      PolySymbol g(3);
      for (const auto& [k, c] : f.terms()) {
        const int e = ((k.first[j] - k.second[j]) % 4 + 4) % 4;
        const ExactComplex phase[4] = {q(1), ExactComplex(0, 1), q(-1), ExactComplex(0, -1)};
        g.add_term(k.first, k.second, Coefficient(c.exact() * phase[e]));
      }
      CHECK(exact(sphere_integral(g)) == base);
    }
  }
}

TEST_CASE("ball monomial examples") {
  CHECK(exact(ball_monomial(MultiIndex{0}, MultiIndex{0}, 2.0)) == q(1));
  CHECK(exact(ball_monomial(MultiIndex{1}, MultiIndex{1}, 2.0)) == q(1, 2));
  CHECK(exact(ball_monomial(MultiIndex{1, 0}, MultiIndex{1, 0}, 3.0)) == q(1, 3));
  CHECK(exact(ball_monomial(MultiIndex{1, 0}, MultiIndex{0, 1}, 3.0)) == q(0));
  CHECK_THROWS_AS(ball_monomial(MultiIndex{1, 0}, MultiIndex{1, 0}, 2.0), domain_error);
  CHECK_THROWS_AS(ball_integral(P("z1"), 1.5), domain_error);
}

TEST_CASE("normalized Lebesgue ball monomials against Monte Carlo") {
  std::mt19937_64 rng(11);
  const std::vector<MultiIndex> as{{1, 0}, {1, 1}, {2, 0}};
  for (const auto& a : as) {
    double s = 0;
    const int n = 2'000'000;
    for (int i = 0; i < n; ++i) {
      const auto z = oracle::ball_point(2, rng);
      s += std::pow(std::norm(z[0]), a[0]) * std::pow(std::norm(z[1]), a[1]);
    }
    CHECK(std::abs(s / n - ball_monomial(a, a, 3.0).approx.real()) < 1e-3);
  }
}

TEST_CASE("ball monomials tend to sphere monomials as nu decreases to d") {
  const std::vector<MultiIndex> as{{1, 0}, {1, 1}, {2, 1}, {0, 3}};
  for (const auto& a : as) {
    const double target = sphere_monomial(a, a).approx.real();
    double prev = -1;
    for (int k = 1; k <= 6; ++k) {
      const double nu = a.dim() + std::pow(10.0, -k);
      const double v = ball_monomial(a, a, nu).approx.real();
      const double err = std::abs(v - target);
      CHECK(err < std::pow(10.0, -k + 1));
      if (prev >= 0) CHECK(err < prev);
      prev = err;
    }
  }
}

TEST_CASE("wedge integral in one variable") {
  const auto w = wedge_integral({P("z", 1), P("conj(z)", 1)});
  CHECK(w.determinant == PolySymbol::constant(1, 1));
  CHECK(exact(w.raw) == q(1));
  // dz ^ dzbar = -2i dx ^ dy and the disc has area pi
  CHECK(std::abs(w.value - std::complex<double>(0, -2 * std::numbers::pi)) < 1e-14);
}

TEST_CASE("wedge integral with a repeated symbol vanishes") {
  const auto w = wedge_integral({P("z1^2*conj(z2)"), P("z1 + conj(z1)*z2"), P("z1^2*conj(z2)"), P("z2")});
  CHECK(w.determinant.is_zero());
  CHECK(w.value == std::complex<double>{});
}

TEST_CASE("wedge of real coordinates is the volume of the 4-ball") {
  const auto w = wedge_integral({P("x1"), P("y1"), P("x2"), P("y2")});
  const double mc = oracle::ball_volume_mc(2, 10'000'000, 17);
  CHECK(std::abs(w.value.imag()) < 1e-14);
  CHECK(std::abs(w.value.real() - mc) < 1e-2);
  CHECK(w.value.real() == doctest::Approx(std::numbers::pi * std::numbers::pi / 2).epsilon(1e-14));
}

TEST_CASE("wedge integral is alternating and multilinear") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 10; ++i) {
    std::vector<PolySymbol> fs;
    for (int k = 0; k < 4; ++k) fs.push_back(oracle::random_poly(2, 3, 3, rng));
    const auto base = wedge_integral(fs);
    auto swapped = fs;
    std::swap(swapped[0], swapped[2]);
    CHECK(wedge_integral(swapped).determinant == -base.determinant);
    CHECK(exact(wedge_integral(swapped).raw) == -exact(base.raw));

    const auto g = oracle::random_poly(2, 3, 3, rng);
    auto fg = fs, gg = fs;
    fg[1] = fs[1] + g.scaled(Coefficient(ExactComplex(2, -1)));
    gg[1] = g;
    const auto lhs = exact(wedge_integral(fg).raw);
    const auto rhs = exact(base.raw) + ExactComplex(2, -1) * exact(wedge_integral(gg).raw);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("wedge integral arity") {
  CHECK_THROWS_AS(wedge_integral({P("z1"), P("z2")}), domain_error);
  CHECK_THROWS_AS(wedge_integral({}), domain_error);
}

TEST_CASE("ball volume") {
  CHECK(ball_volume(1) == doctest::Approx(std::numbers::pi));
  CHECK(ball_volume(3) == doctest::Approx(std::pow(std::numbers::pi, 3) / 6));
}

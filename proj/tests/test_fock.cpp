#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "balltrace/dixmier.hpp"
#include "balltrace/fock.hpp"

using namespace balltrace;

namespace {

constexpr double pi = std::numbers::pi;

BlockOperator identity(int d, int n) {
  BlockOperator r(d, std::nullopt, n);
  r.ensure_shift(0);
  for (int m = 0; m <= n; ++m) r.mutable_block(m, 0).setIdentity();
  return r;
}

Complex entry(const BlockOperator& a, const MultiIndex& to, const MultiIndex& from) {
  const int s = to.degree() - from.degree();
  if (!a.has_block(from.degree(), s)) return {};
  return a.block(from.degree(), s).coeff(static_cast<Eigen::Index>(shell_rank(to)), static_cast<Eigen::Index>(shell_rank(from)));
}

}  // namespace

TEST_CASE("Fock monomial norms against a Gaussian Monte Carlo oracle") {
  // e^{-pi |w|^2} dm is a probability density on C: Re w, Im w ~ N(0, 1/(2 pi))
  std::mt19937_64 rng(83);
  std::normal_distribution<double> g(0.0, std::sqrt(1.0 / (2 * pi)));
  const int n = 2'000'000;
  std::vector<double> moments(4, 0.0);
  for (int i = 0; i < n; ++i) {
    const double r2 = std::norm(Complex(g(rng), g(rng)));
    for (int k = 0; k < 4; ++k) moments[static_cast<std::size_t>(k)] += std::pow(r2, k);
  }
  for (int k = 0; k < 4; ++k) {
    const double mc = moments[static_cast<std::size_t>(k)] / n;
    const double exact = FockBasis::norm_sq(MultiIndex{k});
    CHECK(std::abs(mc / exact - 1) < 2e-2);
  }
  CHECK(FockBasis::norm_sq(MultiIndex{1, 2}) == doctest::Approx(2.0 / (pi * pi * pi)).epsilon(1e-15));
  const FockBasis fb(3, 5);
  CHECK(fb.graded().size() == GradedBasis(3, 5).size());
  for (std::size_t i = 0; i < fb.graded().size(); ++i) CHECK(fb.graded()[i] == GradedBasis(3, 5)[i]);
}

TEST_CASE("rho_delta examples") {
  const auto r2 = rho_delta(2, 4);
  CHECK(r2.block(0, 0).coeff(0, 0) == Complex(-pi));
  const auto r1 = rho_delta(1, 4);
  CHECK(std::abs(r1.block(3, 0).coeff(0, 0) - Complex(-pi * 3.5)) < 1e-15);
  CHECK(r2.is_degree_diagonal());

  // (c - rho(Delta))^{-d} reproduces the model eigenvalues
  const double c = 0.75;
  const auto model = model_eigenvalues(c, 2, 30);
  const auto r = rho_delta(2, 30);
  for (int m = 0; m <= 30; ++m) {
    const auto& blk = r.block(m, 0);
    CHECK(blk.rows() == static_cast<Eigen::Index>(model.shell(m).front().multiplicity));
    for (Eigen::Index i = 0; i < blk.rows(); ++i)
      CHECK(std::pow(c - blk.coeff(i, i).real(), -2.0) == doctest::Approx(model.shell(m).front().value).epsilon(1e-15));
  }
}

TEST_CASE("ladder examples") {
  const auto up = ladder(1, 1, LadderKind::create, 5);
  CHECK(std::abs(entry(up, MultiIndex{1}, MultiIndex{0}) - std::sqrt(pi)) < 1e-15);
  const auto down = ladder(1, 1, LadderKind::annihilate, 5);
  CHECK_FALSE(down.has_block(0, -1));
  CHECK(std::abs(entry(down, MultiIndex{2}, MultiIndex{3}) + std::sqrt(3 * pi)) < 1e-15);
  const auto up2 = ladder(3, 2, LadderKind::create, 5);
  CHECK(std::abs(entry(up2, MultiIndex{1, 2, 0}, MultiIndex{1, 1, 0}) - std::sqrt(2 * pi)) < 1e-15);
  CHECK_THROWS_AS(ladder(2, 3, LadderKind::create, 5), domain_error);
}

TEST_CASE("canonical commutation relations") {
  for (int d = 1; d <= 3; ++d) {
    const int n = 12;
    for (int j = 1; j <= d; ++j)
      for (int k = 1; k <= d; ++k) {
        const auto a = ladder(d, j, LadderKind::annihilate, n);
        const auto c = ladder(d, k, LadderKind::create, n);
        const auto comm = commutator(a, c);
        const int e = comm.exact_degree();
        REQUIRE(e >= n - 1);
        const auto expected = identity(d, n).scaled(j == k ? -pi : 0.0);
        CHECK(max_abs_difference(comm, expected, e) <= 1e-12);
      }
  }
}

TEST_CASE("rho_delta is the half-anticommutator of the ladders") {
  for (int d = 1; d <= 3; ++d) {
    const int n = 15;
    BlockOperator sum(d, std::nullopt, n);
    for (int j = 1; j <= d; ++j) {
      const auto a = ladder(d, j, LadderKind::annihilate, n);
      const auto c = ladder(d, j, LadderKind::create, n);
      const auto term = (compose(a, c) + compose(c, a)).scaled(0.5);
      sum = j == 1 ? term : sum + term;
    }
    const int e = sum.exact_degree();
    REQUIRE(e >= n - 1);
    // entries are products of square roots: agreement to rounding, not bitwise
    CHECK(max_abs_difference(sum, rho_delta(d, n), e) <= 8 * std::numeric_limits<double>::epsilon() * pi * (e + d));
  }
}

TEST_CASE("intertwiner examples") {
  const auto zero = verify_intertwiner(MultiIndex{0, 0}, 2.0, 10);
  CHECK(zero.deviation == 0.0);
  CHECK(max_abs_difference(zero.lhs, identity(2, 10), zero.window) == 0.0);

  const auto e1 = verify_intertwiner(MultiIndex{1, 0}, 2.0, 10);
  CHECK(std::abs(entry(e1.lhs, MultiIndex{2, 0}, MultiIndex{1, 0}) - std::sqrt(2.0 / 3.0)) < 1e-15);
  CHECK(std::abs(entry(e1.rhs, MultiIndex{2, 0}, MultiIndex{1, 0}) - std::sqrt(2.0 / 3.0)) < 1e-15);
  CHECK_FALSE(e1.lhs.nu().has_value());

  const auto e11 = verify_intertwiner(MultiIndex{1, 1}, 2.5, 20);
  CHECK(e11.deviation <= 1e-12);
  CHECK(e11.window == 20);
}

TEST_CASE("intertwiner identity for all small alpha") {
  for (int d = 1; d <= 3; ++d)
    for (double nu : {1.0 * d, d + 1.0, d + 2.5})
      for (int k = 0; k <= 3; ++k)
        for_each_in_shell(d, k, [&](const MultiIndex& alpha) {
          const auto r = verify_intertwiner(alpha, nu, 20);
          CHECK(r.deviation <= 1e-12);
          CHECK(r.window >= 20 - k);
        });
}

TEST_CASE("intertwiner preconditions") {
  CHECK_THROWS_AS(verify_intertwiner(MultiIndex{1, 0}, 1.5, 10), domain_error);
  CHECK_THROWS_AS(verify_intertwiner(MultiIndex{3, 0}, 2.0, 2), domain_error);
}

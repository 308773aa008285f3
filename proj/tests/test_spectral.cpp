#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "balltrace/reference.hpp"
#include "balltrace/spectral.hpp"

using namespace balltrace;

namespace {

PolySymbol P(const char* s, int d = 2) { return parse_symbol(s, d); }

DenseBlock random_hermitian(Eigen::Index n, bool real, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  DenseBlock a(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = {g(rng), real ? 0.0 : g(rng)};
  return (a + a.adjoint()) / 2.0;
}

BlockOperator random_shell_operator(int d, int n, std::mt19937_64& rng) {
  BlockOperator a(d, d + 1.0, n);
  a.ensure_shift(0);
  for (int m = 0; m <= n; ++m)
    a.mutable_block(m, 0) = random_hermitian(static_cast<Eigen::Index>(shell_dim(d, m)), m % 3 == 0, rng).sparseView();
  return a;
}

std::vector<double> values_of(const ShellSpectrum& s, int m) {
  std::vector<double> v;
  s.for_each_value(m, [&](double x, std::uint64_t k) { v.insert(v.end(), k, x); });
  return v;
}

}  // namespace

TEST_CASE("diagonal block gives its sorted diagonal") {
  BlockOperator a(2, 2.0, 1);
  a.ensure_shift(0);
  DenseBlock b = DenseBlock::Zero(2, 2);
  b(0, 0) = 3.0;
  b(1, 1) = -1.0;
  a.mutable_block(1, 0) = b.sparseView();
  const auto s = hermitian_eigen(a, 0, 1);
  CHECK(values_of(s, 1) == std::vector<double>{-1.0, 3.0});
  CHECK(values_of(s, 0) == std::vector<double>{0.0});
}

TEST_CASE("2x2 swap block") {
  BlockOperator a(2, 2.0, 1);
  a.ensure_shift(0);
  DenseBlock b = DenseBlock::Zero(2, 2);
  b(0, 1) = b(1, 0) = 1.0;
  a.mutable_block(1, 0) = b.sparseView();
  const auto v = values_of(hermitian_eigen(a, 1, 1), 1);
  REQUIRE(v.size() == 2);
  CHECK(v[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(v[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("hankel_gram(z1) shells") {
  const auto h = hankel_gram(P("z1"), 2.0, 30);
  const auto s = hermitian_eigen(h, 0, h.exact_degree());
  for (int m = 0; m <= h.exact_degree(); ++m) {
    std::vector<double> expected;
    for (int k = 0; k <= m; ++k) expected.push_back((k + 1.0) / ((m + 1.0) * (m + 2.0)));
    const auto v = values_of(s, m);
    REQUIRE(v.size() == expected.size());
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(v[i] - expected[i]) < 1e-15);
  }
}

TEST_CASE("preconditions of hermitian_eigen") {
  const auto t = toeplitz(P("z1"), 2.0, 6);
  CHECK_THROWS_AS(hermitian_eigen(t, 0, 5), domain_error);
  const auto c = commutator(toeplitz(P("conj(z1)"), 2.0, 6), toeplitz(P("z1"), 2.0, 6));
  CHECK_THROWS_AS(hermitian_eigen(c, 0, c.exact_degree() + 1), domain_error);
  // non-Hermitian shift-0 operator
  const auto nh = compose(toeplitz(P("z1"), 2.0, 6), toeplitz(P("conj(z2)"), 2.0, 6));
  CHECK_THROWS_AS(hermitian_eigen(nh, 0, nh.exact_degree()), domain_error);
}

TEST_CASE("residual contract on 50 random Hermitian blocks") {
  std::mt19937_64 rng(61);
  // d=3 shells 0..26 have sizes 1..378; d=2 shells 0..22 have sizes 1..23
  const auto a = random_shell_operator(3, 26, rng);
  const auto b = random_shell_operator(2, 22, rng);
  for (const auto* op : {&a, &b}) {
    const auto s = hermitian_eigen(*op, 0, op->max_degree());
    CHECK(s.residual <= 1e-9);
    for (int m = 0; m <= op->max_degree(); ++m) {
      const auto v = values_of(s, m);
      CHECK(v.size() == shell_dim(op->dim(), m));
      CHECK(std::is_sorted(v.begin(), v.end()));
      const DenseBlock blk = op->dense_block(m, 0);
      double sum = 0, sq = 0;
      for (double x : v) {
        sum += x;
        sq += x * x;
      }
      const double scale = std::max(1.0, blk.norm());
      CHECK(std::abs(sum - blk.trace().real()) <= 1e-10 * scale * v.size());
      CHECK(std::abs(sq - blk.squaredNorm()) <= 1e-10 * scale * scale);
      const auto ref = reference::hermitian_eigenvalues(blk);
      for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(v[i] - ref[i]) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("partial_trace equals the eigenvalue sum") {
  std::mt19937_64 rng(67);
  const auto a = random_shell_operator(2, 30, rng);
  const auto s = hermitian_eigen(a, 0, 30);
  double sum = 0;
  for (int m = 0; m <= 30; ++m)
    s.for_each_value(m, [&](double x, std::uint64_t k) { sum += x * static_cast<double>(k); });
  CHECK(std::abs(partial_trace(a, 30) - Complex(sum)) < 1e-10);

  const auto h = hankel_gram(P("z1*z2 + 3*z2^2"), 2.5, 25);
  const auto sh = hermitian_eigen(h, 0, h.exact_degree());
  sum = 0;
  for (int m = 0; m <= h.exact_degree(); ++m)
    sh.for_each_value(m, [&](double x, std::uint64_t k) { sum += x * static_cast<double>(k); });
  CHECK(std::abs(partial_trace(h, h.exact_degree()) - Complex(sum)) < 1e-10);
}

TEST_CASE("partial_trace examples") {
  const int n = 60;
  const auto c = commutator(toeplitz(P("conj(z)", 1), 2.0, n), toeplitz(P("z", 1), 2.0, n));
  const auto traces = partial_traces(c, c.exact_degree());
  for (int k = 0; k <= c.exact_degree(); ++k) CHECK(std::abs(traces[static_cast<std::size_t>(k)] - (1.0 - 1.0 / (k + 2.0))) < 1e-14);

  // a single exact shell of a commutator of two shift-0 operators is traceless
  const auto a = hankel_gram(P("z1 + z2"), 2.0, 12), b = toeplitz(P("z1*conj(z2) + 2*z2*conj(z2)"), 2.0, 12);
  const auto ab = commutator(a, b);
  for (int m = 0; m <= ab.exact_degree(); ++m) CHECK(std::abs(ab.dense_block(m, 0).trace()) < 1e-12);

  const auto id = toeplitz(P("1", 3), 3.0, 7);
  CHECK(partial_trace(id, 7) == Complex(static_cast<double>(binomial(10, 3))));
  CHECK_THROWS_AS(partial_trace(c, c.exact_degree() + 1), domain_error);
}

TEST_CASE("schatten_partial examples") {
  const auto id = toeplitz(P("1"), 2.0, 9);
  CHECK(schatten_partial(id, 1.0, 9) == doctest::Approx(static_cast<double>(binomial(11, 2))));

  const auto f = P("z1 + conj(z2)*z1 - 2*z2^2 + conj(z1)");
  const auto t = toeplitz(f, 2.0, 10);
  const DenseBlock w = dense_window(t, 10);
  CHECK(schatten_partial(t, 2.0, 10) == doctest::Approx(w.squaredNorm()).epsilon(1e-12));
  // single-shift operator uses the per-shell Gram route
  const auto z = toeplitz(P("z1 - 3*z2"), 2.0, 10);
  CHECK(schatten_partial(z, 2.0, 10) == doctest::Approx(dense_window(z, 10).squaredNorm()).epsilon(1e-12));

  const auto disk = hankel_gram(P("z", 1), 1.0, 30);
  for (double p : {0.5, 1.0, 2.0, 3.7})
    for (int n : {0, 5, disk.exact_degree()}) CHECK(schatten_partial(disk, p, n) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(schatten_partial(disk, 0.0, 3), domain_error);
}

TEST_CASE("schatten_partial is nondecreasing in N and continuous in p") {
  const auto h = hankel_gram(P("z1 + z1*z2"), 2.0, 24);
  for (double p : {1.0, 2.0, 4.0, 4.5}) {
    double prev = 0;
    for (int n = 0; n <= h.exact_degree(); ++n) {
      const double v = schatten_partial(h, p, n);
      CHECK(v >= prev);
      prev = v;
    }
  }
  const double base = schatten_partial(h, 2.0, 20);
  for (double eps : {1e-2, 1e-4, 1e-6}) CHECK(std::abs(schatten_partial(h, 2.0 + eps, 20) - base) < 50 * eps * base);
}

TEST_CASE("spectrum serialization") {
  const auto h = hankel_gram(P("z1"), 2.0, 4);
  const auto s = hermitian_eigen(h, 0, 2);
  std::ostringstream os;
  write_csv(os, s);
  const std::string csv = os.str();
  CHECK(csv.rfind("shell,index,value\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 1 + 2 + 3);
  const auto j = to_json(s);
  CHECK(j["shells"].size() == 3);
  CHECK(j["shells"][2]["values"].size() == 3);
  CHECK(s.count() == 6);
  const auto sorted = s.sorted_by_magnitude();
  CHECK(std::is_sorted(sorted.begin(), sorted.end(), [](double a, double b) { return std::abs(a) > std::abs(b); }));
}

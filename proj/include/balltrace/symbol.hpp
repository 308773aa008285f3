#pragma once

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "balltrace/core.hpp"
#include "balltrace/exact.hpp"

namespace balltrace {

/// Polynomial coefficient. Exact (Gaussian rational) whenever every input
/// that produced it was exact; otherwise a complex double.
class Coefficient {
public:
  Coefficient() : exact_(ExactComplex{}) {}
  Coefficient(ExactComplex z) : exact_(std::move(z)), value_(exact_->to_complex()) {}  // NOLINT
  Coefficient(long long n) : Coefficient(ExactComplex(n)) {}                          // NOLINT
  static Coefficient approx(std::complex<double> z) {
    Coefficient c;
    c.exact_.reset();
    c.value_ = z;
    return c;
  }

  bool is_exact() const noexcept { return exact_.has_value(); }
  const ExactComplex& exact() const { return exact_.value(); }
  std::complex<double> value() const noexcept { return value_; }
  bool is_zero() const { return exact_ ? exact_->is_zero() : value_ == std::complex<double>{}; }

  Coefficient conj() const;
  friend Coefficient operator+(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator-(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator/(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator-(const Coefficient& a);
  /// Exact comparison when both are exact, bitwise equality of doubles otherwise.
  friend bool operator==(const Coefficient& a, const Coefficient& b);

  std::string to_string() const;

private:
  std::optional<ExactComplex> exact_;
  std::complex<double> value_{};
};

/// Finite polynomial in z_1..z_d and their conjugates. A term z^a conj(z)^b
/// is keyed by the exponent pair (a, b). Zero coefficients are never stored.
class PolySymbol {
public:
  using Key = std::pair<MultiIndex, MultiIndex>;
  using Terms = std::map<Key, Coefficient>;

  explicit PolySymbol(int dim);

  static PolySymbol constant(int dim, const Coefficient& c);
  static PolySymbol monomial(const MultiIndex& a, const MultiIndex& b, const Coefficient& c = 1);
  /// z_j (j is 1-based, like the grammar).
  static PolySymbol z(int dim, int j);
  static PolySymbol zbar(int dim, int j);

  int dim() const noexcept { return dim_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_exact() const;
  /// No conjugate variables appear.
  bool is_holomorphic() const;
  bool is_constant() const;
  /// Largest |a| (resp. |b|) over the terms; 0 for the zero symbol.
  int holomorphic_degree() const;
  int antiholomorphic_degree() const;
  int total_degree() const;

  /// Adds c z^a conj(z)^b.
  void add_term(const MultiIndex& a, const MultiIndex& b, const Coefficient& c);

  PolySymbol conj() const;
  PolySymbol pow(int k) const;
  PolySymbol scaled(const Coefficient& c) const;

  std::complex<double> evaluate(const std::vector<std::complex<double>>& z) const;

  /// Canonical text in the parser grammar; parse_symbol(to_string()) == *this.
  std::string to_string() const;

  friend PolySymbol operator+(const PolySymbol& f, const PolySymbol& g);
  friend PolySymbol operator-(const PolySymbol& f, const PolySymbol& g);
  friend PolySymbol operator-(const PolySymbol& f);
  friend PolySymbol operator*(const PolySymbol& f, const PolySymbol& g);
  friend bool operator==(const PolySymbol& f, const PolySymbol& g);

private:
  void require_same_dim(const PolySymbol& other) const;

  int dim_;
  Terms terms_;
};

/// Maximum coefficient deviation |f - g|_inf, for comparing inexact symbols.
double max_coefficient_difference(const PolySymbol& f, const PolySymbol& g);

class ParseError : public std::invalid_argument {
public:
  ParseError(std::size_t offset, const std::string& message)
      : std::invalid_argument("parse error at byte " + std::to_string(offset) + ": " + message),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Grammar: z1..z9 (z is z1), x1..x9 / y1..y9 (real and imaginary parts),
/// conj(...), sqrt(constant), literals such as 2, 0.5, 1e-3, 2i, i,
/// operators + - * / ^ with integer exponents, parentheses.
/// Division is only by a nonzero constant.
PolySymbol parse_symbol(std::string_view text, int dim);

/// Splits "f1,g1;f2,g2" into symbol pairs.
std::vector<std::pair<PolySymbol, PolySymbol>> parse_pairs(std::string_view text, int dim);
/// Splits "f1,f2,..." into symbols (commas inside parentheses are kept).
std::vector<PolySymbol> parse_symbol_list(std::string_view text, int dim);

// Derivations. Indices j are 0-based here.
PolySymbol d_holo(int j, const PolySymbol& f);
PolySymbol d_anti(int j, const PolySymbol& f);
/// R = sum_j z_j d_j: scales z^a conj(z)^b by |a|.
PolySymbol radial(const PolySymbol& f);
/// conj(R) = sum_j conj(z_j) dbar_j: scales by |b|.
PolySymbol radial_bar(const PolySymbol& f);
/// d_j f - conj(z_j) R f.
PolySymbol boundary_cr(int j, const PolySymbol& f);
/// dbar_j f - z_j conj(R) f.
PolySymbol boundary_cr_bar(int j, const PolySymbol& f);

/// sum_j (d_j f dbar_j g - d_j g dbar_j f).
PolySymbol poisson(const PolySymbol& f, const PolySymbol& g);
/// sum_j (d^b_j f dbar^b_j g - dbar^b_j f d^b_j g), unreduced.
PolySymbol boundary_poisson(const PolySymbol& f, const PolySymbol& g);

/// Normal form modulo |z|^2 - 1: every z_d conj(z_d) factor is rewritten as
/// 1 - sum_{j<d} |z_j|^2 until no term contains both z_d and conj(z_d).
PolySymbol reduce_on_sphere(const PolySymbol& f);

/// sum_j |d_j f|^2 - |R f|^2 for holomorphic f.
PolySymbol hankel_density(const PolySymbol& f);

}  // namespace balltrace

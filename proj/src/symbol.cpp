#include "balltrace/symbol.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace balltrace {

// ---------------------------------------------------------------------------
// Coefficient

Coefficient Coefficient::conj() const {
  if (exact_) return Coefficient(exact_->conj());
  return approx(std::conj(value_));
}

Coefficient operator+(const Coefficient& a, const Coefficient& b) {
  if (a.exact_ && b.exact_) return Coefficient(*a.exact_ + *b.exact_);
  return Coefficient::approx(a.value_ + b.value_);
}

Coefficient operator-(const Coefficient& a, const Coefficient& b) {
  if (a.exact_ && b.exact_) return Coefficient(*a.exact_ - *b.exact_);
  return Coefficient::approx(a.value_ - b.value_);
}

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
  if (a.exact_ && b.exact_) return Coefficient(*a.exact_ * *b.exact_);
  return Coefficient::approx(a.value_ * b.value_);
}

Coefficient operator/(const Coefficient& a, const Coefficient& b) {
  if (b.is_zero()) throw std::domain_error("division by zero coefficient");
  if (a.exact_ && b.exact_) return Coefficient(*a.exact_ / *b.exact_);
  return Coefficient::approx(a.value_ / b.value_);
}

Coefficient operator-(const Coefficient& a) {
  if (a.exact_) return Coefficient(-*a.exact_);
  return Coefficient::approx(-a.value_);
}

bool operator==(const Coefficient& a, const Coefficient& b) {
  if (a.exact_ && b.exact_) return *a.exact_ == *b.exact_;
  return a.value_ == b.value_;
}

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Grammar-compatible rendering; `needs_parens` when the value has two parts
// or is negative and will be followed by '*'.
std::string grammar_text(const Coefficient& c) {
  if (c.is_exact()) {
    const auto& z = c.exact();
    if (z.im == 0) return to_string(z.re);
    if (z.re == 0) return "(" + to_string(z.im) + "*i)";
    std::string im = to_string(z.im);
    if (im.front() != '-') im = "+" + im;
    return "(" + to_string(z.re) + im + "*i)";
  }
  const auto v = c.value();
  if (v.imag() == 0.0) return format_double(v.real());
  std::string im = format_double(v.imag());
  if (im.front() != '-') im = "+" + im;
  return "(" + format_double(v.real()) + im + "*i)";
}

}  // namespace

std::string Coefficient::to_string() const { return grammar_text(*this); }

// ---------------------------------------------------------------------------
// PolySymbol

PolySymbol::PolySymbol(int dim) : dim_(dim) {
  if (dim < 1 || dim > max_dimension) throw domain_error("d", "dimension out of range");
}

PolySymbol PolySymbol::constant(int dim, const Coefficient& c) {
  PolySymbol f(dim);
  f.add_term(MultiIndex(dim), MultiIndex(dim), c);
  return f;
}

PolySymbol PolySymbol::monomial(const MultiIndex& a, const MultiIndex& b, const Coefficient& c) {
  PolySymbol f(a.dim());
  f.add_term(a, b, c);
  return f;
}

PolySymbol PolySymbol::z(int dim, int j) {
  return monomial(MultiIndex::unit(dim, j - 1), MultiIndex(dim));
}

PolySymbol PolySymbol::zbar(int dim, int j) {
  return monomial(MultiIndex(dim), MultiIndex::unit(dim, j - 1));
}

void PolySymbol::require_same_dim(const PolySymbol& other) const {
  if (other.dim_ != dim_) throw domain_error("d", "symbols live in different dimensions");
}

void PolySymbol::add_term(const MultiIndex& a, const MultiIndex& b, const Coefficient& c) {
  if (a.dim() != dim_ || b.dim() != dim_) throw domain_error("d", "exponent dimension mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(Key{a, b}, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool PolySymbol::is_exact() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_exact(); });
}

bool PolySymbol::is_holomorphic() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first.second.degree() == 0; });
}

bool PolySymbol::is_constant() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
    return t.first.first.degree() == 0 && t.first.second.degree() == 0;
  });
}

int PolySymbol::holomorphic_degree() const {
  int k = 0;
  for (const auto& [key, c] : terms_) k = std::max(k, key.first.degree());
  return k;
}

int PolySymbol::antiholomorphic_degree() const {
  int k = 0;
  for (const auto& [key, c] : terms_) k = std::max(k, key.second.degree());
  return k;
}

int PolySymbol::total_degree() const {
  int k = 0;
  for (const auto& [key, c] : terms_) k = std::max(k, key.first.degree() + key.second.degree());
  return k;
}

PolySymbol PolySymbol::conj() const {
  PolySymbol r(dim_);
  for (const auto& [key, c] : terms_) r.terms_.emplace(Key{key.second, key.first}, c.conj());
  return r;
}

PolySymbol PolySymbol::pow(int k) const {
  if (k < 0) throw domain_error("exponent", "must be >= 0");
  PolySymbol result = constant(dim_, 1);
  PolySymbol base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

PolySymbol PolySymbol::scaled(const Coefficient& c) const {
  PolySymbol r(dim_);
  for (const auto& [key, v] : terms_) r.add_term(key.first, key.second, v * c);
  return r;
}

std::complex<double> PolySymbol::evaluate(const std::vector<std::complex<double>>& z) const {
  if (static_cast<int>(z.size()) != dim_) throw domain_error("point", "dimension mismatch");
  std::complex<double> s{};
  for (const auto& [key, c] : terms_) {
    std::complex<double> t = c.value();
    for (int j = 0; j < dim_; ++j) {
      const auto zj = z[static_cast<std::size_t>(j)];
      for (int p = 0; p < key.first[j]; ++p) t *= zj;
      for (int p = 0; p < key.second[j]; ++p) t *= std::conj(zj);
    }
    s += t;
  }
  return s;
}

std::string PolySymbol::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    std::vector<std::string> factors;
    for (int j = 0; j < dim_; ++j) {
      const int p = key.first[j];
      if (p == 0) continue;
      factors.push_back("z" + std::to_string(j + 1) + (p > 1 ? "^" + std::to_string(p) : ""));
    }
    for (int j = 0; j < dim_; ++j) {
      const int p = key.second[j];
      if (p == 0) continue;
      factors.push_back("conj(z" + std::to_string(j + 1) + ")" + (p > 1 ? "^" + std::to_string(p) : ""));
    }
    // Pull a leading minus sign out of real coefficients.
    Coefficient coeff = c;
    bool negative = false;
    if (c.is_exact() ? (c.exact().im == 0 && c.exact().re < 0)
                     : (c.value().imag() == 0.0 && c.value().real() < 0.0)) {
      negative = true;
      coeff = -c;
    }
    os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
    first = false;
    const bool unit = coeff == Coefficient(1);
    if (!unit || factors.empty()) {
      os << grammar_text(coeff);
      if (!factors.empty()) os << '*';
    }
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
  }
  return os.str();
}

PolySymbol operator+(const PolySymbol& f, const PolySymbol& g) {
  f.require_same_dim(g);
  PolySymbol r = f;
  for (const auto& [key, c] : g.terms_) r.add_term(key.first, key.second, c);
  return r;
}

PolySymbol operator-(const PolySymbol& f) { return f.scaled(-1); }

PolySymbol operator-(const PolySymbol& f, const PolySymbol& g) {
  f.require_same_dim(g);
  PolySymbol r = f;
  for (const auto& [key, c] : g.terms_) r.add_term(key.first, key.second, -c);
  return r;
}

PolySymbol operator*(const PolySymbol& f, const PolySymbol& g) {
  f.require_same_dim(g);
  PolySymbol r(f.dim_);
  for (const auto& [kf, cf] : f.terms_)
    for (const auto& [kg, cg] : g.terms_) r.add_term(kf.first + kg.first, kf.second + kg.second, cf * cg);
  return r;
}

bool operator==(const PolySymbol& f, const PolySymbol& g) {
  return f.dim_ == g.dim_ && f.terms_ == g.terms_;
}

double max_coefficient_difference(const PolySymbol& f, const PolySymbol& g) {
  double m = 0.0;
  for (const auto& [key, c] : (f - g).terms()) m = std::max(m, std::abs(c.value()));
  return m;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
  Parser(std::string_view text, int dim) : s_(text), dim_(dim) {}

  PolySymbol parse() {
    PolySymbol r = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  PolySymbol expr() {
    PolySymbol r = term();
    for (;;) {
      if (accept('+'))
        r = r + term();
      else if (accept('-'))
        r = r - term();
      else
        return r;
    }
  }

  PolySymbol term() {
    PolySymbol r = unary();
    for (;;) {
      if (accept('*')) {
        r = r * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        PolySymbol den = unary();
        if (!den.is_constant() || den.is_zero()) {
          pos_ = at;
          fail("division is only by a nonzero constant");
        }
        r = r.scaled(Coefficient(1) / den.terms().begin()->second);
      } else {
        return r;
      }
    }
  }

  PolySymbol unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  PolySymbol power() {
    PolySymbol base = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a non-negative integer");
      const int k = std::stoi(std::string(s_.substr(start, pos_ - start)));
      return base.pow(k);
    }
    return base;
  }

  bool peek_word(std::string_view w) {
    skip_ws();
    if (s_.substr(pos_, w.size()) != w) return false;
    const std::size_t end = pos_ + w.size();
    return end >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[end]));
  }

  int variable_index() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    int j = 1;
    if (pos_ > start) j = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (j < 1 || j > dim_) {
      pos_ = start - 1;
      fail("variable index " + std::to_string(j) + " exceeds d = " + std::to_string(dim_));
    }
    return j;
  }

  PolySymbol primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      PolySymbol r = expr();
      expect(')');
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (peek_word("conj")) {
      pos_ += 4;
      expect('(');
      PolySymbol r = expr();
      expect(')');
      return r.conj();
    }
    if (peek_word("sqrt")) {
      pos_ += 4;
      expect('(');
      const std::size_t at = pos_;
      PolySymbol r = expr();
      expect(')');
      return square_root(r, at);
    }
    if (peek_word("i")) {
      ++pos_;
      return PolySymbol::constant(dim_, Coefficient(ExactComplex(0, 1)));
    }
    if (c == 'z' || c == 'x' || c == 'y') {
      ++pos_;
      const int j = variable_index();
      if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) fail("unknown identifier");
      const PolySymbol zj = PolySymbol::z(dim_, j);
      const PolySymbol zbj = PolySymbol::zbar(dim_, j);
      if (c == 'z') return zj;
      if (c == 'x') return (zj + zbj).scaled(Coefficient(ExactComplex(Rational(1, 2))));
      // y = (z - conj z) / (2i)
      return (zj - zbj).scaled(Coefficient(ExactComplex(0, Rational(-1, 2))));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  PolySymbol number() {
    const std::size_t start = pos_;
    using boost::multiprecision::cpp_int;
    cpp_int mantissa = 0;
    int frac_digits = 0;
    bool any = false;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      mantissa = mantissa * 10 + (s_[pos_++] - '0');
      any = true;
    }
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        mantissa = mantissa * 10 + (s_[pos_++] - '0');
        ++frac_digits;
        any = true;
      }
    }
    if (!any) {
      pos_ = start;
      fail("malformed number");
    }
    int exp10 = -frac_digits;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      int sign = 1;
      if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) sign = s_[p++] == '-' ? -1 : 1;
      const std::size_t ds = p;
      while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p;
      if (p == ds) {
        pos_ = p;
        fail("malformed exponent");
      }
      exp10 += sign * std::stoi(std::string(s_.substr(ds, p - ds)));
      pos_ = p;
    }
    Rational value(mantissa);
    cpp_int scale = boost::multiprecision::pow(cpp_int(10), std::abs(exp10));
    value = exp10 >= 0 ? value * Rational(scale) : value / Rational(scale);
    ExactComplex z(value);
    if (pos_ < s_.size() && s_[pos_] == 'i' &&
        (pos_ + 1 >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      z = ExactComplex(0, value);
    }
    return PolySymbol::constant(dim_, Coefficient(z));
  }

  PolySymbol square_root(const PolySymbol& r, std::size_t at) {
    if (!r.is_constant()) {
      pos_ = at;
      fail("sqrt takes a constant argument");
    }
    if (r.is_zero()) return r;
    const Coefficient c = r.terms().begin()->second;
    if (c.is_exact() && c.exact().is_real() && c.exact().re >= 0) {
      using boost::multiprecision::cpp_int;
      const Rational q = c.exact().re;
      const cpp_int n = boost::multiprecision::numerator(q);
      const cpp_int d = boost::multiprecision::denominator(q);
      const cpp_int sn = boost::multiprecision::sqrt(n);
      const cpp_int sd = boost::multiprecision::sqrt(d);
      if (sn * sn == n && sd * sd == d) return PolySymbol::constant(dim_, Coefficient(ExactComplex(Rational(sn, sd))));
      return PolySymbol::constant(dim_, Coefficient::approx(std::sqrt(static_cast<double>(q))));
    }
    if (c.value().imag() != 0.0 || c.value().real() < 0.0) {
      pos_ = at;
      fail("sqrt needs a non-negative real argument");
    }
    return PolySymbol::constant(dim_, Coefficient::approx(std::sqrt(c.value().real())));
  }

  std::string_view s_;
  int dim_;
  std::size_t pos_ = 0;
};

// Splits at `sep` characters that are not nested inside parentheses.
std::vector<std::pair<std::size_t, std::string_view>> split_top(std::string_view text, char sep) {
  std::vector<std::pair<std::size_t, std::string_view>> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == sep && depth == 0)) {
      parts.emplace_back(start, text.substr(start, i - start));
      start = i + 1;
    } else if (text[i] == '(') {
      ++depth;
    } else if (text[i] == ')') {
      --depth;
    }
  }
  return parts;
}

PolySymbol parse_at(std::string_view text, std::size_t offset, int dim) {
  try {
    return parse_symbol(text, dim);
  } catch (const ParseError& e) {
    throw ParseError(offset + e.offset(), std::string(e.what()).substr(std::string(e.what()).find(':') + 2));
  }
}

}  // namespace

PolySymbol parse_symbol(std::string_view text, int dim) { return Parser(text, dim).parse(); }

std::vector<PolySymbol> parse_symbol_list(std::string_view text, int dim) {
  std::vector<PolySymbol> out;
  for (const auto& [off, part] : split_top(text, ',')) out.push_back(parse_at(part, off, dim));
  return out;
}

std::vector<std::pair<PolySymbol, PolySymbol>> parse_pairs(std::string_view text, int dim) {
  std::vector<std::pair<PolySymbol, PolySymbol>> out;
  for (const auto& [off, part] : split_top(text, ';')) {
    const auto items = split_top(part, ',');
    if (items.size() != 2) throw ParseError(off, "each pair needs exactly two symbols separated by ','");
    out.emplace_back(parse_at(items[0].second, off + items[0].first, dim),
                     parse_at(items[1].second, off + items[1].first, dim));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Calculus

PolySymbol d_holo(int j, const PolySymbol& f) {
  PolySymbol r(f.dim());
  for (const auto& [key, c] : f.terms()) {
    const int p = key.first[j];
    if (p == 0) continue;
    MultiIndex a = key.first;
    a.set(j, p - 1);
    r.add_term(a, key.second, c * Coefficient(p));
  }
  return r;
}

PolySymbol d_anti(int j, const PolySymbol& f) {
  PolySymbol r(f.dim());
  for (const auto& [key, c] : f.terms()) {
    const int p = key.second[j];
    if (p == 0) continue;
    MultiIndex b = key.second;
    b.set(j, p - 1);
    r.add_term(key.first, b, c * Coefficient(p));
  }
  return r;
}

PolySymbol radial(const PolySymbol& f) {
  PolySymbol r(f.dim());
  for (const auto& [key, c] : f.terms()) r.add_term(key.first, key.second, c * Coefficient(key.first.degree()));
  return r;
}

PolySymbol radial_bar(const PolySymbol& f) {
  PolySymbol r(f.dim());
  for (const auto& [key, c] : f.terms()) r.add_term(key.first, key.second, c * Coefficient(key.second.degree()));
  return r;
}

PolySymbol boundary_cr(int j, const PolySymbol& f) {
  return d_holo(j, f) - PolySymbol::zbar(f.dim(), j + 1) * radial(f);
}

PolySymbol boundary_cr_bar(int j, const PolySymbol& f) {
  return d_anti(j, f) - PolySymbol::z(f.dim(), j + 1) * radial_bar(f);
}

PolySymbol poisson(const PolySymbol& f, const PolySymbol& g) {
  PolySymbol r(f.dim());
  for (int j = 0; j < f.dim(); ++j) r = r + d_holo(j, f) * d_anti(j, g) - d_holo(j, g) * d_anti(j, f);
  return r;
}

PolySymbol boundary_poisson(const PolySymbol& f, const PolySymbol& g) {
  PolySymbol r(f.dim());
  for (int j = 0; j < f.dim(); ++j)
    r = r + boundary_cr(j, f) * boundary_cr_bar(j, g) - boundary_cr_bar(j, f) * boundary_cr(j, g);
  return r;
}

PolySymbol reduce_on_sphere(const PolySymbol& f) {
  const int d = f.dim();
  const int last = d - 1;
  // 1 - sum_{j<d} |z_j|^2
  PolySymbol rest = PolySymbol::constant(d, 1);
  for (int j = 0; j < last; ++j) rest = rest - PolySymbol::z(d, j + 1) * PolySymbol::zbar(d, j + 1);

  PolySymbol r(d);
  std::vector<PolySymbol> rest_pow{PolySymbol::constant(d, 1)};
  for (const auto& [key, c] : f.terms()) {
    const int k = std::min(key.first[last], key.second[last]);
    MultiIndex a = key.first;
    MultiIndex b = key.second;
    a.set(last, a[last] - k);
    b.set(last, b[last] - k);
    while (static_cast<int>(rest_pow.size()) <= k) rest_pow.push_back(rest_pow.back() * rest);
    r = r + PolySymbol::monomial(a, b, c) * rest_pow[static_cast<std::size_t>(k)];
  }
  return r;
}

PolySymbol hankel_density(const PolySymbol& f) {
  if (!f.is_holomorphic()) throw domain_error("f", "hankel_density needs a holomorphic symbol");
  PolySymbol r(f.dim());
  for (int j = 0; j < f.dim(); ++j) {
    const PolySymbol g = d_holo(j, f);
    r = r + g * g.conj();
  }
  const PolySymbol rf = radial(f);
  return r - rf * rf.conj();
}

}  // namespace balltrace

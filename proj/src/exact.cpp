#include "balltrace/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace balltrace {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite value");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  const double frac = std::frexp(x, &exp);  // x = frac * 2^exp, 0.5 <= |frac| < 1
  const auto mant = static_cast<long long>(std::ldexp(frac, 53));
  exp -= 53;
  using boost::multiprecision::cpp_int;
  cpp_int num = mant;
  cpp_int den = 1;
  if (exp >= 0)
    num <<= exp;
  else
    den <<= -exp;
  return Rational(num, den);
}

std::string to_string(const Rational& q) { return q.str(); }

std::string to_string(const ExactComplex& z) {
  if (z.im == 0) return to_string(z.re);
  if (z.re == 0) return to_string(z.im) + "i";
  std::string im = to_string(z.im);
  if (im.front() != '-') im = "+" + im;
  return to_string(z.re) + im + "i";
}

}  // namespace balltrace

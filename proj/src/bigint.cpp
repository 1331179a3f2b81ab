#include "turan/bigint.hpp"

#include <cctype>
#include <cstdlib>

namespace turan {

Rat rat_from_decimal(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_from_decimal: empty string");
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') {
    neg = (s[i] == '-');
    ++i;
  }
  Int num = 0;
  Int den = 1;
  bool saw_digit = false, saw_dot = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '.') {
      if (saw_dot) throw std::invalid_argument("rat_from_decimal: two dots in " + s);
      saw_dot = true;
    } else if (ch >= '0' && ch <= '9') {
      num = num * 10 + (ch - '0');
      if (saw_dot) den *= 10;
      saw_digit = true;
    } else {
      throw std::invalid_argument("rat_from_decimal: bad character in " + s);
    }
  }
  if (!saw_digit) throw std::invalid_argument("rat_from_decimal: no digits in " + s);
  if (neg) num = -num;
  return Rat(num, den);
}

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite value");
  int exp = 0;
  double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
  // 53 doublings make the mantissa integral
  for (int i = 0; i < 53 && m != std::floor(m); ++i) {
    m *= 2.0;
    --exp;
  }
  Int num = static_cast<long long>(m);
  Rat q(num);
  if (exp > 0) {
    q *= rat_pow(Rat(2), static_cast<unsigned>(exp));
  } else if (exp < 0) {
    q /= rat_pow(Rat(2), static_cast<unsigned>(-exp));
  }
  return q;
}

double rat_to_double(const Rat& q) { return q.convert_to<double>(); }

Int rat_floor(const Rat& q) {
  Int n = boost::multiprecision::numerator(q);
  Int d = boost::multiprecision::denominator(q);  // always > 0
  Int quot = n / d;
  if (n < 0 && quot * d != n) --quot;
  return quot;
}

Rat rat_pow(const Rat& q, unsigned e) {
  Rat result = 1;
  Rat base = q;
  while (e > 0) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1u;
  }
  return result;
}

std::string rat_to_decimal(const Rat& q, int digits) {
  Rat a = q < 0 ? Rat(-q) : q;
  Int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Int scaled = rat_floor(a * scale);
  std::string body = scaled.convert_to<std::string>();
  while (static_cast<int>(body.size()) <= digits) body.insert(body.begin(), '0');
  std::string out = body.substr(0, body.size() - digits);
  if (digits > 0) out += "." + body.substr(body.size() - digits);
  if (q < 0 && scaled != 0) out.insert(out.begin(), '-');
  return out;
}

}  // namespace turan

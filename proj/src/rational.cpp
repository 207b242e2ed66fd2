#include "sts/rational.hpp"

#include <stdexcept>

namespace sts {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw std::invalid_argument("floor_div: division by zero");
  BigInt q = a / b;
  BigInt r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

BigInt floor_rat(const Rational& x) {
  return floor_div(numerator(x), denominator(x));
}

BigInt ceil_rat(const Rational& x) { return -floor_rat(-x); }

long floor_long(const Rational& x) {
  BigInt f = floor_rat(x);
  return f.convert_to<long>();
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    BigInt p(s.substr(0, slash));
    BigInt q(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return Rational(p, q);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string frac = s.substr(dot + 1);
    if (frac.empty()) throw std::invalid_argument("parse_rational: bad decimal");
    std::string whole = s.substr(0, dot);
    bool neg = false;
    if (!whole.empty() && (whole[0] == '+' || whole[0] == '-')) {
      neg = whole[0] == '-';
      whole.erase(whole.begin());
    }
    BigInt p = whole.empty() ? BigInt(0) : BigInt(whole);
    BigInt q = 1;
    for (char c : frac) {
      if (c < '0' || c > '9')
        throw std::invalid_argument("parse_rational: bad decimal");
      p = p * 10 + (c - '0');
      q *= 10;
    }
    Rational r(p, q);
    return neg ? Rational(-r) : r;
  }
  return Rational(BigInt(s));
}

std::string format_rational(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

}  // namespace sts

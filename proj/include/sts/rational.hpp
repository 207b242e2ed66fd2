#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace sts {

/// Exact rational number; all scheduling arithmetic is carried out in this type.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Largest integer <= a/b (b != 0).
BigInt floor_div(const BigInt& a, const BigInt& b);

/// Largest integer <= x.
BigInt floor_rat(const Rational& x);

/// Smallest integer >= x.
BigInt ceil_rat(const Rational& x);

/// floor(x) as long; throws if out of range.
long floor_long(const Rational& x);

/// Parses "p/q", "p", or a plain decimal like "0.8" into an exact rational.
Rational parse_rational(const std::string& s);

/// Renders x as "p" or "p/q" in lowest terms.
std::string format_rational(const Rational& x);

}  // namespace sts

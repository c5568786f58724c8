#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace bellpoly {

/// Exact fraction, always stored in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// Parses "p", "-p" or "p/q". Throws InputError on malformed text or q = 0.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Exact conversion of a finite double (every finite double is a dyadic rational).
Rational from_double(double value);

/// Rank over the rationals, by Gaussian elimination.
std::size_t exact_rank(RationalMatrix rows);

/// Positive rescaling of `v` to an integer vector whose entries have gcd 1.
/// The zero vector is returned unchanged.
RationalVector primitive_integer(const RationalVector& v);

Rational dot(const RationalVector& a, const RationalVector& b);

}  // namespace bellpoly

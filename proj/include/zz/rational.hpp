#ifndef ZZ_RATIONAL_HPP
#define ZZ_RATIONAL_HPP

#include <optional>
#include <string>
#include <string_view>
#include <boost/multiprecision/gmp.hpp>

namespace zz {

// GMP rationals are canonicalized after every operation: lowest terms,
// positive denominator.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/** Text form "p/q", or "p" when q = 1. */
std::string to_string(const Rational& q);

/**
 * Parse `["-"] NAT ["/" NAT]`. Returns nothing on malformed text or a zero
 * denominator. The result is reduced, so "-2/4" reads as -1/2.
 */
std::optional<Rational> parse_rational(std::string_view text);

}   // namespace zz

#endif

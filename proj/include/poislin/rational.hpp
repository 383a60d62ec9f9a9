#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace poislin {

// GMP keeps mpq values canonical (lowest terms, positive denominator, 0/1)
// as long as every value is built through the mpq_class operators or is
// canonicalized after a raw numerator/denominator assignment.
using Rational = mpq_class;

/// Parses `p` or `p/q` with an optional leading sign. Throws on malformed
/// text or a zero denominator.
Rational parse_rational(std::string_view text);

/// `p` when the denominator is 1, otherwise `p/q`.
std::string to_string(const Rational& r);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_one(const Rational& r) { return r == 1; }

}  // namespace poislin

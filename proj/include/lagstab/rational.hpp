#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace lagstab {

using Rational = mpq_class;

/// Parses "a" or "a/b" (optional sign, surrounding blanks ignored). Throws
/// InvalidArgument on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

/// Comma-separated list of rationals, e.g. "1/4,-1/4".
std::vector<Rational> parse_rational_list(const std::string& text);

/// Canonical "a" or "a/b" form.
std::string format_rational(const Rational& q);

/// True iff q has denominator 1.
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace lagstab

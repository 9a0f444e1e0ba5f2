#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace fockmrf {

// Exact arbitrary-precision integers and rationals. cpp_rational keeps the
// fraction in lowest terms with a positive denominator, so the algebraic
// identities checked by this library (orthogonality factors, eigenvalues)
// hold exactly rather than to a floating tolerance.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Renders as "a" for integers, "a/b" otherwise.
std::string to_string(const Rational& r);

// Accepts "a", "a/b", decimal notation ("0.4", "-1.25") and an optional
// decimal exponent ("2.5e-3"). Decimal text is converted exactly.
Rational parse_rational(std::string_view text);

}  // namespace fockmrf

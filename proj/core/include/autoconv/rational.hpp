#ifndef AUTOCONV_RATIONAL_HPP
#define AUTOCONV_RATIONAL_HPP

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace autoconv {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Parse one nonnegative decimal numeral ("2", "1.5", ".22070312", "2.",
/// "1e-3", "2.5E2") into the exact rational it denotes.  Throws parse_error
/// for malformed tokens and invalid_input_error for negative values; the
/// caller supplies position info for file-level messages.
BigRat parse_decimal(std::string_view token);

/// Exact rational value of a finite double (mantissa times power of two).
BigRat rational_from_double(double x);

/// Fixed-point decimal rendering with `digits` places after the point,
/// rounded half away from zero.  The value must be nonnegative.
std::string decimal_string(const BigRat& value, int digits);

}  // namespace autoconv

#endif

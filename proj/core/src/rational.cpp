#include "autoconv/rational.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "autoconv/errors.hpp"

namespace autoconv {

namespace {

BigInt pow10(unsigned exp) {
    BigInt r = 1;
    BigInt base = 10;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

// Exponents beyond any value a double (or a sane coefficient file) can
// carry are rejected rather than materialized.
constexpr long kMaxExponent = 100000;

}  // namespace

BigRat parse_decimal(std::string_view token) {
    std::size_t pos = 0;
    const std::size_t len = token.size();
    auto fail = [&](const char* why) { throw parse_error(std::string(why) + ": '" + std::string(token) + "'", 0, 0); };

    if (len == 0) fail("empty numeric token");
    if (token[0] == '-') {
        throw invalid_input_error("negative coefficient: '" + std::string(token) + "'");
    }
    if (token[0] == '+') ++pos;

    BigInt mantissa = 0;
    int mantissa_digits = 0;
    int frac_digits = 0;

    while (pos < len && token[pos] >= '0' && token[pos] <= '9') {
        mantissa = mantissa * 10 + (token[pos] - '0');
        ++mantissa_digits;
        ++pos;
    }
    if (pos < len && token[pos] == '.') {
        ++pos;
        while (pos < len && token[pos] >= '0' && token[pos] <= '9') {
            mantissa = mantissa * 10 + (token[pos] - '0');
            ++mantissa_digits;
            ++frac_digits;
            ++pos;
        }
    }
    if (mantissa_digits == 0) fail("malformed numeral");

    long exponent = 0;
    if (pos < len && (token[pos] == 'e' || token[pos] == 'E')) {
        ++pos;
        bool neg = false;
        if (pos < len && (token[pos] == '+' || token[pos] == '-')) {
            neg = token[pos] == '-';
            ++pos;
        }
        if (pos == len) fail("malformed exponent");
        long e = 0;
        while (pos < len && token[pos] >= '0' && token[pos] <= '9') {
            e = e * 10 + (token[pos] - '0');
            if (e > kMaxExponent) fail("exponent out of range");
            ++pos;
        }
        exponent = neg ? -e : e;
    }
    if (pos != len) fail("malformed numeral");

    const long net = exponent - frac_digits;
    BigRat value;
    if (net >= 0) {
        value = BigRat(mantissa * pow10(static_cast<unsigned>(net)), 1);
    } else {
        value = BigRat(mantissa, pow10(static_cast<unsigned>(-net)));
    }
    return value;
}

BigRat rational_from_double(double x) {
    if (!std::isfinite(x)) throw invalid_input_error("rational_from_double: non-finite value");
    if (x == 0.0) return BigRat(0);
    int exp = 0;
    const double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
    const auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
    const int e2 = exp - 53;
    if (e2 >= 0) {
        return BigRat(BigInt(m) << e2, 1);
    }
    return BigRat(BigInt(m), BigInt(1) << -e2);
}

std::string decimal_string(const BigRat& value, int digits) {
    if (value < 0) throw invalid_input_error("decimal_string: negative value");
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    const BigInt scale = pow10(static_cast<unsigned>(digits));
    const BigInt rounded = (2 * num * scale + den) / (2 * den);  // half away from zero
    const BigInt whole = rounded / scale;
    const BigInt frac = rounded % scale;

    std::string frac_str = frac.str();
    frac_str.insert(frac_str.begin(), static_cast<std::size_t>(digits) - frac_str.size(), '0');
    return whole.str() + "." + frac_str;
}

}  // namespace autoconv

#ifndef AUTOCONV_CERTIFY_HPP
#define AUTOCONV_CERTIFY_HPP

#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "autoconv/rational.hpp"

namespace autoconv {

/// Exact rational coefficients plus the decimal strings they came from.
struct RationalHeights {
    std::vector<BigRat> values;
    std::vector<std::string> source_digits;

    std::size_t size() const { return values.size(); }
};

/// Whitespace-separated nonnegative decimals, '#' comments to end of line.
/// Each token becomes the exact rational it denotes.
RationalHeights parse_decimal_heights(std::istream& in);
RationalHeights parse_decimal_heights(const std::string& text);

/// Exact heights from doubles (each double is a dyadic rational).
RationalHeights heights_from_doubles(std::span<const double> h);

/// The three norms of the autoconvolution profile in exact arithmetic.
/// With carry_dx the grid spacing 1/(M+1) is carried through L2 and L1 as a
/// rational; without it dx is dropped (set to 1).  The objective ratio is
/// identical either way -- dx cancels -- and a test asserts exactly that.
struct ExactNorms {
    BigRat l2_squared;
    BigRat l1;
    BigRat linf;
    std::size_t linf_argmax = 0;
};
ExactNorms exact_norms(const RationalHeights& h, bool carry_dx = true);

/// A machine-checked statement: this explicit coefficient list achieves
/// objective value c_exact, and c_exact >= claimed_bound (or not), decided
/// in exact rational arithmetic.
struct Certificate {
    BigRat c_exact;
    std::string c_decimal;  ///< c_exact to 12 decimal places
    BigRat claimed_bound;
    bool passes = false;
    std::size_t n_intervals = 0;
    std::size_t argmax_index = 0;
};

/// Exact objective value of the heights.
BigRat exact_c(const RationalHeights& h);

/// Evaluate exactly and compare against the claimed bound.  Throws
/// degenerate_input_error for identically-zero input.
Certificate exact_objective(const RationalHeights& h, const BigRat& claimed_bound);

/// Parse the coefficient file, evaluate exactly, compare with the decimal
/// bound.  I/O and parse failures carry file context.
Certificate verify_claim(const std::filesystem::path& heights_file, const std::string& bound);

/// Structured-text rendering of a certificate (key: value lines).
std::string render_certificate(const Certificate& cert);

}  // namespace autoconv

#endif

#ifndef AUTOCONV_ERRORS_HPP
#define AUTOCONV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace autoconv {

/// Structurally bad input: empty height vector, non-finite entries,
/// too few knots to interpolate, bad configuration values.
struct invalid_input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Identically-zero input where the objective would be 0/0.  Kept distinct
/// from numeric_error so configuration bugs are not mistaken for overflow.
struct degenerate_input_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Non-finite value produced by otherwise valid input (overflow of the
/// double-precision pipeline).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed token while reading coefficient text.  Carries the 1-based
/// line and token position of the offending input.
struct parse_error : std::runtime_error {
    parse_error(const std::string& what, int line, int token_index)
        : std::runtime_error(what), line(line), token_index(token_index) {}
    int line = 0;
    int token_index = 0;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace autoconv

#endif

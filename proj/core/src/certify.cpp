#include "autoconv/certify.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "autoconv/errors.hpp"
#include "autoconv/io.hpp"
#include "autoconv/parallel.hpp"

namespace autoconv {

namespace {

constexpr std::size_t kParallelExactThreshold = 512;

// The heights are cleared to a common denominator first; the whole profile
// computation then runs on big integers, which is far cheaper than
// normalizing rationals inside the double sum.  The scale factor drops out
// of the objective ratio.
struct ScaledHeights {
    std::vector<BigInt> ints;
    BigInt denom = 1;
};

ScaledHeights scale_to_integers(const RationalHeights& h) {
    ScaledHeights scaled;
    scaled.denom = 1;
    for (const BigRat& v : h.values) {
        const BigInt d = boost::multiprecision::denominator(v);
        scaled.denom = boost::multiprecision::lcm(scaled.denom, d);
    }
    scaled.ints.reserve(h.values.size());
    for (const BigRat& v : h.values) {
        scaled.ints.push_back(boost::multiprecision::numerator(v) *
                              (scaled.denom / boost::multiprecision::denominator(v)));
    }
    return scaled;
}

std::vector<BigInt> convolve_exact(const std::vector<BigInt>& n) {
    const std::size_t size = n.size();
    std::vector<BigInt> conv(2 * size - 1);
    auto one_entry = [&](std::size_t k) {
        const std::size_t i_lo = k >= size ? k - size + 1 : 0;
        const std::size_t i_hi = std::min(k, size - 1);
        BigInt acc = 0;
        for (std::size_t i = i_lo; i <= i_hi; ++i) acc += n[i] * n[k - i];
        conv[k] = std::move(acc);
    };
    if (size >= kParallelExactThreshold) {
        parallel_for_index(conv.size(), one_entry);
    } else {
        for (std::size_t k = 0; k < conv.size(); ++k) one_entry(k);
    }
    return conv;
}

struct ExactProfileSums {
    BigInt quad;  ///< sum of a^2 + a*b + b^2 over zero-padded segments
    BigInt sum;   ///< sum of conv entries
    BigInt max;   ///< largest conv entry
    std::size_t argmax = 0;
    std::size_t m = 0;  ///< profile length 2N-1
};

ExactProfileSums profile_sums(const std::vector<BigInt>& conv) {
    ExactProfileSums s;
    s.m = conv.size();
    s.quad = 0;
    s.sum = 0;
    s.max = conv[0];
    BigInt prev = 0;
    for (std::size_t k = 0; k < conv.size(); ++k) {
        const BigInt& cur = conv[k];
        s.quad += prev * prev + prev * cur + cur * cur;
        s.sum += cur;
        if (cur > s.max) {
            s.max = cur;
            s.argmax = k;
        }
        prev = cur;
    }
    s.quad += prev * prev;
    return s;
}

ExactProfileSums evaluate(const RationalHeights& h) {
    if (h.values.empty()) throw invalid_input_error("exact_objective: empty height vector");
    const ScaledHeights scaled = scale_to_integers(h);
    bool any_positive = false;
    for (const BigInt& v : scaled.ints) {
        if (v < 0) throw invalid_input_error("exact_objective: negative height");
        if (v > 0) any_positive = true;
    }
    if (!any_positive) throw degenerate_input_error("exact_objective: heights are identically zero");
    return profile_sums(convolve_exact(scaled.ints));
}

}  // namespace

RationalHeights parse_decimal_heights(std::istream& in) {
    RationalHeights heights;
    for (const NumericToken& token : tokenize_numeric_stream(in)) {
        try {
            heights.values.push_back(parse_decimal(token.text));
        } catch (const parse_error& e) {
            throw parse_error(std::string(e.what()) + " (line " + std::to_string(token.line) +
                                  ", token " + std::to_string(token.token_index) + ")",
                              token.line, token.token_index);
        } catch (const invalid_input_error& e) {
            throw invalid_input_error(std::string(e.what()) + " (line " + std::to_string(token.line) +
                                      ", token " + std::to_string(token.token_index) + ")");
        }
        heights.source_digits.push_back(token.text);
    }
    return heights;
}

RationalHeights parse_decimal_heights(const std::string& text) {
    std::istringstream in(text);
    return parse_decimal_heights(in);
}

RationalHeights heights_from_doubles(std::span<const double> h) {
    RationalHeights heights;
    heights.values.reserve(h.size());
    heights.source_digits.reserve(h.size());
    for (double v : h) {
        if (v < 0.0) throw invalid_input_error("heights_from_doubles: negative height");
        heights.values.push_back(rational_from_double(v));
        heights.source_digits.push_back(format_double(v));
    }
    return heights;
}

ExactNorms exact_norms(const RationalHeights& h, bool carry_dx) {
    const ExactProfileSums s = evaluate(h);
    const ScaledHeights scaled = scale_to_integers(h);
    const BigInt d2 = scaled.denom * scaled.denom;
    const BigInt d4 = d2 * d2;

    ExactNorms norms;
    const BigInt m_plus_1 = carry_dx ? BigInt(s.m + 1) : BigInt(1);
    norms.l2_squared = BigRat(s.quad, 3 * m_plus_1 * d4);
    norms.l1 = BigRat(s.sum, m_plus_1 * d2);
    norms.linf = BigRat(s.max, d2);
    norms.linf_argmax = s.argmax;
    return norms;
}

BigRat exact_c(const RationalHeights& h) {
    // dx cancels in the ratio: c = quad / (3 * sum * max), independent of
    // the common-denominator scale as well.
    const ExactProfileSums s = evaluate(h);
    return BigRat(s.quad, 3 * s.sum * s.max);
}

Certificate exact_objective(const RationalHeights& h, const BigRat& claimed_bound) {
    const ExactProfileSums s = evaluate(h);
    Certificate cert;
    cert.c_exact = BigRat(s.quad, 3 * s.sum * s.max);
    if (cert.c_exact > 1) throw numeric_error("internal: objective exceeds the Hoelder bound");
    cert.c_decimal = decimal_string(cert.c_exact, 12);
    cert.claimed_bound = claimed_bound;
    cert.passes = cert.c_exact >= claimed_bound;
    cert.n_intervals = h.values.size();
    cert.argmax_index = s.argmax;
    return cert;
}

Certificate verify_claim(const std::filesystem::path& heights_file, const std::string& bound) {
    std::ifstream in(heights_file);
    if (!in) throw io_error("cannot open coefficient file: " + heights_file.string());
    RationalHeights heights;
    try {
        heights = parse_decimal_heights(in);
    } catch (const parse_error& e) {
        throw parse_error(heights_file.string() + ": " + e.what(), e.line, e.token_index);
    } catch (const invalid_input_error& e) {
        throw invalid_input_error(heights_file.string() + ": " + e.what());
    }
    if (heights.values.empty()) {
        throw invalid_input_error(heights_file.string() + ": no coefficients found");
    }
    return exact_objective(heights, parse_decimal(bound));
}

std::string render_certificate(const Certificate& cert) {
    std::ostringstream out;
    const BigInt num = boost::multiprecision::numerator(cert.c_exact);
    const BigInt den = boost::multiprecision::denominator(cert.c_exact);
    const BigInt bnum = boost::multiprecision::numerator(cert.claimed_bound);
    const BigInt bden = boost::multiprecision::denominator(cert.claimed_bound);
    out << "n_intervals: " << cert.n_intervals << "\n"
        << "c_exact: " << num.str() << "/" << den.str() << "\n"
        << "c_decimal: " << cert.c_decimal << "\n"
        << "claimed_bound: " << bnum.str() << "/" << bden.str() << " (= "
        << decimal_string(cert.claimed_bound, 12) << ")\n"
        << "argmax_index: " << cert.argmax_index << "\n"
        << "passes: " << (cert.passes ? "true" : "false") << "\n";
    return out.str();
}

}  // namespace autoconv

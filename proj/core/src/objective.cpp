#include "autoconv/objective.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "autoconv/errors.hpp"
#include "autoconv/parallel.hpp"

namespace autoconv {

namespace detail {

void autoconvolve_into(std::span<const double> h, std::vector<double>& conv) {
    const std::size_t n = h.size();
    conv.assign(2 * n - 1, 0.0);
    auto one_entry = [&](std::size_t k) {
        const std::size_t i_lo = k >= n ? k - n + 1 : 0;
        const std::size_t i_hi = std::min(k, n - 1);
        double acc = 0.0;
        for (std::size_t i = i_lo; i <= i_hi; ++i) acc += h[i] * h[k - i];
        conv[k] = acc;
    };
    if (n >= kParallelConvThreshold) {
        parallel_for_index(conv.size(), one_entry);
    } else {
        for (std::size_t k = 0; k < conv.size(); ++k) one_entry(k);
    }
}

NormTriple profile_norms_raw(std::span<const double> conv, double dx) {
    NormTriple norms;
    const std::size_t m = conv.size();
    // Simpson-style segment sum over the zero-padded knots [0, conv..., 0]:
    // M+2 samples, M+1 segments, each contributing a^2 + a*b + b^2.
    double quad = 0.0;
    double prev = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double cur = conv[k];
        quad += prev * prev + prev * cur + cur * cur;
        prev = cur;
    }
    quad += prev * prev;  // closing segment back to zero
    norms.l2_squared = dx / 3.0 * quad;

    double sum = 0.0;
    double maxv = conv[0];
    std::size_t argmax = 0;
    for (std::size_t k = 0; k < m; ++k) {
        sum += conv[k];
        if (conv[k] > maxv) {  // strict: first occurrence wins
            maxv = conv[k];
            argmax = k;
        }
    }
    norms.l1 = dx * sum;
    norms.linf = maxv;
    norms.linf_argmax = argmax;
    return norms;
}

double objective_value(std::span<const double> h_clipped) {
    static thread_local std::vector<double> conv;
    autoconvolve_into(h_clipped, conv);
    const double dx = 1.0 / (static_cast<double>(conv.size()) + 1.0);
    const NormTriple norms = profile_norms_raw(conv, dx);
    if (norms.linf == 0.0) throw degenerate_input_error("objective_c: heights are identically zero");
    const double c = norms.l2_squared / (norms.l1 * norms.linf);
    if (!std::isfinite(c)) throw numeric_error("objective_c: non-finite value (overflow)");
    return c;
}

}  // namespace detail

namespace {

void check_heights(const StepFunction& h) {
    if (h.heights.empty()) throw invalid_input_error("autoconvolve: empty height vector");
    for (double v : h.heights) {
        if (!std::isfinite(v)) throw invalid_input_error("autoconvolve: non-finite height");
    }
}

}  // namespace

ConvolutionProfile autoconvolve(const StepFunction& h) {
    check_heights(h);
    ConvolutionProfile profile;
    detail::autoconvolve_into(h.heights, profile.values);
    profile.dx = 1.0 / (static_cast<double>(profile.values.size()) + 1.0);
    return profile;
}

double simpson_l2(const ConvolutionProfile& profile) {
    return detail::profile_norms_raw(profile.values, profile.dx).l2_squared;
}

double l1_riemann(const ConvolutionProfile& profile) {
    return detail::profile_norms_raw(profile.values, profile.dx).l1;
}

std::pair<double, std::size_t> linf_max(const ConvolutionProfile& profile) {
    const NormTriple norms = detail::profile_norms_raw(profile.values, profile.dx);
    return {norms.linf, norms.linf_argmax};
}

NormTriple profile_norms(const ConvolutionProfile& profile) {
    return detail::profile_norms_raw(profile.values, profile.dx);
}

double objective_c(const StepFunction& h) {
    check_heights(h);
    std::vector<double> clipped(h.heights.size());
    std::transform(h.heights.begin(), h.heights.end(), clipped.begin(),
                   [](double v) { return std::max(0.0, v); });
    return detail::objective_value(clipped);
}

}  // namespace autoconv

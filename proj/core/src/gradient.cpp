#include "autoconv/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "autoconv/errors.hpp"
#include "autoconv/objective.hpp"
#include "autoconv/parallel.hpp"

namespace autoconv {

namespace detail {

namespace {

constexpr double kTieRelTol = 1e-12;

// Backpropagation through C = l2 / (l1 * linf) with
//   conv_k        = sum_{i+j=k} h_i h_j
//   l2            = (dx/3) * sum over padded segments of a^2 + a*b + b^2
//   l1            = dx * sum conv
//   linf          = conv at the first argmax (subgradient choice)
// which gives dl2/dconv_k = (dx/3)(left + 4*conv_k + right) with zero
// neighbors at the pad, dl1/dconv_k = dx, dlinf/dconv_k = [k == argmax],
// and dconv_k/dh_i = 2 h_{k-i}.
void profile_gradient(std::span<const double> conv, double dx, const NormTriple& norms,
                      double c, std::vector<double>& g_profile) {
    const std::size_t m = conv.size();
    g_profile.resize(m);
    const double d_l2 = 1.0 / (norms.l1 * norms.linf);
    const double d_l1 = -c / norms.l1;
    const double d_linf = -c / norms.linf;
    for (std::size_t k = 0; k < m; ++k) {
        const double left = k > 0 ? conv[k - 1] : 0.0;
        const double right = k + 1 < m ? conv[k + 1] : 0.0;
        g_profile[k] = d_l2 * (dx / 3.0) * (left + 4.0 * conv[k] + right) + d_l1 * dx;
    }
    g_profile[norms.linf_argmax] += d_linf;
}

bool has_argmax_tie(std::span<const double> conv, const NormTriple& norms) {
    int hits = 0;
    for (double v : conv) {
        if (norms.linf - v <= kTieRelTol * norms.linf) {
            if (++hits > 1) return true;
        }
    }
    return false;
}

}  // namespace

ValueGrad value_and_ascent_gradient(std::span<const double> h, std::span<double> grad_out) {
    static thread_local std::vector<double> conv;
    static thread_local std::vector<double> g_profile;

    const std::size_t n = h.size();
    autoconvolve_into(h, conv);
    const std::size_t m = conv.size();
    const double dx = 1.0 / (static_cast<double>(m) + 1.0);
    const NormTriple norms = profile_norms_raw(conv, dx);
    if (norms.linf == 0.0) {
        throw degenerate_input_error("grad_objective: heights are identically zero");
    }
    const double c = norms.l2_squared / (norms.l1 * norms.linf);
    if (!std::isfinite(c)) throw numeric_error("grad_objective: non-finite value (overflow)");

    profile_gradient(conv, dx, norms, c, g_profile);

    // g_i = 2 * sum_j g_profile[i + j] * h_j  (a correlation; k = i + j
    // ranges over the conv entries h_i touches).  The scratch is
    // thread_local, so grab a plain pointer before the parallel loop --
    // worker threads must read this thread's buffer, not their own.
    const double* gp_base = g_profile.data();
    auto one_entry = [&, gp_base](std::size_t i) {
        double acc = 0.0;
        const double* gp = gp_base + i;
        for (std::size_t j = 0; j < n; ++j) acc += gp[j] * h[j];
        grad_out[i] = 2.0 * acc;
    };
    if (n >= kParallelConvThreshold) {
        parallel_for_index(n, one_entry);
    } else {
        for (std::size_t i = 0; i < n; ++i) one_entry(i);
    }

    return {c, has_argmax_tie(conv, norms)};
}

}  // namespace detail

GradientReport grad_objective(const StepFunction& h) {
    if (h.heights.empty()) throw invalid_input_error("grad_objective: empty height vector");
    std::vector<double> clipped(h.heights.size());
    std::transform(h.heights.begin(), h.heights.end(), clipped.begin(),
                   [](double v) { return std::max(0.0, v); });

    GradientReport report;
    report.gradient.resize(clipped.size());
    const detail::ValueGrad vg = detail::value_and_ascent_gradient(clipped, report.gradient);
    report.value = vg.value;
    report.argmax_tied = vg.argmax_tied;
    return report;
}

FiniteDifferenceResult finite_difference_gradient(const StepFunction& h, double step) {
    if (step <= 0.0) throw invalid_input_error("finite_difference_gradient: step must be > 0");
    FiniteDifferenceResult result;
    const std::size_t n = h.heights.size();
    result.gradient.resize(n);
    StepFunction probe = h;
    for (std::size_t i = 0; i < n; ++i) {
        const double orig = probe.heights[i];
        const double delta = step * std::max(1.0, std::abs(orig));
        probe.heights[i] = orig + delta;
        const double up = objective_c(probe);
        probe.heights[i] = orig - delta;
        const double down = objective_c(probe);
        probe.heights[i] = orig;
        if (up == down) result.zero_difference_warning = true;
        result.gradient[i] = (up - down) / (2.0 * delta);
    }
    return result;
}

}  // namespace autoconv

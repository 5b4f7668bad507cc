#include "autoconv/refine.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "autoconv/errors.hpp"
#include "autoconv/gradient.hpp"
#include "autoconv/objective.hpp"

namespace autoconv {

void validate(const RefineConfig& config) {
    if (config.lr <= 0.0) throw invalid_input_error("refine: lr must be > 0");
    if (config.iterations < 1) throw invalid_input_error("refine: iterations must be >= 1");
    if (config.log_every < 1) throw invalid_input_error("refine: log_every must be >= 1");
    if (config.upsample_rounds < 0) throw invalid_input_error("refine: upsample_rounds must be >= 0");
    if (config.upsample_factor < 2) throw invalid_input_error("refine: upsample_factor must be >= 2");
}

StepFunction upsample_linear(const StepFunction& h, int factor) {
    const std::size_t n = h.heights.size();
    if (n < 2) throw invalid_input_error("upsample: need at least 2 knots to interpolate");
    if (factor < 2) throw invalid_input_error("upsample: factor must be >= 2");

    // Old samples sit at N points spanning the interval endpoint to
    // endpoint, new samples at factor*N points on the same span.  Working in
    // index units: new point j maps to u = j*(N-1)/(factor*N-1) on the old
    // grid.
    const std::size_t n_new = static_cast<std::size_t>(factor) * n;
    std::vector<double> out(n_new);
    const double scale = static_cast<double>(n - 1) / static_cast<double>(n_new - 1);
    for (std::size_t j = 0; j < n_new; ++j) {
        const double u = static_cast<double>(j) * scale;
        std::size_t i = static_cast<std::size_t>(u);
        if (i >= n - 1) i = n - 2;
        const double t = u - static_cast<double>(i);
        out[j] = h.heights[i] + t * (h.heights[i + 1] - h.heights[i]);
    }
    return StepFunction(std::move(out), h.support_halfwidth);
}

StepFunction upsample_2x(const StepFunction& h) { return upsample_linear(h, 2); }

AscendResult ascend(const StepFunction& h, const RefineConfig& config) {
    validate(config);
    const std::size_t n = h.heights.size();
    if (n == 0) throw invalid_input_error("ascend: empty height vector");

    std::vector<double> cur(n);
    std::transform(h.heights.begin(), h.heights.end(), cur.begin(),
                   [](double v) { return std::max(0.0, v); });

    AscendResult result;
    std::vector<double> grad(n);
    std::vector<double> best = cur;
    double best_c = -1.0;

    for (long long i = 0; i < config.iterations; ++i) {
        detail::ValueGrad vg;
        try {
            vg = detail::value_and_ascent_gradient(cur, grad);
        } catch (const degenerate_input_error&) {
            throw numeric_error("ascend: degenerate iterate at iteration " + std::to_string(i));
        }
        if (!std::isfinite(vg.value)) {
            throw numeric_error("ascend: non-finite objective at iteration " + std::to_string(i));
        }
        if (config.track_best && vg.value > best_c) {
            best_c = vg.value;
            best = cur;
        }
        for (std::size_t k = 0; k < n; ++k) {
            cur[k] = std::max(0.0, cur[k] + config.lr * grad[k]);
        }
        if ((i + 1) % config.log_every == 0) {
            result.trace.push_back({i + 1, vg.value});
        }
    }

    const double final_cur_c = detail::objective_value(cur);
    if (config.track_best && best_c > final_cur_c) {
        result.heights = StepFunction(std::move(best), h.support_halfwidth);
        result.final_c = best_c;
    } else {
        result.heights = StepFunction(std::move(cur), h.support_halfwidth);
        result.final_c = final_cur_c;
    }
    return result;
}

StepFunction trim_zeros(const StepFunction& h) {
    const auto& v = h.heights;
    std::size_t lo = 0;
    std::size_t hi = v.size();
    while (lo < hi && v[lo] == 0.0) ++lo;
    while (hi > lo && v[hi - 1] == 0.0) --hi;
    if (lo == hi) throw invalid_input_error("trim_zeros: all heights are zero");
    return StepFunction(std::vector<double>(v.begin() + lo, v.begin() + hi), h.support_halfwidth);
}

RefineResult refine_pipeline(const StepFunction& h, const RefineConfig& config) {
    validate(config);
    const double input_c = objective_c(h);

    StepFunction cur = h;
    RefineResult result;
    long long offset = 0;

    const int passes = std::max(1, config.upsample_rounds);
    for (int round = 0; round < passes; ++round) {
        if (config.upsample_rounds > 0) cur = upsample_linear(cur, config.upsample_factor);
        AscendResult step = ascend(cur, config);
        cur = std::move(step.heights);
        for (const TracePoint& p : step.trace) {
            result.trace.push_back({offset + p.iteration, p.c});
        }
        offset += config.iterations;
    }

    result.heights = trim_zeros(cur);
    result.c = objective_c(result.heights);
    result.regressed = result.c < input_c;
    return result;
}

}  // namespace autoconv

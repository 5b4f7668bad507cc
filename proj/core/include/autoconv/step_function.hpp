#ifndef AUTOCONV_STEP_FUNCTION_HPP
#define AUTOCONV_STEP_FUNCTION_HPP

#include <cstddef>
#include <vector>

namespace autoconv {

/// A nonnegative step function: N equal-width intervals spanning
/// [-support_halfwidth, support_halfwidth], one height per interval.
/// The objective is invariant to the support width; it only matters when
/// exporting plot coordinates.
struct StepFunction {
    std::vector<double> heights;
    double support_halfwidth = 0.25;

    StepFunction() = default;
    explicit StepFunction(std::vector<double> h, double halfwidth = 0.25)
        : heights(std::move(h)), support_halfwidth(halfwidth) {}

    std::size_t size() const { return heights.size(); }
};

/// Discrete autoconvolution of a height vector: M = 2N-1 unnormalized
/// values conv_k = sum_{i+j=k} h_i h_j, with grid spacing dx = 1/(M+1).
/// These are the knot values of the piecewise-linear f*f up to one uniform
/// scale factor w = support_width/N, which cancels in the objective ratio.
struct ConvolutionProfile {
    std::vector<double> values;
    double dx = 0.0;

    std::size_t size() const { return values.size(); }
};

/// The three norms of the piecewise-linear interpolant of a profile,
/// plus the first index attaining the maximum.
struct NormTriple {
    double l2_squared = 0.0;
    double l1 = 0.0;
    double linf = 0.0;
    std::size_t linf_argmax = 0;
};

}  // namespace autoconv

#endif

#ifndef AUTOCONV_OBJECTIVE_HPP
#define AUTOCONV_OBJECTIVE_HPP

#include <span>
#include <utility>
#include <vector>

#include "autoconv/step_function.hpp"

namespace autoconv {

/// Direct O(N^2) discrete autoconvolution.  Deterministic summation order
/// per output entry, so results do not depend on the number of worker
/// threads.  Throws invalid_input_error on an empty or non-finite input.
ConvolutionProfile autoconvolve(const StepFunction& h);

/// Exact integral of the square of the piecewise-linear interpolant of the
/// profile padded with one zero at each end: (dx/3) * sum of a^2 + a*b + b^2
/// over consecutive knot pairs.  Exact for this integrand, which is why the
/// float and exact-rational paths can agree to full precision.
double simpson_l2(const ConvolutionProfile& profile);

/// dx * sum of the profile values.  Equals the trapezoid integral of the
/// zero-padded interpolant.
double l1_riemann(const ConvolutionProfile& profile);

/// Maximum profile value and the first index attaining it.
std::pair<double, std::size_t> linf_max(const ConvolutionProfile& profile);

/// All three norms in one pass.
NormTriple profile_norms(const ConvolutionProfile& profile);

/// The objective C(h) = l2_squared / (l1 * linf) of the clipped heights.
/// Scale invariant and bounded above by 1 (Hoelder).  Throws
/// degenerate_input_error when the clipped heights are identically zero and
/// numeric_error when intermediate values overflow to non-finite.
double objective_c(const StepFunction& h);

namespace detail {

/// Below this size the direct convolution (and the gradient correlation)
/// run serially; the per-entry work is too small to amortize a parallel
/// region.  Entries are fixed-order sums either way, so results are
/// thread-count independent.
inline constexpr std::size_t kParallelConvThreshold = 768;

/// Core kernels operating on raw spans; `h` must already be clipped to be
/// nonnegative.  Used by the gradient/search/refine hot paths to avoid
/// repeated allocation; `conv` is resized to 2N-1.
void autoconvolve_into(std::span<const double> h, std::vector<double>& conv);

NormTriple profile_norms_raw(std::span<const double> conv, double dx);

/// Objective of clipped heights with scratch reuse (thread-local buffer).
double objective_value(std::span<const double> h_clipped);

}  // namespace detail

}  // namespace autoconv

#endif

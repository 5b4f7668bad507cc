#ifndef AUTOCONV_GRADIENT_HPP
#define AUTOCONV_GRADIENT_HPP

#include <span>
#include <vector>

#include "autoconv/step_function.hpp"

namespace autoconv {

/// Ascent gradient of the objective together with its value.
struct GradientReport {
    std::vector<double> gradient;  ///< dC/dh_i at the clipped heights
    double value = 0.0;            ///< C at the clipped heights
    bool argmax_tied = false;      ///< max of the profile attained at >1 index
                                   ///< within 1e-12 relative
};

/// Closed-form chain-rule gradient of C(h).  Heights are clipped at zero
/// before evaluation; the returned gradient is the interior gradient at the
/// clipped point (projection onto the nonnegative orthant is the optimizer's
/// job, not this function's).  The L-infinity term uses the subgradient of
/// the first argmax index; near-ties are flagged, not averaged.
GradientReport grad_objective(const StepFunction& h);

struct FiniteDifferenceResult {
    std::vector<double> gradient;
    /// Set when some coordinate saw C(h+d) == C(h-d) exactly in floating
    /// point, i.e. the step was too small to resolve a difference.
    bool zero_difference_warning = false;
};

/// Central-difference gradient of objective_c, coordinate by coordinate,
/// with per-coordinate step `step * max(1, |h_i|)`.  Test oracle for
/// grad_objective; intentionally routed through the public objective only.
FiniteDifferenceResult finite_difference_gradient(const StepFunction& h, double step);

namespace detail {

struct ValueGrad {
    double value = 0.0;
    bool argmax_tied = false;
};

/// Fused value + ascent gradient on raw spans.  `h` must be clipped
/// (all entries >= 0); `grad_out.size() == h.size()`.  Thread-safe, uses
/// thread-local scratch.
ValueGrad value_and_ascent_gradient(std::span<const double> h, std::span<double> grad_out);

}  // namespace detail

}  // namespace autoconv

#endif

#ifndef AUTOCONV_REFINE_HPP
#define AUTOCONV_REFINE_HPP

#include <vector>

#include "autoconv/step_function.hpp"

namespace autoconv {

/// Settings for the high-resolution refinement stage: plain projected
/// gradient ascent (no Adam) between upsampling rounds.
struct RefineConfig {
    double lr = 3e-2;
    long long iterations = 200000;  ///< ascent steps per round
    long long log_every = 1000;
    int upsample_rounds = 2;   ///< each round multiplies resolution by upsample_factor
    int upsample_factor = 2;   ///< 2 for the usual doubling; 4 for single-shot 4x
    bool track_best = false;   ///< return best-so-far instead of the final iterate
};

void validate(const RefineConfig& config);

/// Linear-interpolation upsampling onto a grid with `factor` times as many
/// points.  Both grids span the same interval endpoint-to-endpoint, so this
/// is pure index-space interpolation.  Requires N >= 2.
StepFunction upsample_linear(const StepFunction& h, int factor);

/// The common doubling case.
StepFunction upsample_2x(const StepFunction& h);

struct TracePoint {
    long long iteration = 0;
    double c = 0.0;
};

struct AscendResult {
    StepFunction heights;  ///< final iterate (or best-so-far with track_best)
    double final_c = 0.0;  ///< objective of `heights`
    std::vector<TracePoint> trace;
};

/// h <- max(0, h + lr * grad C), `iterations` times, logging C every
/// log_every steps.  Aborts with numeric_error naming the iteration if the
/// objective goes non-finite.
AscendResult ascend(const StepFunction& h, const RefineConfig& config);

/// Drops maximal runs of exactly-zero heights from both ends; interior
/// zeros stay.  The objective is unchanged (zero-padding invariance).
StepFunction trim_zeros(const StepFunction& h);

struct RefineResult {
    StepFunction heights;
    double c = 0.0;
    /// Set when the pipeline finished below the input's objective instead of
    /// silently returning a worse function.
    bool regressed = false;
    std::vector<TracePoint> trace;  ///< concatenated rounds, global step index
};

/// upsample_rounds alternations of upsampling and ascent, then trim_zeros.
/// With upsample_rounds = 0 this is a pure ascent + trim.
RefineResult refine_pipeline(const StepFunction& h, const RefineConfig& config);

}  // namespace autoconv

#endif

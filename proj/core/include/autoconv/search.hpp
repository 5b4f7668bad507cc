#ifndef AUTOCONV_SEARCH_HPP
#define AUTOCONV_SEARCH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "autoconv/step_function.hpp"

namespace autoconv {

/// Hyperparameters of the batched four-phase optimizer.
///
/// Defaults are the reference settings: 768 intervals is the documented
/// reproduction resolution (1024 also in common use), Adam at 3e-2 for the
/// noisy exploration phase and 5e-3 after, gradient-noise schedule
/// eta/(t+1)^gamma with gamma = 0.55 (0.65 appears in some write-ups of the
/// same schedule; both are accepted here), elitist respawn every 20k steps
/// keeping the top half.
struct SearchConfig {
    int n_intervals = 768;
    int batch_size = 1024;
    long long iterations = 100000;
    long long explore_steps = 30000;
    double lr_explore = 3e-2;
    double lr_exploit = 5e-3;
    double eta = 1e-3;
    double gamma = 0.55;
    long long respawn_period = 20000;
    double keep_frac = 0.5;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_epsilon = 1e-8;
    std::uint64_t seed = 0;
};

/// Throws invalid_input_error on out-of-range values.
void validate(const SearchConfig& config);

struct SearchEvent {
    long long step = 0;
    int candidate = 0;
    std::string what;
};

/// State of one batch: candidate heights, Adam moments, and per-candidate
/// best snapshots.  Heights are stored row-major, batch x n.
struct BatchState {
    int n = 0;
    int batch = 0;
    std::vector<double> heights;
    std::vector<double> adam_m;
    std::vector<double> adam_v;
    long long adam_step = 0;   ///< steps since the moments were last reset
    long long step_count = 0;  ///< total optimizer steps taken
    std::vector<double> best_value;
    std::vector<double> best_heights;
    std::uint64_t seed = 0;
    std::vector<SearchEvent> events;

    std::span<double> candidate(int b) {
        return {heights.data() + static_cast<std::size_t>(b) * n, static_cast<std::size_t>(n)};
    }
    std::span<const double> candidate(int b) const {
        return {heights.data() + static_cast<std::size_t>(b) * n, static_cast<std::size_t>(n)};
    }
    std::span<const double> best_candidate(int b) const {
        return {best_heights.data() + static_cast<std::size_t>(b) * n, static_cast<std::size_t>(n)};
    }
};

/// Gradient-noise standard deviation at step t: eta / (t+1)^gamma.
double noise_sigma(long long t, const SearchConfig& config);

/// Fresh batch: heights uniform on [0,1) from per-candidate counter-based
/// streams, Adam moments zero, bests empty (-inf).
BatchState init_batch(const SearchConfig& config);

/// One noisy high-rate Adam step (phase 1).  Per candidate: evaluate value
/// and ascent gradient at the clipped heights, update the candidate's best
/// snapshot if the value improved, add Gaussian noise of deviation
/// noise_sigma(t) to the gradient, take an Adam step at lr_explore, project
/// heights onto [0, inf).  A candidate whose evaluation goes non-finite is
/// respawned from fresh uniforms and logged; the batch continues.
void explore_step(BatchState& state, const SearchConfig& config);

/// Phase 2 step: same as explore_step with lr_exploit and no noise.
void exploit_step(BatchState& state, const SearchConfig& config);

/// Keep the ceil(batch * keep_frac) candidates with highest current C in
/// place, replace the rest with fresh uniforms, and reset Adam moments for
/// the whole batch (the optimizer restarts in the same phase).  Bests are
/// untouched.
void elitist_respawn(BatchState& state, const SearchConfig& config);

struct HistoryPoint {
    long long iteration = 0;
    double best_c = 0.0;
};

struct SearchResult {
    StepFunction best;
    double best_c = 0.0;
    std::vector<HistoryPoint> history;
    std::vector<SearchEvent> events;
    double wall_seconds = 0.0;
};

/// Checkpoint cadence of the best-C history.
inline constexpr long long kHistoryEvery = 100;

/// Full pipeline: explore_steps noisy steps, exploitation for the rest,
/// elitist respawn every respawn_period steps.  Returns the best candidate
/// ever seen, its objective value, and the checkpointed history.  Fails
/// (numeric_error) only if an entire batch degenerates in one step.
SearchResult run_search(const SearchConfig& config);

namespace detail {

/// One bias-corrected Adam ascent step followed by projection onto
/// [0, inf).  bias1/bias2 are the precomputed correction divisors
/// 1 - beta^t.  Zero gradient with zero moments is a no-op.
void adam_project_update(std::span<double> h, std::span<double> m, std::span<double> v,
                         std::span<const double> g, double lr, double beta1, double beta2,
                         double epsilon, double bias1, double bias2);

}  // namespace detail

}  // namespace autoconv

#endif

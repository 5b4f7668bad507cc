#include "autoconv/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "autoconv/errors.hpp"
#include "autoconv/gradient.hpp"
#include "autoconv/objective.hpp"
#include "autoconv/parallel.hpp"
#include "autoconv/rng.hpp"

namespace autoconv {

void validate(const SearchConfig& config) {
    if (config.n_intervals < 1) throw invalid_input_error("search: n_intervals must be >= 1");
    if (config.batch_size < 1) throw invalid_input_error("search: batch_size must be >= 1");
    if (config.iterations < 1) throw invalid_input_error("search: iterations must be >= 1");
    if (config.explore_steps < 0 || config.explore_steps > config.iterations)
        throw invalid_input_error("search: explore_steps must be in [0, iterations]");
    if (config.lr_explore <= 0.0 || config.lr_exploit <= 0.0)
        throw invalid_input_error("search: learning rates must be > 0");
    if (config.eta < 0.0) throw invalid_input_error("search: eta must be >= 0");
    if (config.respawn_period < 1) throw invalid_input_error("search: respawn_period must be >= 1");
    if (!(config.keep_frac > 0.0 && config.keep_frac <= 1.0))
        throw invalid_input_error("search: keep_frac must be in (0, 1]");
    if (!(config.adam_beta1 >= 0.0 && config.adam_beta1 < 1.0) ||
        !(config.adam_beta2 >= 0.0 && config.adam_beta2 < 1.0) || config.adam_epsilon <= 0.0)
        throw invalid_input_error("search: bad Adam hyperparameters");
}

double noise_sigma(long long t, const SearchConfig& config) {
    return config.eta / std::pow(static_cast<double>(t) + 1.0, config.gamma);
}

BatchState init_batch(const SearchConfig& config) {
    validate(config);
    BatchState state;
    state.n = config.n_intervals;
    state.batch = config.batch_size;
    state.seed = config.seed;
    const std::size_t total = static_cast<std::size_t>(state.batch) * state.n;
    state.heights.resize(total);
    state.adam_m.assign(total, 0.0);
    state.adam_v.assign(total, 0.0);
    state.best_value.assign(state.batch, -std::numeric_limits<double>::infinity());
    state.best_heights.assign(total, 0.0);
    parallel_for_index(static_cast<std::size_t>(state.batch), [&](std::size_t b) {
        double* row = state.heights.data() + b * state.n;
        for (int i = 0; i < state.n; ++i) {
            row[i] = rng::draw_uniform01(state.seed, rng::Stream::init, b, 0, i);
        }
    });
    return state;
}

namespace {

void respawn_candidate(BatchState& state, std::size_t b, rng::Stream stream, long long step) {
    double* row = state.heights.data() + b * state.n;
    for (int i = 0; i < state.n; ++i) {
        row[i] = rng::draw_uniform01(state.seed, stream, b, step, i);
    }
    std::fill_n(state.adam_m.data() + b * state.n, state.n, 0.0);
    std::fill_n(state.adam_v.data() + b * state.n, state.n, 0.0);
}

// One synchronous batch step shared by both phases.  Candidates are
// independent; every random draw is keyed by (candidate, step, coordinate),
// so any scheduling of the parallel loop yields identical state.
void batch_step(BatchState& state, const SearchConfig& config, double lr, bool with_noise) {
    const long long t = state.step_count;
    const int n = state.n;
    const double sigma = with_noise ? noise_sigma(t, config) : 0.0;
    const double b1 = config.adam_beta1;
    const double b2 = config.adam_beta2;
    const double bc1 = 1.0 - std::pow(b1, static_cast<double>(state.adam_step + 1));
    const double bc2 = 1.0 - std::pow(b2, static_cast<double>(state.adam_step + 1));
    const double eps = config.adam_epsilon;

    std::vector<unsigned char> failed(state.batch, 0);

    parallel_for_index(static_cast<std::size_t>(state.batch), [&](std::size_t b) {
        static thread_local std::vector<double> grad;
        grad.resize(n);
        double* h = state.heights.data() + b * n;

        double value = 0.0;
        bool ok = true;
        try {
            const detail::ValueGrad vg =
                detail::value_and_ascent_gradient({h, static_cast<std::size_t>(n)}, grad);
            value = vg.value;
            for (int i = 0; i < n && ok; ++i) ok = std::isfinite(grad[i]);
        } catch (const degenerate_input_error&) {
            ok = false;
        } catch (const numeric_error&) {
            ok = false;
        }
        if (!ok) {
            failed[b] = 1;
            respawn_candidate(state, b, rng::Stream::nan_respawn, t);
            return;
        }

        if (value > state.best_value[b]) {
            state.best_value[b] = value;
            std::copy_n(h, n, state.best_heights.data() + b * n);
        }

        if (with_noise && sigma > 0.0) {
            for (int i = 0; i < n; i += 2) {
                double z0, z1;
                rng::draw_gaussian_pair(state.seed, rng::Stream::noise, b, t, i / 2, z0, z1);
                grad[i] += sigma * z0;
                if (i + 1 < n) grad[i + 1] += sigma * z1;
            }
        }

        detail::adam_project_update({h, static_cast<std::size_t>(n)},
                                    {state.adam_m.data() + b * n, static_cast<std::size_t>(n)},
                                    {state.adam_v.data() + b * n, static_cast<std::size_t>(n)},
                                    grad, lr, b1, b2, eps, bc1, bc2);
    });

    int n_failed = 0;
    for (int b = 0; b < state.batch; ++b) {
        if (failed[b]) {
            ++n_failed;
            state.events.push_back({t, b, "non-finite evaluation; candidate respawned"});
        }
    }
    if (n_failed == state.batch) {
        throw numeric_error("search: every candidate degenerated at step " + std::to_string(t));
    }

    state.adam_step += 1;
    state.step_count += 1;
}

double current_value_or_neg_inf(const BatchState& state, int b) {
    try {
        return detail::objective_value(state.candidate(b));
    } catch (const degenerate_input_error&) {
        return -std::numeric_limits<double>::infinity();
    } catch (const numeric_error&) {
        return -std::numeric_limits<double>::infinity();
    }
}

}  // namespace

namespace detail {

void adam_project_update(std::span<double> h, std::span<double> m, std::span<double> v,
                         std::span<const double> g, double lr, double beta1, double beta2,
                         double epsilon, double bias1, double bias2) {
    for (std::size_t i = 0; i < h.size(); ++i) {
        m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
        const double m_hat = m[i] / bias1;
        const double v_hat = v[i] / bias2;
        h[i] = std::max(0.0, h[i] + lr * m_hat / (std::sqrt(v_hat) + epsilon));
    }
}

}  // namespace detail

void explore_step(BatchState& state, const SearchConfig& config) {
    batch_step(state, config, config.lr_explore, /*with_noise=*/true);
}

void exploit_step(BatchState& state, const SearchConfig& config) {
    batch_step(state, config, config.lr_exploit, /*with_noise=*/false);
}

void elitist_respawn(BatchState& state, const SearchConfig& config) {
    const int keep =
        static_cast<int>(std::ceil(config.keep_frac * static_cast<double>(state.batch)));

    std::vector<double> current(state.batch);
    parallel_for_index(static_cast<std::size_t>(state.batch),
                       [&](std::size_t b) { current[b] = current_value_or_neg_inf(state, static_cast<int>(b)); });

    // Rank by current C, first-come tie-break; survivors keep their slots.
    std::vector<int> order(state.batch);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return current[a] > current[b]; });

    std::vector<unsigned char> survives(state.batch, 0);
    for (int r = 0; r < keep && r < state.batch; ++r) survives[order[r]] = 1;

    const long long t = state.step_count;
    parallel_for_index(static_cast<std::size_t>(state.batch), [&](std::size_t b) {
        if (!survives[b]) {
            double* row = state.heights.data() + b * state.n;
            for (int i = 0; i < state.n; ++i) {
                row[i] = rng::draw_uniform01(state.seed, rng::Stream::respawn, b, t, i);
            }
        }
    });

    // The optimizer restarts in the same phase: moments cleared for the
    // whole batch, survivors included.
    std::fill(state.adam_m.begin(), state.adam_m.end(), 0.0);
    std::fill(state.adam_v.begin(), state.adam_v.end(), 0.0);
    state.adam_step = 0;
}

SearchResult run_search(const SearchConfig& config) {
    validate(config);
    const auto t_start = std::chrono::steady_clock::now();

    BatchState state = init_batch(config);
    SearchResult result;

    auto global_best = [&]() {
        return *std::max_element(state.best_value.begin(), state.best_value.end());
    };

    for (long long t = 0; t < config.iterations; ++t) {
        if (t < config.explore_steps) {
            explore_step(state, config);
        } else {
            exploit_step(state, config);
        }
        if (state.step_count % config.respawn_period == 0) {
            elitist_respawn(state, config);
        }
        if (state.step_count % kHistoryEvery == 0 || state.step_count == config.iterations) {
            result.history.push_back({state.step_count, global_best()});
        }
    }

    const auto best_it = std::max_element(state.best_value.begin(), state.best_value.end());
    const int best_idx = static_cast<int>(best_it - state.best_value.begin());
    const auto best_span = state.best_candidate(best_idx);
    result.best = StepFunction(std::vector<double>(best_span.begin(), best_span.end()));
    result.best_c = *best_it;
    result.events = std::move(state.events);
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

}  // namespace autoconv

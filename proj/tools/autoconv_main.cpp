// Command line front end: searches for step functions with a large
// autoconvolution ratio, refines them at higher resolution, evaluates and
// plots coefficient files, and certifies claimed lower bounds in exact
// rational arithmetic.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "autoconv/certify.hpp"
#include "autoconv/errors.hpp"
#include "autoconv/gradient.hpp"
#include "autoconv/io.hpp"
#include "autoconv/objective.hpp"
#include "autoconv/parallel.hpp"
#include "autoconv/refine.hpp"
#include "autoconv/search.hpp"

namespace {

namespace fs = std::filesystem;
using namespace autoconv;

std::string iso8601_now() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&now));
    return buf;
}

void add_config_entries(RunManifest& manifest, const SearchConfig& config) {
    manifest.add("n_intervals", static_cast<long long>(config.n_intervals));
    manifest.add("batch_size", static_cast<long long>(config.batch_size));
    manifest.add("iterations", config.iterations);
    manifest.add("explore_steps", config.explore_steps);
    manifest.add("lr_explore", config.lr_explore);
    manifest.add("lr_exploit", config.lr_exploit);
    manifest.add("eta", config.eta);
    manifest.add("gamma", config.gamma);
    manifest.add("respawn_period", config.respawn_period);
    manifest.add("keep_frac", config.keep_frac);
    manifest.add("adam_beta1", config.adam_beta1);
    manifest.add("adam_beta2", config.adam_beta2);
    manifest.add("adam_epsilon", config.adam_epsilon);
    manifest.add("seed", static_cast<long long>(config.seed));
}

int cmd_search(const SearchConfig& config, const std::string& prefix, int threads) {
    if (threads > 0) set_worker_threads(threads);
    const std::string start = iso8601_now();
    const SearchResult result = run_search(config);

    const fs::path coeffs = prefix + "_coeffs.txt";
    const fs::path trace = prefix + "_trace.csv";
    const fs::path manifest_path = prefix + "_manifest.txt";
    write_heights_file(coeffs, result.best.heights);
    write_history_csv(trace, result.history);

    RunManifest manifest;
    manifest.add("command", std::string("search"));
    manifest.add("version", std::string(kVersion));
    add_config_entries(manifest, config);
    manifest.add("start_time", start);
    manifest.add("end_time", iso8601_now());
    manifest.add("wall_seconds", result.wall_seconds);
    manifest.add("final_c", result.best_c);
    manifest.add("events", static_cast<long long>(result.events.size()));
    manifest.add("coefficients_file", coeffs.string());
    manifest.add("trace_file", trace.string());
    write_manifest(manifest_path, manifest);

    std::printf("best C = %.12f over %lld iterations (%.1f s)\n", result.best_c,
                config.iterations, result.wall_seconds);
    std::printf("wrote %s, %s, %s\n", coeffs.c_str(), trace.c_str(), manifest_path.c_str());
    return 0;
}

int cmd_refine(const fs::path& input, const RefineConfig& config, const std::string& prefix,
               int threads) {
    if (threads > 0) set_worker_threads(threads);
    const std::string start = iso8601_now();
    const auto t0 = std::chrono::steady_clock::now();
    const StepFunction h = read_step_function(input);

    RefineResult result;
    if (config.iterations == 0) {
        // No ascent requested: upsample rounds (if any) and trim only.
        StepFunction cur = h;
        for (int r = 0; r < config.upsample_rounds; ++r) {
            cur = upsample_linear(cur, config.upsample_factor);
        }
        result.heights = trim_zeros(cur);
        result.c = objective_c(result.heights);
        result.regressed = result.c < objective_c(h);
    } else {
        result = refine_pipeline(h, config);
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const fs::path coeffs = prefix + "_coeffs.txt";
    const fs::path trace = prefix + "_trace.csv";
    const fs::path manifest_path = prefix + "_manifest.txt";
    write_heights_file(coeffs, result.heights.heights);
    write_trace_csv(trace, result.trace);

    RunManifest manifest;
    manifest.add("command", std::string("refine"));
    manifest.add("version", std::string(kVersion));
    manifest.add("input_file", input.string());
    manifest.add("input_n", static_cast<long long>(h.heights.size()));
    manifest.add("lr", config.lr);
    manifest.add("iterations", config.iterations);
    manifest.add("log_every", config.log_every);
    manifest.add("upsample_rounds", static_cast<long long>(config.upsample_rounds));
    manifest.add("upsample_factor", static_cast<long long>(config.upsample_factor));
    manifest.add("track_best", std::string(config.track_best ? "true" : "false"));
    manifest.add("start_time", start);
    manifest.add("end_time", iso8601_now());
    manifest.add("wall_seconds", wall);
    manifest.add("final_n", static_cast<long long>(result.heights.heights.size()));
    manifest.add("final_c", result.c);
    manifest.add("regressed", std::string(result.regressed ? "true" : "false"));
    manifest.add("coefficients_file", coeffs.string());
    manifest.add("trace_file", trace.string());
    write_manifest(manifest_path, manifest);

    std::printf("refined to %zu intervals, C = %.12f%s\n", result.heights.heights.size(), result.c,
                result.regressed ? "  [REGRESSED]" : "");
    std::printf("wrote %s, %s, %s\n", coeffs.c_str(), trace.c_str(), manifest_path.c_str());
    return result.regressed ? 2 : 0;
}

int cmd_eval(const fs::path& input) {
    const StepFunction h = read_step_function(input);
    const ConvolutionProfile profile = autoconvolve(h);
    const NormTriple norms = profile_norms(profile);
    const double c = objective_c(h);
    std::printf("n_intervals: %zu\n", h.heights.size());
    std::printf("c: %.12f\n", c);
    std::printf("l2_squared: %s\n", format_double(norms.l2_squared).c_str());
    std::printf("l1: %s\n", format_double(norms.l1).c_str());
    std::printf("linf: %s\n", format_double(norms.linf).c_str());
    std::printf("linf_argmax: %zu\n", norms.linf_argmax);
    return 0;
}

int cmd_verify(const fs::path& input, const std::string& bound) {
    const Certificate cert = verify_claim(input, bound);
    std::fputs(render_certificate(cert).c_str(), stdout);
    return cert.passes ? 0 : 1;
}

int cmd_plot_data(const fs::path& input, const std::string& kind, bool normalize,
                  const std::string& out) {
    PlotSeries series;
    if (kind == "step-function") {
        series = make_step_series(read_step_function(input));
    } else if (kind == "autoconvolution") {
        series = make_autoconvolution_series(read_step_function(input), normalize);
    } else if (kind == "c-trace") {
        series = read_trace_series(input);
    } else {
        std::fprintf(stderr, "unknown plot kind: %s\n", kind.c_str());
        return 1;
    }
    if (out.empty() || out == "-") {
        write_plot_csv(std::cout, series);
    } else {
        write_plot_csv(fs::path(out), series);
    }
    return 0;
}

int cmd_convert_appendix(const fs::path& input, const fs::path& out) {
    std::ifstream in(input);
    if (!in) throw io_error("cannot open input: " + input.string());
    const std::vector<std::string> literals = extract_decimal_literals(in);
    if (literals.empty()) throw invalid_input_error(input.string() + ": no decimal literals found");
    std::ofstream os(out);
    if (!os) throw io_error("cannot write output: " + out.string());
    for (const std::string& lit : literals) os << lit << "\n";
    std::printf("wrote %zu coefficients to %s\n", literals.size(), out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"step-function search and exact certification for the autoconvolution ratio "
                 "||f*f||_2^2 / (||f*f||_1 ||f*f||_inf)"};
    app.require_subcommand(1);

    // search
    SearchConfig search_config;
    std::string search_prefix = "search";
    int search_threads = 0;
    auto* search = app.add_subcommand("search", "run the batched four-phase optimizer");
    search->add_option("--n", search_config.n_intervals, "number of intervals")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    search->add_option("--batch", search_config.batch_size, "batch size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    search->add_option("--iters", search_config.iterations, "total optimizer steps")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    search->add_option("--explore-steps", search_config.explore_steps, "noisy high-rate steps")
        ->capture_default_str();
    search->add_option("--lr-explore", search_config.lr_explore)->capture_default_str();
    search->add_option("--lr-exploit", search_config.lr_exploit)->capture_default_str();
    search->add_option("--eta", search_config.eta, "gradient noise scale")->capture_default_str();
    search->add_option("--gamma", search_config.gamma, "noise decay exponent")->capture_default_str();
    search->add_option("--respawn-period", search_config.respawn_period)->capture_default_str();
    search->add_option("--keep-frac", search_config.keep_frac, "fraction kept at respawn")
        ->capture_default_str();
    search->add_option("--beta1", search_config.adam_beta1)->capture_default_str();
    search->add_option("--beta2", search_config.adam_beta2)->capture_default_str();
    search->add_option("--eps", search_config.adam_epsilon)->capture_default_str();
    search->add_option("--seed", search_config.seed, "RNG seed")->capture_default_str();
    search->add_option("--out", search_prefix, "output file prefix")->capture_default_str();
    search->add_option("--threads", search_threads, "worker threads (0 = library default)");

    // refine
    RefineConfig refine_config;
    std::string refine_input;
    std::string refine_prefix = "refine";
    int refine_threads = 0;
    auto* refine = app.add_subcommand("refine", "upsample and run projected gradient ascent");
    refine->add_option("input", refine_input, "coefficient file")->required();
    refine->add_option("--lr", refine_config.lr)->capture_default_str();
    refine->add_option("--iters", refine_config.iterations, "ascent steps per round")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    refine->add_option("--log-every", refine_config.log_every)->capture_default_str();
    refine->add_option("--rounds", refine_config.upsample_rounds, "upsampling rounds")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    refine->add_option("--factor", refine_config.upsample_factor, "upsampling factor per round")
        ->capture_default_str();
    refine->add_flag("--track-best", refine_config.track_best,
                     "return the best iterate instead of the final one");
    refine->add_option("--out", refine_prefix, "output file prefix")->capture_default_str();
    refine->add_option("--threads", refine_threads, "worker threads (0 = library default)");

    // eval
    std::string eval_input;
    auto* eval = app.add_subcommand("eval", "evaluate a coefficient file in double precision");
    eval->add_option("input", eval_input, "coefficient file")->required();

    // verify
    std::string verify_input;
    std::string verify_bound;
    auto* verify =
        app.add_subcommand("verify", "certify a claimed lower bound in exact rational arithmetic");
    verify->add_option("input", verify_input, "coefficient file")->required();
    verify->add_option("--bound", verify_bound, "claimed lower bound (decimal)")->required();

    // plot-data
    std::string plot_input;
    std::string plot_kind = "step-function";
    std::string plot_out;
    bool plot_normalize = false;
    auto* plot = app.add_subcommand("plot-data", "export CSV series for external plotting");
    plot->add_option("input", plot_input, "coefficient file (or trace CSV for c-trace)")
        ->required();
    plot->add_option("--kind", plot_kind, "step-function | autoconvolution | c-trace")
        ->capture_default_str();
    plot->add_flag("--normalize", plot_normalize, "rescale so the maximum is 1");
    plot->add_option("--out", plot_out, "output file (default stdout)");

    // convert-appendix
    std::string convert_input;
    std::string convert_out = "coeffs.txt";
    auto* convert = app.add_subcommand(
        "convert-appendix", "extract decimal literals from a LaTeX-style coefficient table");
    convert->add_option("input", convert_input, "table file")->required();
    convert->add_option("--out", convert_out, "output coefficient file")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    // The default explore budget follows a shortened run unless the user
    // pinned it explicitly.
    if (search->count("--explore-steps") == 0 &&
        search_config.explore_steps > search_config.iterations) {
        search_config.explore_steps = search_config.iterations;
    }

    try {
        if (*search) return cmd_search(search_config, search_prefix, search_threads);
        if (*refine) return cmd_refine(refine_input, refine_config, refine_prefix, refine_threads);
        if (*eval) return cmd_eval(eval_input);
        if (*verify) return cmd_verify(verify_input, verify_bound);
        if (*plot) return cmd_plot_data(plot_input, plot_kind, plot_normalize, plot_out);
        if (*convert) return cmd_convert_appendix(convert_input, convert_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

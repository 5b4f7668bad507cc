#ifndef AUTOCONV_IO_HPP
#define AUTOCONV_IO_HPP

#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "autoconv/refine.hpp"
#include "autoconv/search.hpp"
#include "autoconv/step_function.hpp"

namespace autoconv {

inline constexpr const char* kVersion = "0.1.0";

struct NumericToken {
    std::string text;
    int line = 0;         ///< 1-based
    int token_index = 0;  ///< 1-based position in the whole stream
};

/// Split a coefficient stream into tokens; '#' starts a comment that runs to
/// the end of the line.
std::vector<NumericToken> tokenize_numeric_stream(std::istream& in);

/// Read a coefficient file into doubles (the float path).  Accepts the same
/// grammar as the exact parser; negative values are rejected.
std::vector<double> read_heights_file(const std::filesystem::path& path);
StepFunction read_step_function(const std::filesystem::path& path);

/// Shortest round-trip formatting of a double (17 significant digits).
std::string format_double(double x);

/// One coefficient per line, format_double rendering; read-back is
/// bit-exact.
void write_heights_file(const std::filesystem::path& path, std::span<const double> heights);

/// Ordered key/value manifest written as "key: value" lines.
struct RunManifest {
    std::vector<std::pair<std::string, std::string>> entries;
    void add(std::string key, std::string value);
    void add(std::string key, double value);
    void add(std::string key, long long value);
};
void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

/// Two-column CSV with a header row.
void write_history_csv(const std::filesystem::path& path, std::span<const HistoryPoint> history);
void write_trace_csv(const std::filesystem::path& path, std::span<const TracePoint> trace);

enum class PlotKind { step_function, autoconvolution, c_trace };

struct PlotSeries {
    PlotKind kind = PlotKind::step_function;
    std::vector<std::pair<double, double>> points;
    bool normalized = false;
};

/// Step-function series: N points, x at the interval midpoints of the
/// support.
PlotSeries make_step_series(const StepFunction& h);

/// Autoconvolution series: the 2N+1 zero-padded knots of f*f on twice the
/// support, values scaled by w = support_width/N so the y axis is the true
/// f*f; optionally rescaled so the maximum is exactly 1.
PlotSeries make_autoconvolution_series(const StepFunction& h, bool normalize);

/// Re-emit a two-column trace CSV (iteration, value) as a plot series.
PlotSeries read_trace_series(const std::filesystem::path& path);

void write_plot_csv(std::ostream& out, const PlotSeries& series);
void write_plot_csv(const std::filesystem::path& path, const PlotSeries& series);

/// Pull every decimal literal out of a LaTeX-style table ('&' and '\\'
/// separators, arbitrary markup); used to convert published coefficient
/// tables into plain coefficient files.
std::vector<std::string> extract_decimal_literals(std::istream& in);

}  // namespace autoconv

#endif

#include "autoconv/io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "autoconv/errors.hpp"
#include "autoconv/objective.hpp"
#include "autoconv/rational.hpp"

namespace autoconv {

std::vector<NumericToken> tokenize_numeric_stream(std::istream& in) {
    std::vector<NumericToken> tokens;
    std::string line;
    int line_no = 0;
    int token_index = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream split(line);
        std::string tok;
        while (split >> tok) {
            tokens.push_back({tok, line_no, ++token_index});
        }
    }
    return tokens;
}

std::vector<double> read_heights_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open coefficient file: " + path.string());
    std::vector<double> heights;
    for (const NumericToken& token : tokenize_numeric_stream(in)) {
        try {
            parse_decimal(token.text);  // grammar + sign check, exact parser rules
        } catch (const parse_error& e) {
            throw parse_error(path.string() + ": " + e.what() + " (line " +
                                  std::to_string(token.line) + ", token " +
                                  std::to_string(token.token_index) + ")",
                              token.line, token.token_index);
        } catch (const invalid_input_error& e) {
            throw invalid_input_error(path.string() + ": " + e.what() + " (line " +
                                      std::to_string(token.line) + ")");
        }
        heights.push_back(std::strtod(token.text.c_str(), nullptr));
    }
    if (heights.empty()) throw invalid_input_error(path.string() + ": no coefficients found");
    return heights;
}

StepFunction read_step_function(const std::filesystem::path& path) {
    return StepFunction(read_heights_file(path));
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_heights_file(const std::filesystem::path& path, std::span<const double> heights) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write coefficient file: " + path.string());
    for (double v : heights) out << format_double(v) << "\n";
    if (!out) throw io_error("write failed: " + path.string());
}

void RunManifest::add(std::string key, std::string value) {
    entries.emplace_back(std::move(key), std::move(value));
}
void RunManifest::add(std::string key, double value) {
    entries.emplace_back(std::move(key), format_double(value));
}
void RunManifest::add(std::string key, long long value) {
    entries.emplace_back(std::move(key), std::to_string(value));
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write manifest: " + path.string());
    for (const auto& [key, value] : manifest.entries) out << key << ": " << value << "\n";
}

void write_history_csv(const std::filesystem::path& path, std::span<const HistoryPoint> history) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write trace: " + path.string());
    out << "iteration,best_c\n";
    for (const HistoryPoint& p : history) {
        out << p.iteration << "," << format_double(p.best_c) << "\n";
    }
}

void write_trace_csv(const std::filesystem::path& path, std::span<const TracePoint> trace) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write trace: " + path.string());
    out << "iteration,c\n";
    for (const TracePoint& p : trace) {
        out << p.iteration << "," << format_double(p.c) << "\n";
    }
}

PlotSeries make_step_series(const StepFunction& h) {
    if (h.heights.empty()) throw invalid_input_error("plot: empty height vector");
    PlotSeries series;
    series.kind = PlotKind::step_function;
    const std::size_t n = h.heights.size();
    const double width = 2.0 * h.support_halfwidth;
    const double step = width / static_cast<double>(n);
    series.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -h.support_halfwidth + (static_cast<double>(i) + 0.5) * step;
        series.points.emplace_back(x, h.heights[i]);
    }
    return series;
}

PlotSeries make_autoconvolution_series(const StepFunction& h, bool normalize) {
    const ConvolutionProfile profile = autoconvolve(h);
    PlotSeries series;
    series.kind = PlotKind::autoconvolution;
    series.normalized = normalize;

    // True f*f knot values are w * conv with w = support_width / N; the
    // zero-padded knots span twice the support.
    const std::size_t n = h.heights.size();
    const double w = 2.0 * h.support_halfwidth / static_cast<double>(n);
    const double lo = -2.0 * h.support_halfwidth;

    std::vector<double> y(profile.size() + 2, 0.0);
    for (std::size_t k = 0; k < profile.size(); ++k) y[k + 1] = w * profile.values[k];
    if (normalize) {
        double maxv = 0.0;
        for (double v : y) maxv = std::max(maxv, v);
        if (maxv == 0.0) throw degenerate_input_error("plot: cannot normalize a zero profile");
        for (double& v : y) v /= maxv;
    }
    series.points.reserve(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) {
        series.points.emplace_back(lo + static_cast<double>(j) * w, y[j]);
    }
    return series;
}

PlotSeries read_trace_series(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open trace file: " + path.string());
    PlotSeries series;
    series.kind = PlotKind::c_trace;
    std::string line;
    bool first = true;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (first) {  // header row
            first = false;
            continue;
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) {
            throw parse_error(path.string() + ": expected two comma-separated columns", line_no, 0);
        }
        series.points.emplace_back(std::strtod(line.substr(0, comma).c_str(), nullptr),
                                   std::strtod(line.substr(comma + 1).c_str(), nullptr));
    }
    return series;
}

void write_plot_csv(std::ostream& out, const PlotSeries& series) {
    out << "x,y\n";
    for (const auto& [x, y] : series.points) {
        out << format_double(x) << "," << format_double(y) << "\n";
    }
}

void write_plot_csv(const std::filesystem::path& path, const PlotSeries& series) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write plot data: " + path.string());
    write_plot_csv(out, series);
}

std::vector<std::string> extract_decimal_literals(std::istream& in) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::string> literals;
    std::size_t i = 0;
    const std::size_t len = text.size();
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    while (i < len) {
        const bool starts_number =
            is_digit(text[i]) || (text[i] == '.' && i + 1 < len && is_digit(text[i + 1]));
        if (!starts_number) {
            ++i;
            continue;
        }
        std::size_t j = i;
        bool seen_dot = false;
        while (j < len && (is_digit(text[j]) || (text[j] == '.' && !seen_dot))) {
            seen_dot = seen_dot || text[j] == '.';
            ++j;
        }
        // trim a trailing dot: "1." inside prose is a sentence end
        if (text[j - 1] == '.') --j;
        literals.push_back(text.substr(i, j - i));
        i = j + 1;
    }
    return literals;
}

}  // namespace autoconv

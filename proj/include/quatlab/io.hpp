#pragma once

#include <array>
#include <string>
#include <vector>

#include "quatlab/spectra.hpp"

namespace quatlab {

/// One output row of a loop sweep. kind is one of abs_eig_mean, action,
/// large, mixed, small; action rows appear only at a loop's final step.
struct CsvRow {
    std::string loop;
    int step = 0;
    TimeAxis axis = TimeAxis::e2e4;
    double j = 0.0;
    int set = 0;
    std::string kind;
    double value = 0.0;
};

/// Expands sweeps into per-set rows: abs_eig_mean of x*xbar, the top-half,
/// bottom-half, and full means of the singular values, and the nuclear norm
/// as action at the final step.
std::vector<CsvRow> sweep_rows(const std::vector<LoopSweep>& sweeps);

/// Renders rows as CSV: header loop,step,time_axis,j,set,kind,value, LF
/// line endings, %.17g for reals, rows sorted by (loop, step, j, set, kind).
std::string csv_text(std::vector<CsvRow> rows);

/// One plotted polyline.
struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<std::array<double, 2>> points;
};

/// Fixed 800x600 line plot with auto-scaled axes, one polyline per series,
/// and a legend naming each series in its color.
std::string svg_plot(const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<SvgSeries>& series);

/// Sweep plot at one step: pooled large/small/mixed means per j against 4j,
/// in the red/green/blue convention.
std::string svg_sweep_plot(const LoopSweep& sweep, int step);

/// Writes text to a file verbatim. Throws std::runtime_error on failure.
void write_text_file(const std::string& path, const std::string& text);

/// Replaces a trailing .csv (or appends when absent) with .svg, optionally
/// inserting a suffix before the extension.
std::string derive_svg_path(const std::string& out_path, const std::string& suffix = "");

}  // namespace quatlab

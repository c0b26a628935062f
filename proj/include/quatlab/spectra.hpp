#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quatlab/linalg.hpp"
#include "quatlab/loops.hpp"

namespace quatlab {

/// Magnitude split of an even-sized spectrum: top half by |value| into
/// large, bottom half into small. Ties are broken by argument, then by
/// stable input order; an all-equal-magnitude spectrum is flagged.
struct GroupedSpectrum {
    std::vector<Complex> large;
    std::vector<Complex> small;
    bool degenerate = false;
};

/// Splits an even-sized spectrum by magnitude. Throws std::invalid_argument
/// on odd sizes.
GroupedSpectrum group_eigs(const std::vector<Complex>& spectrum);

/// Mean of |lambda| over a spectrum.
double abs_eig_mean(const std::vector<Complex>& eigs);

/// One (j, set) cell of a loop sweep at a fixed step: the eigenvalues of
/// the 4x4 product x*xbar, the singular values of the 8x8 coordinate
/// difference, and its nuclear norm.
struct SpectrumPoint {
    double j = 0.0;
    int set = 0;
    std::vector<Complex> eigs;
    std::vector<double> sigma;  ///< sorted descending
    double action = 0.0;
};

/// All (j, set) cells of one loop at one step, ordered by (j, set).
struct SpectrumSeries {
    std::string loop;
    int step = 0;
    TimeAxis axis = TimeAxis::e2e4;
    std::vector<double> jgrid;
    int sets = 0;
    std::vector<SpectrumPoint> points;  ///< jgrid.size() * sets entries

    const SpectrumPoint& at(std::size_t j_index, int set) const;
};

/// Per-j singular-value statistics with the sets pooled: the top-half
/// population (large), the bottom-half population (small), and the whole
/// population (mixed). Variances are population variances, so
/// var(mixed) = (var(large) + var(small))/2 + (mean gap)^2/4 for equal
/// halves; the gap term is what magnitude grouping removes.
struct SeparatedPoint {
    double j = 0.0;
    double large_mean = 0.0;
    double large_var = 0.0;
    double small_mean = 0.0;
    double small_var = 0.0;
    double mixed_mean = 0.0;
    double mixed_var = 0.0;
};

struct SeparatedSeries {
    std::vector<SeparatedPoint> points;
};

/// Pools each j across sets and splits the singular values by magnitude.
/// Throws std::invalid_argument on an empty series.
SeparatedSeries svd_separate(const SpectrumSeries& series);

/// Mean of the per-j variances over a separated series.
struct VarianceSummary {
    double large = 0.0;
    double small = 0.0;
    double mixed = 0.0;
};

VarianceSummary mean_variances(const SeparatedSeries& series);

/// Per-j action: mean over sets of the nuclear norm stored in the series
/// (meaningful for the loop's final step).
std::vector<double> action_series(const SpectrumSeries& series);

/// Per-j mean over sets of abs_eig_mean.
std::vector<double> abs_eig_series(const SpectrumSeries& series);

/// Sweep parameters. An unset axis means each loop runs on the front entry
/// of its own axes list; loops empty means every embedded loop.
struct SweepConfig {
    std::vector<std::string> loops;
    bool axis_set = false;
    TimeAxis axis = TimeAxis::e2e4;
    double j_min = 0.0;
    double j_max = 3.75;
    double j_step = 0.25;
    double j0 = 0.0;
    double du = 0.25;
    double dt = 0.25;
    std::uint64_t seed = 42;
    int sets = 4;
    bool verbatim = false;
    unsigned threads = 0;  ///< 0 = hardware concurrency

    std::vector<double> jgrid() const;
};

/// One loop's full sweep: steps[k] holds the series of step k+1.
struct LoopSweep {
    std::string loop;
    TimeAxis axis = TimeAxis::e2e4;
    std::vector<SpectrumSeries> steps;
};

/// Runs the configured loops over the j grid, sets threaded over (loop, j)
/// tasks into preallocated slots, so the result is deterministic for a
/// fixed config regardless of scheduling. Throws std::invalid_argument on
/// unknown loop names, an explicit axis some selected loop does not allow,
/// or an empty j grid.
std::vector<LoopSweep> sweep(const SweepConfig& cfg);

}  // namespace quatlab

#include "quatlab/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace quatlab {

namespace {

struct MeanVar {
    double mean = 0.0;
    double var = 0.0;
};

MeanVar population_stats(const std::vector<double>& values) {
    MeanVar mv;
    if (values.empty()) return mv;
    mv.mean = std::accumulate(values.begin(), values.end(), 0.0) /
              static_cast<double>(values.size());
    double acc = 0.0;
    for (double v : values) acc += (v - mv.mean) * (v - mv.mean);
    mv.var = acc / static_cast<double>(values.size());
    return mv;
}

std::vector<double> sorted_descending(std::vector<double> values) {
    std::sort(values.begin(), values.end(), std::greater<double>());
    return values;
}

}  // namespace

GroupedSpectrum group_eigs(const std::vector<Complex>& spectrum) {
    if (spectrum.size() % 2 != 0)
        throw std::invalid_argument("group_eigs: spectrum size must be even");
    GroupedSpectrum out;
    if (spectrum.empty()) return out;
    std::vector<Complex> sorted = spectrum;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Complex& a, const Complex& b) {
        const double ma = std::abs(a);
        const double mb = std::abs(b);
        if (ma != mb) return ma > mb;
        return std::arg(a) < std::arg(b);
    });
    const std::size_t half = sorted.size() / 2;
    out.large.assign(sorted.begin(), sorted.begin() + half);
    out.small.assign(sorted.begin() + half, sorted.end());
    const double top = std::abs(sorted.front());
    const double bottom = std::abs(sorted.back());
    out.degenerate = (top - bottom) <= 1e-12 * std::max(top, 1.0);
    return out;
}

double abs_eig_mean(const std::vector<Complex>& eigs) {
    if (eigs.empty()) throw std::invalid_argument("abs_eig_mean: empty spectrum");
    double sum = 0.0;
    for (const Complex& v : eigs) sum += std::abs(v);
    return sum / static_cast<double>(eigs.size());
}

const SpectrumPoint& SpectrumSeries::at(std::size_t j_index, int set) const {
    return points.at(j_index * static_cast<std::size_t>(sets) + static_cast<std::size_t>(set));
}

SeparatedSeries svd_separate(const SpectrumSeries& series) {
    if (series.points.empty()) throw std::invalid_argument("svd_separate: empty series");
    SeparatedSeries out;
    out.points.reserve(series.jgrid.size());
    for (std::size_t ji = 0; ji < series.jgrid.size(); ++ji) {
        std::vector<double> large;
        std::vector<double> small;
        std::vector<double> mixed;
        for (int set = 0; set < series.sets; ++set) {
            const std::vector<double> sigma = sorted_descending(series.at(ji, set).sigma);
            const std::size_t half = sigma.size() / 2;
            for (std::size_t k = 0; k < sigma.size(); ++k) {
                mixed.push_back(sigma[k]);
                (k < half ? large : small).push_back(sigma[k]);
            }
        }
        SeparatedPoint p;
        p.j = series.jgrid[ji];
        const MeanVar l = population_stats(large);
        const MeanVar s = population_stats(small);
        const MeanVar m = population_stats(mixed);
        p.large_mean = l.mean;
        p.large_var = l.var;
        p.small_mean = s.mean;
        p.small_var = s.var;
        p.mixed_mean = m.mean;
        p.mixed_var = m.var;
        out.points.push_back(p);
    }
    return out;
}

VarianceSummary mean_variances(const SeparatedSeries& series) {
    if (series.points.empty()) throw std::invalid_argument("mean_variances: empty series");
    VarianceSummary v;
    for (const SeparatedPoint& p : series.points) {
        v.large += p.large_var;
        v.small += p.small_var;
        v.mixed += p.mixed_var;
    }
    const double n = static_cast<double>(series.points.size());
    v.large /= n;
    v.small /= n;
    v.mixed /= n;
    return v;
}

std::vector<double> action_series(const SpectrumSeries& series) {
    std::vector<double> out;
    out.reserve(series.jgrid.size());
    for (std::size_t ji = 0; ji < series.jgrid.size(); ++ji) {
        double sum = 0.0;
        for (int set = 0; set < series.sets; ++set) sum += series.at(ji, set).action;
        out.push_back(sum / static_cast<double>(series.sets));
    }
    return out;
}

std::vector<double> abs_eig_series(const SpectrumSeries& series) {
    std::vector<double> out;
    out.reserve(series.jgrid.size());
    for (std::size_t ji = 0; ji < series.jgrid.size(); ++ji) {
        double sum = 0.0;
        for (int set = 0; set < series.sets; ++set)
            sum += abs_eig_mean(series.at(ji, set).eigs);
        out.push_back(sum / static_cast<double>(series.sets));
    }
    return out;
}

std::vector<double> SweepConfig::jgrid() const {
    if (j_step <= 0.0) throw std::invalid_argument("sweep: j_step must be positive");
    if (j_min > j_max) throw std::invalid_argument("sweep: j_min must not exceed j_max");
    std::vector<double> grid;
    for (int k = 0;; ++k) {
        const double j = j_min + j_step * k;
        if (j > j_max + 0.5 * j_step) break;
        grid.push_back(j);
    }
    return grid;
}

std::vector<LoopSweep> sweep(const SweepConfig& cfg) {
    if (cfg.sets < 1) throw std::invalid_argument("sweep: sets must be at least 1");
    const std::vector<double> grid = cfg.jgrid();
    if (grid.empty()) throw std::invalid_argument("sweep: empty j grid");

    std::vector<const LoopProgram*> progs;
    if (cfg.loops.empty()) {
        for (const std::string& name : loop_names()) progs.push_back(&loop(name));
    } else {
        for (const std::string& name : cfg.loops) progs.push_back(&loop(name));
    }

    std::vector<LoopSweep> out(progs.size());
    for (std::size_t li = 0; li < progs.size(); ++li) {
        const LoopProgram& prog = *progs[li];
        const TimeAxis axis = cfg.axis_set ? cfg.axis : prog.axes.front();
        if (!prog.allows_axis(axis))
            throw std::invalid_argument("sweep: loop " + prog.name + " does not run on axis " +
                                        to_string(axis));
        out[li].loop = prog.name;
        out[li].axis = axis;
        out[li].steps.resize(prog.steps.size());
        for (std::size_t st = 0; st < prog.steps.size(); ++st) {
            SpectrumSeries& series = out[li].steps[st];
            series.loop = prog.name;
            series.step = static_cast<int>(st) + 1;
            series.axis = axis;
            series.jgrid = grid;
            series.sets = cfg.sets;
            series.points.resize(grid.size() * static_cast<std::size_t>(cfg.sets));
        }
    }

    const std::size_t tasks = progs.size() * grid.size();
    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= tasks) return;
            const std::size_t li = task / grid.size();
            const std::size_t ji = task % grid.size();
            const LoopProgram& prog = *progs[li];
            LoopRunConfig rc;
            rc.axis = out[li].axis;
            rc.j = grid[ji];
            rc.j0 = cfg.j0;
            rc.du = cfg.du;
            rc.dt = cfg.dt;
            rc.seed = cfg.seed;
            rc.verbatim = cfg.verbatim;
            for (int set = 0; set < cfg.sets; ++set) {
                rc.set_index = set;
                const LoopRun run = run_loop(prog, rc);
                for (std::size_t st = 0; st < run.steps.size(); ++st) {
                    const StepResult& step = run.steps[st];
                    SpectrumPoint& p =
                        out[li].steps[st].points[ji * static_cast<std::size_t>(cfg.sets) +
                                                 static_cast<std::size_t>(set)];
                    p.j = grid[ji];
                    p.set = set;
                    p.eigs = eig(step.x * step.xbar);
                    p.sigma = sorted_descending(svd(step.delta_coord).sigma);
                    p.action = 0.0;
                    for (double s : p.sigma) p.action += s;
                }
            }
        }
    };

    unsigned nthreads = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
    if (nthreads == 0) nthreads = 1;
    nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(tasks));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    return out;
}

}  // namespace quatlab

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quatlab/clifford.hpp"
#include "quatlab/conformal.hpp"
#include "quatlab/io.hpp"
#include "quatlab/linalg.hpp"
#include "quatlab/loops.hpp"
#include "quatlab/qft.hpp"
#include "quatlab/quaternion.hpp"
#include "quatlab/rng.hpp"
#include "quatlab/spectra.hpp"

namespace {

using namespace quatlab;

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Quaternion axis_from_name(const std::string& name) {
    if (name == "i") return kQuatI;
    if (name == "j") return kQuatJ;
    if (name == "k") return kQuatK;
    throw std::invalid_argument("axis must be one of i, j, k (got '" + name + "')");
}

ComplexMatrix random_matrix(SplitMix64& rng, std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            m(r, c) = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    return m;
}

/// Max over the spectrum of the distance to the best sign partner.
double pairing_residual(std::vector<Complex> eigs) {
    double worst = 0.0;
    std::vector<bool> used(eigs.size(), false);
    for (std::size_t i = 0; i < eigs.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        double best = -1.0;
        std::size_t match = i;
        for (std::size_t k = 0; k < eigs.size(); ++k) {
            if (used[k]) continue;
            const double d = std::abs(eigs[i] + eigs[k]);
            if (best < 0.0 || d < best) {
                best = d;
                match = k;
            }
        }
        if (best < 0.0) {
            worst = std::max(worst, std::abs(eigs[i]));
        } else {
            used[match] = true;
            worst = std::max(worst, best);
        }
    }
    return worst;
}

struct CheckRow {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
};

int cmd_verify() {
    std::vector<CheckRow> rows;

    {
        double worst = 0.0;
        const double metric[4] = {1.0, 1.0, 1.0, -1.0};
        for (int a = 1; a <= 4; ++a)
            for (int b = 1; b <= 4; ++b) {
                ComplexMatrix anti = generator(a) * generator(b) + generator(b) * generator(a);
                anti -= (2.0 * (a == b ? metric[a - 1] : 0.0)) * ComplexMatrix::identity(4);
                worst = std::max(worst, anti.max_abs());
            }
        rows.push_back({"generator anticommutation signature", worst, 0.0});
    }
    {
        double worst = 0.0;
        for (int i = 1; i <= 4; ++i)
            for (int j = i + 1; j <= 4; ++j) {
                const double square = (j == 4) ? 1.0 : -1.0;
                ComplexMatrix res = biv(i, j) * biv(i, j) - square * ComplexMatrix::identity(4);
                worst = std::max(worst, res.max_abs());
            }
        rows.push_back({"bivector plane squares", worst, 0.0});
    }
    {
        const ComplexMatrix res =
            catalog().ref * catalog().ref - ComplexMatrix::identity(4);
        rows.push_back({"reflection squares to identity", res.max_abs(), 0.0});
    }
    {
        double worst = 0.0;
        for (int i = 1; i <= 4; ++i)
            for (int j = i + 1; j <= 4; ++j)
                worst = std::max(worst,
                                 max_abs_diff(biv_bar(i, j), bar(biv(i, j), Grade::even)));
        rows.push_back({"barred bivectors from the bar involution", worst, 0.0});
    }
    rows.push_back({"signed bivector-bar products share one matrix", product_identity_check(),
                    0.0});
    rows.push_back({"shared product value equals minus the reflection",
                    max_abs_diff(chain_common_value(), -catalog().ref), 0.0});
    rows.push_back({"dirac block anticommutation", dirac_clifford_residual(), 0.0});
    {
        SpacetimePoint p{0.7, -0.4, 0.3, 0.9, TimeAxis::e2e4};
        const ConformalPoint cp = make_point(p);
        double worst = max_abs_diff(cp.phi.block(4, 0, 4, 4), ComplexMatrix::identity(4));
        worst = std::max(worst, max_abs_diff(cp.phi.block(0, 4, 4, 4), cp.x * cp.xbar));
        rows.push_back({"conformal embedding block layout", worst, 0.0});
    }
    {
        SpacetimePoint p{0.7, -0.4, 0.3, 0.9, TimeAxis::e1e4};
        ShiftVector c{0.2, -0.6, 0.4, 0.5, TimeAxis::e1e4};
        const ConformalPoint cp = make_point(p);
        const ConformalPoint shifted = shift(cp, c);
        ComplexMatrix t = ComplexMatrix::identity(8);
        t.set_block(0, 4, shift_matrix(c));
        ComplexMatrix tinv = ComplexMatrix::identity(8);
        tinv.set_block(0, 4, -shift_matrix(c));
        rows.push_back({"shift equals unipotent conjugation",
                        max_abs_diff(shifted.phi, t * cp.phi * tinv), 1e-12});
    }
    {
        SplitMix64 rng = make_stream(20260816, 0);
        double worst = 0.0;
        for (TimeAxis axis : {TimeAxis::e1e4, TimeAxis::e2e4, TimeAxis::e3e4}) {
            for (int n = 0; n < 50; ++n) {
                SpacetimePoint p;
                p.x = 2.0 * rng.uniform() - 1.0;
                p.y = 2.0 * rng.uniform() - 1.0;
                p.z = 2.0 * rng.uniform() - 1.0;
                p.t = 2.0 * rng.uniform() - 1.0;
                p.axis = axis;
                const ConformalPoint cp = make_point(p);
                worst = std::max(worst, pairing_residual(eig(cp.x * cp.xbar)));
            }
        }
        rows.push_back({"eigenvalue sign pairing of x*xbar", worst, 1e-9});
    }
    {
        SplitMix64 rng = make_stream(20260816, 1);
        double worst = 0.0;
        for (int n = 0; n < 20; ++n) {
            const ComplexMatrix a = random_matrix(rng, 4);
            const double scale = std::pow(a.norm_fro(), 4.0);
            for (const Complex& lam : eig(a)) {
                ComplexMatrix shiftm = a;
                shiftm -= lam * ComplexMatrix::identity(4);
                worst = std::max(worst, std::abs(det(shiftm)) / scale);
            }
        }
        rows.push_back({"eigenvalues annihilate the determinant", worst, 1e-8});
    }
    {
        SplitMix64 rng = make_stream(20260816, 2);
        double worst = 0.0;
        for (int n = 0; n < 20; ++n) {
            for (std::size_t dim : {std::size_t{4}, std::size_t{8}}) {
                const ComplexMatrix a = random_matrix(rng, dim);
                const SvdResult res = svd(a);
                ComplexMatrix recon = res.u;
                for (std::size_t c = 0; c < dim; ++c)
                    for (std::size_t r = 0; r < dim; ++r) recon(r, c) *= res.sigma[c];
                recon = recon * dagger(res.v);
                worst = std::max(worst, max_abs_diff(recon, a) / a.norm_fro());
            }
        }
        rows.push_back({"svd reconstruction", worst, 1e-10});
    }
    {
        double worst = 0.0;
        for (const std::string& name : loop_names()) {
            const LoopProgram& prog = loop(name);
            const PathPoint& first = prog.path.front();
            const PathPoint& last = prog.path.back();
            if (first.space != last.space || first.time != last.time) worst = 1.0;
        }
        rows.push_back({"loop paths return to their start", worst, 0.0});
    }
    {
        double worst_coef = 0.0;
        double worst_action = 0.0;
        for (const std::string& name : loop_names()) {
            const LoopProgram& prog = loop(name);
            LoopRunConfig rc;
            rc.axis = prog.axes.front();
            rc.j = 0.0;
            rc.j0 = 0.0;
            const LoopRun run = run_loop(prog, rc);
            const StepResult& last = run.steps.back();
            for (double c : last.cx) worst_coef = std::max(worst_coef, std::abs(c));
            for (double c : last.cxbar) worst_coef = std::max(worst_coef, std::abs(c));
            worst_action = std::max(worst_action, nuclear_norm(last.delta_coord));
        }
        rows.push_back({"loop coefficient maps cancel at j = j0", worst_coef, 0.0});
        rows.push_back({"loop action vanishes at j = j0", worst_action, 1e-9});
    }

    bool all_pass = true;
    for (const CheckRow& row : rows) {
        const bool pass = row.residual <= row.tolerance;
        all_pass = all_pass && pass;
        std::printf("%s  %-48s residual=%.3g (tol %.3g)\n", pass ? "PASS" : "FAIL",
                    row.name.c_str(), row.residual, row.tolerance);
    }
    std::printf("%s: %zu checks\n", all_pass ? "ALL PASS" : "FAILURES PRESENT", rows.size());
    return all_pass ? 0 : 1;
}

struct LoopRunOptions {
    std::string loop_name;
    std::string axis_name;
    double jmin = 0.0;
    double jmax = 3.75;
    double jstep = 0.25;
    double j0 = 0.0;
    std::uint64_t seed = 42;
    int sets = 4;
    double du = 0.25;
    double dt = 0.25;
    std::string output = "loops.csv";
    bool svg = false;
    bool verbatim = false;
};

int cmd_loop_run(const LoopRunOptions& opt) {
    SweepConfig cfg;
    if (!opt.loop_name.empty()) cfg.loops.push_back(opt.loop_name);
    if (!opt.axis_name.empty()) {
        cfg.axis = time_axis_from_string(opt.axis_name);
        cfg.axis_set = true;
    }
    cfg.j_min = opt.jmin;
    cfg.j_max = opt.jmax;
    cfg.j_step = opt.jstep;
    cfg.j0 = opt.j0;
    cfg.seed = opt.seed;
    cfg.sets = opt.sets;
    cfg.du = opt.du;
    cfg.dt = opt.dt;
    cfg.verbatim = opt.verbatim;

    const std::vector<LoopSweep> sweeps = sweep(cfg);
    const std::vector<CsvRow> rows = sweep_rows(sweeps);
    write_text_file(opt.output, csv_text(rows));
    std::printf("wrote %zu rows to %s\n", rows.size(), opt.output.c_str());
    if (opt.svg) {
        for (const LoopSweep& sw : sweeps) {
            const std::string path = derive_svg_path(
                opt.output, sweeps.size() == 1 ? std::string{} : "_" + sw.loop);
            write_text_file(path, svg_sweep_plot(sw, 3));
            std::printf("wrote plot to %s\n", path.c_str());
        }
    }
    return 0;
}

int cmd_qft_delta(const std::string& axis1, const std::string& axis2, double b,
                  std::size_t grid, const std::string& output, bool svg) {
    const Quaternion u = axis_from_name(axis1);
    const Quaternion v = axis_from_name(axis2);
    const DeltaDemoResult res = delta_demo(b, u, v, grid);
    std::printf("commuting_residual = %s\n", fmt(res.commuting_residual).c_str());
    std::printf("noncommuting_gap = %s\n", fmt(res.noncommuting_gap).c_str());
    if (!output.empty()) {
        std::string csv = "metric,value\n";
        csv += "commuting_residual," + fmt(res.commuting_residual) + "\n";
        csv += "noncommuting_gap," + fmt(res.noncommuting_gap) + "\n";
        write_text_file(output, csv);
        std::printf("wrote %s\n", output.c_str());
    }
    if (svg) {
        SvgSeries gap{"gap", "blue", {}};
        for (std::size_t a = 0; a < grid; ++a) {
            const double lam = -kPi + 2.0 * kPi * static_cast<double>(a) /
                                          static_cast<double>(grid - 1);
            double worst = 0.0;
            for (std::size_t c = 0; c < grid; ++c) {
                const double lam2 = -kPi + 2.0 * kPi * static_cast<double>(c) /
                                               static_cast<double>(grid - 1);
                const Quaternion split =
                    qexp(u * (-lam)) * qexp(v * lam2);
                const Quaternion joint = qexp(u * (-lam) + v * lam2);
                worst = std::max(worst, qnorm(split - joint));
            }
            gap.points.push_back({lam, worst});
        }
        const std::string path =
            derive_svg_path(output.empty() ? "delta.csv" : output);
        write_text_file(path, svg_plot("split vs joint exponential gap", "angle",
                                       "max gap", {gap}));
        std::printf("wrote plot to %s\n", path.c_str());
    }
    return 0;
}

int cmd_qft_stft(std::size_t n, std::size_t window_len, std::size_t hop, std::uint64_t seed,
                 const std::string& output, bool svg) {
    SplitMix64 rng = make_stream(seed, 0);
    QSignal x;
    x.samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        x.samples.push_back({2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0,
                             2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0});
    const Spectrogram spec = stft(x, hann_window(window_len), hop);
    const QSignal back = istft(spec);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        err = std::max(err, qnorm(back.samples[i] - x.samples[i]));
    std::printf("round_trip_max_error = %s\n", fmt(err).c_str());
    if (!output.empty()) {
        std::string csv = "frame,bin,abs\n";
        for (std::size_t m = 0; m < spec.frames.size(); ++m)
            for (std::size_t k = 0; k < spec.frames[m].size(); ++k)
                csv += std::to_string(m) + "," + std::to_string(k) + "," +
                       fmt(qnorm(spec.frames[m][k])) + "\n";
        write_text_file(output, csv);
        std::printf("wrote %s\n", output.c_str());
    }
    if (svg) {
        SvgSeries energy{"frame energy", "blue", {}};
        for (std::size_t m = 0; m < spec.frames.size(); ++m) {
            double e = 0.0;
            for (const Quaternion& q : spec.frames[m]) e += qnorm2(q);
            energy.points.push_back({static_cast<double>(m), e});
        }
        const std::string path = derive_svg_path(output.empty() ? "stft.csv" : output);
        write_text_file(path,
                        svg_plot("frame energies", "frame", "energy", {energy}));
        std::printf("wrote plot to %s\n", path.c_str());
    }
    return 0;
}

int cmd_qft_hysteresis(std::size_t n, const std::string& output, bool svg) {
    const auto curve = hysteresis_curve(n);
    const double closure = std::hypot(curve.front()[0] - curve.back()[0],
                                      curve.front()[1] - curve.back()[1]);
    std::printf("closure = %s\n", fmt(closure).c_str());
    if (!output.empty()) {
        std::string csv = "l,f23,f32\n";
        for (std::size_t i = 0; i < curve.size(); ++i) {
            const double l = 2.0 * kPi * static_cast<double>(i) /
                             static_cast<double>(curve.size() - 1);
            csv += fmt(l) + "," + fmt(curve[i][0]) + "," + fmt(curve[i][1]) + "\n";
        }
        write_text_file(output, csv);
        std::printf("wrote %s\n", output.c_str());
    }
    if (svg) {
        SvgSeries series{"(f23, f32)", "blue", {}};
        for (const auto& p : curve) series.points.push_back({p[0], p[1]});
        const std::string path =
            derive_svg_path(output.empty() ? "hysteresis.csv" : output);
        write_text_file(path,
                        svg_plot("paired rotation entries", "f23", "f32", {series}));
        std::printf("wrote plot to %s\n", path.c_str());
    }
    return 0;
}

int cmd_qft_sinsurface(std::size_t n, const std::string& output, bool svg) {
    const auto points = sinsurface(n);
    std::printf("points = %zu\n", points.size());
    if (!output.empty()) {
        std::string csv = "x,y,z\n";
        for (const auto& p : points)
            csv += fmt(p[0]) + "," + fmt(p[1]) + "," + fmt(p[2]) + "\n";
        write_text_file(output, csv);
        std::printf("wrote %s\n", output.c_str());
    }
    if (svg) {
        std::vector<SvgSeries> series;
        const char* colors[3] = {"red", "green", "blue"};
        const std::size_t picks[3] = {0, n / 4, n / 2};
        for (int s = 0; s < 3; ++s) {
            SvgSeries row{"v index " + std::to_string(picks[s]), colors[s], {}};
            for (std::size_t u = 0; u < n; ++u) {
                const double uu = 2.0 * kPi * static_cast<double>(u) / static_cast<double>(n);
                row.points.push_back({uu, points[u * n + picks[s]][2]});
            }
            series.push_back(std::move(row));
        }
        const std::string path =
            derive_svg_path(output.empty() ? "sinsurface.csv" : output);
        write_text_file(path, svg_plot("surface sections", "u", "height", series));
        std::printf("wrote plot to %s\n", path.c_str());
    }
    return 0;
}

int cmd_qft_polar_volume(std::size_t samples, std::uint64_t seed, const std::string& output,
                         bool svg) {
    const double estimate = ball4_volume_mc(samples, seed);
    const double exact = kPi * kPi / 2.0;
    const double rel = std::abs(estimate - exact) / exact;
    std::printf("estimate = %s\n", fmt(estimate).c_str());
    std::printf("exact = %s\n", fmt(exact).c_str());
    std::printf("relative_error = %s\n", fmt(rel).c_str());
    if (!output.empty()) {
        std::string csv = "metric,value\n";
        csv += "estimate," + fmt(estimate) + "\n";
        csv += "exact," + fmt(exact) + "\n";
        csv += "relative_error," + fmt(rel) + "\n";
        write_text_file(output, csv);
        std::printf("wrote %s\n", output.c_str());
    }
    if (svg) {
        SvgSeries conv{"estimate", "blue", {}};
        for (int k = 1; k <= 50; ++k) {
            const std::size_t part = std::max<std::size_t>(1, samples * k / 50);
            conv.points.push_back({static_cast<double>(part), ball4_volume_mc(part, seed)});
        }
        SvgSeries truth{"exact", "red", {{conv.points.front()[0], exact},
                                         {conv.points.back()[0], exact}}};
        const std::string path =
            derive_svg_path(output.empty() ? "polar_volume.csv" : output);
        write_text_file(path, svg_plot("volume estimate convergence", "samples", "volume",
                                       {conv, truth}));
        std::printf("wrote plot to %s\n", path.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clifford-algebra loop and quaternion transform laboratory", "quatlab"};
    app.require_subcommand(1);

    CLI::App* verify = app.add_subcommand("verify", "Run the built-in identity checks");

    CLI::App* loop_cmd = app.add_subcommand("loop", "Loop sweeps");
    loop_cmd->require_subcommand(1);
    CLI::App* run = loop_cmd->add_subcommand("run", "Sweep loops over a j grid and write CSV");
    LoopRunOptions opt;
    run->add_option("--loop", opt.loop_name, "Loop name (default: all loops)");
    run->add_option("--axis", opt.axis_name, "Time axis e1e4/e2e4/e3e4 (default: per loop)");
    run->add_option("--jmin", opt.jmin, "Grid start")->capture_default_str();
    run->add_option("--jmax", opt.jmax, "Grid end")->capture_default_str();
    run->add_option("--jstep", opt.jstep, "Grid step")->capture_default_str();
    run->add_option("--j0", opt.j0, "Reference coupling")->capture_default_str();
    run->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
    run->add_option("--sets", opt.sets, "Number of draw sets")->capture_default_str();
    run->add_option("--du", opt.du, "Spatial lattice unit")->capture_default_str();
    run->add_option("--dt", opt.dt, "Time lattice unit")->capture_default_str();
    run->add_option("-o,--output", opt.output, "Output CSV path")->capture_default_str();
    run->add_flag("--svg", opt.svg, "Also write SVG plots");
    run->add_flag("--verbatim-steps", opt.verbatim,
                  "Use the recorded per-step coefficient maps instead of the symmetrized "
                  "schedule");
    run->set_config("--config", "", "Flat key=value config file");

    CLI::App* qft_cmd = app.add_subcommand("qft", "Transform demos");
    qft_cmd->require_subcommand(1);

    CLI::App* delta = qft_cmd->add_subcommand("delta", "Delta-rule demo");
    std::vector<std::string> delta_axes = {"i", "j"};
    double delta_b = 1.0;
    std::size_t delta_grid = 32;
    std::string delta_out;
    bool delta_svg = false;
    delta->add_option("--axes", delta_axes, "Two pure axes from i, j, k")->expected(2);
    delta->add_option("--b", delta_b, "Phase scale")->capture_default_str();
    delta->add_option("--grid", delta_grid, "Grid size")->capture_default_str();
    delta->add_option("-o,--output", delta_out, "Output CSV path");
    delta->add_flag("--svg", delta_svg, "Also write an SVG plot");

    CLI::App* stft_cmd = qft_cmd->add_subcommand("stft", "Round-trip demo");
    std::size_t stft_n = 64;
    std::size_t stft_window = 16;
    std::size_t stft_hop = 8;
    std::uint64_t stft_seed = 7;
    std::string stft_out;
    bool stft_svg = false;
    stft_cmd->add_option("--n", stft_n, "Signal length")->capture_default_str();
    stft_cmd->add_option("--window", stft_window, "Window length")->capture_default_str();
    stft_cmd->add_option("--hop", stft_hop, "Hop size")->capture_default_str();
    stft_cmd->add_option("--seed", stft_seed, "Random seed")->capture_default_str();
    stft_cmd->add_option("-o,--output", stft_out, "Output CSV path");
    stft_cmd->add_flag("--svg", stft_svg, "Also write an SVG plot");

    CLI::App* hyst = qft_cmd->add_subcommand("hysteresis", "Paired rotation-entry curve");
    std::size_t hyst_n = 256;
    std::string hyst_out;
    bool hyst_svg = false;
    hyst->add_option("--n", hyst_n, "Sample count")->capture_default_str();
    hyst->add_option("-o,--output", hyst_out, "Output CSV path");
    hyst->add_flag("--svg", hyst_svg, "Also write an SVG plot");

    CLI::App* sins = qft_cmd->add_subcommand("sinsurface", "Sine surface samples");
    std::size_t sins_n = 64;
    std::string sins_out;
    bool sins_svg = false;
    sins->add_option("--n", sins_n, "Grid size per side")->capture_default_str();
    sins->add_option("-o,--output", sins_out, "Output CSV path");
    sins->add_flag("--svg", sins_svg, "Also write an SVG plot");

    CLI::App* polar = qft_cmd->add_subcommand("polar-volume", "Monte Carlo 4-ball volume");
    std::size_t polar_samples = 1000000;
    std::uint64_t polar_seed = 7;
    std::string polar_out;
    bool polar_svg = false;
    polar->add_option("--samples", polar_samples, "Sample count")->capture_default_str();
    polar->add_option("--seed", polar_seed, "Random seed")->capture_default_str();
    polar->add_option("-o,--output", polar_out, "Output CSV path");
    polar->add_flag("--svg", polar_svg, "Also write an SVG plot");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion")
            return code;
        return 2;
    }

    try {
        if (verify->parsed()) return cmd_verify();
        if (run->parsed()) return cmd_loop_run(opt);
        if (delta->parsed())
            return cmd_qft_delta(delta_axes[0], delta_axes[1], delta_b, delta_grid, delta_out,
                                 delta_svg);
        if (stft_cmd->parsed())
            return cmd_qft_stft(stft_n, stft_window, stft_hop, stft_seed, stft_out, stft_svg);
        if (hyst->parsed()) return cmd_qft_hysteresis(hyst_n, hyst_out, hyst_svg);
        if (sins->parsed()) return cmd_qft_sinsurface(sins_n, sins_out, sins_svg);
        if (polar->parsed())
            return cmd_qft_polar_volume(polar_samples, polar_seed, polar_out, polar_svg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

#include "quatlab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <tuple>

namespace quatlab {

namespace {

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_coord(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Bounds {
    double lo = 0.0;
    double hi = 1.0;

    void expand(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
};

}  // namespace

std::vector<CsvRow> sweep_rows(const std::vector<LoopSweep>& sweeps) {
    std::vector<CsvRow> rows;
    for (const LoopSweep& sw : sweeps) {
        for (const SpectrumSeries& series : sw.steps) {
            const bool final_step = series.step == static_cast<int>(sw.steps.size());
            for (std::size_t ji = 0; ji < series.jgrid.size(); ++ji) {
                for (int set = 0; set < series.sets; ++set) {
                    const SpectrumPoint& p = series.at(ji, set);
                    CsvRow base;
                    base.loop = sw.loop;
                    base.step = series.step;
                    base.axis = sw.axis;
                    base.j = series.jgrid[ji];
                    base.set = set;
                    const auto push = [&](const char* kind, double value) {
                        CsvRow row = base;
                        row.kind = kind;
                        row.value = value;
                        rows.push_back(std::move(row));
                    };
                    push("abs_eig_mean", abs_eig_mean(p.eigs));
                    if (final_step) push("action", p.action);
                    const std::size_t half = p.sigma.size() / 2;
                    double large = 0.0;
                    double small = 0.0;
                    double mixed = 0.0;
                    for (std::size_t k = 0; k < p.sigma.size(); ++k) {
                        mixed += p.sigma[k];
                        (k < half ? large : small) += p.sigma[k];
                    }
                    push("large", large / static_cast<double>(half));
                    push("mixed", mixed / static_cast<double>(p.sigma.size()));
                    push("small", small / static_cast<double>(p.sigma.size() - half));
                }
            }
        }
    }
    return rows;
}

std::string csv_text(std::vector<CsvRow> rows) {
    std::sort(rows.begin(), rows.end(), [](const CsvRow& a, const CsvRow& b) {
        return std::tie(a.loop, a.step, a.j, a.set, a.kind) <
               std::tie(b.loop, b.step, b.j, b.set, b.kind);
    });
    std::string out = "loop,step,time_axis,j,set,kind,value\n";
    for (const CsvRow& r : rows) {
        out += r.loop;
        out += ',';
        out += std::to_string(r.step);
        out += ',';
        out += to_string(r.axis);
        out += ',';
        out += fmt_real(r.j);
        out += ',';
        out += std::to_string(r.set);
        out += ',';
        out += r.kind;
        out += ',';
        out += fmt_real(r.value);
        out += '\n';
    }
    return out;
}

std::string svg_plot(const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<SvgSeries>& series) {
    constexpr double kWidth = 800.0;
    constexpr double kLeft = 70.0;
    constexpr double kRight = 770.0;
    constexpr double kTop = 50.0;
    constexpr double kBottom = 550.0;

    Bounds bx;
    Bounds by;
    bool first = true;
    for (const SvgSeries& s : series) {
        for (const auto& p : s.points) {
            if (first) {
                bx.lo = bx.hi = p[0];
                by.lo = by.hi = p[1];
                first = false;
            } else {
                bx.expand(p[0]);
                by.expand(p[1]);
            }
        }
    }
    if (first) {
        bx = {0.0, 1.0};
        by = {0.0, 1.0};
    }
    const auto pad = [](Bounds& b) {
        const double span = b.hi - b.lo;
        const double margin = span > 0.0 ? 0.05 * span : 1.0;
        b.lo -= margin;
        b.hi += margin;
    };
    pad(bx);
    pad(by);
    const auto px = [&](double x) {
        return kLeft + (x - bx.lo) / (bx.hi - bx.lo) * (kRight - kLeft);
    };
    const auto py = [&](double y) {
        return kBottom - (y - by.lo) / (by.hi - by.lo) * (kBottom - kTop);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt_coord(kWidth / 2) + "\" y=\"28\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"18\">" + title + "</text>\n";
    svg += "<rect x=\"" + fmt_coord(kLeft) + "\" y=\"" + fmt_coord(kTop) + "\" width=\"" +
           fmt_coord(kRight - kLeft) + "\" height=\"" + fmt_coord(kBottom - kTop) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt_coord((kLeft + kRight) / 2) + "\" y=\"585\" "
           "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
           x_label + "</text>\n";
    svg += "<text x=\"20\" y=\"" + fmt_coord((kTop + kBottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
           "transform=\"rotate(-90 20 " + fmt_coord((kTop + kBottom) / 2) + ")\">" +
           y_label + "</text>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double fx = bx.lo + (bx.hi - bx.lo) * tick / 4.0;
        const double fy = by.lo + (by.hi - by.lo) * tick / 4.0;
        svg += "<text x=\"" + fmt_coord(px(fx)) + "\" y=\"568\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\" font-size=\"12\">" + fmt_tick(fx) + "</text>\n";
        svg += "<text x=\"" + fmt_coord(kLeft - 8.0) + "\" y=\"" + fmt_coord(py(fy) + 4.0) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
               fmt_tick(fy) + "</text>\n";
    }
    double legend_y = kTop + 18.0;
    for (const SvgSeries& s : series) {
        svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"";
        bool leading = true;
        for (const auto& p : s.points) {
            if (!leading) svg += ' ';
            leading = false;
            svg += fmt_coord(px(p[0])) + "," + fmt_coord(py(p[1]));
        }
        svg += "\"/>\n";
        svg += "<text x=\"" + fmt_coord(kRight - 10.0) + "\" y=\"" + fmt_coord(legend_y) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"13\" fill=\"" +
               s.color + "\">" + s.label + "</text>\n";
        legend_y += 18.0;
    }
    svg += "</svg>\n";
    return svg;
}

std::string svg_sweep_plot(const LoopSweep& sweep, int step) {
    if (step < 1 || step > static_cast<int>(sweep.steps.size()))
        throw std::invalid_argument("svg_sweep_plot: step out of range");
    const SpectrumSeries& series = sweep.steps[static_cast<std::size_t>(step - 1)];
    const SeparatedSeries sep = svd_separate(series);
    SvgSeries large{"large", "red", {}};
    SvgSeries small{"small", "green", {}};
    SvgSeries mixed{"mixed", "blue", {}};
    for (const SeparatedPoint& p : sep.points) {
        large.points.push_back({4.0 * p.j, p.large_mean});
        small.points.push_back({4.0 * p.j, p.small_mean});
        mixed.points.push_back({4.0 * p.j, p.mixed_mean});
    }
    return svg_plot(sweep.loop + " step " + std::to_string(step) + " (" + to_string(sweep.axis) +
                        ")",
                    "4j", "singular value mean", {large, small, mixed});
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string derive_svg_path(const std::string& out_path, const std::string& suffix) {
    std::string stem = out_path;
    const std::string ext = ".csv";
    if (stem.size() >= ext.size() &&
        stem.compare(stem.size() - ext.size(), ext.size(), ext) == 0)
        stem.erase(stem.size() - ext.size());
    return stem + suffix + ".svg";
}

}  // namespace quatlab

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "quatlab/io.hpp"
#include "quatlab/spectra.hpp"

using namespace quatlab;

namespace {

SpectrumPoint make_cell(double j, int set, std::vector<Complex> eigs, std::vector<double> sigma,
                        double action) {
    SpectrumPoint p;
    p.j = j;
    p.set = set;
    p.eigs = std::move(eigs);
    p.sigma = std::move(sigma);
    p.action = action;
    return p;
}

LoopSweep synthetic_sweep() {
    LoopSweep sw;
    sw.loop = "syn";
    sw.axis = TimeAxis::e2e4;
    sw.steps.resize(2);
    for (int st = 1; st <= 2; ++st) {
        SpectrumSeries& series = sw.steps[static_cast<std::size_t>(st - 1)];
        series.loop = "syn";
        series.step = st;
        series.axis = TimeAxis::e2e4;
        series.jgrid = {0.0, 0.5};
        series.sets = 1;
        for (double j : series.jgrid)
            series.points.push_back(make_cell(j, 0, {Complex(0.0, 2.0), Complex(0.0, -2.0)},
                                              {3.0, 1.0}, 4.0));
    }
    return sw;
}

}  // namespace

TEST_CASE("row expansion emits one row per kind") {
    const std::vector<CsvRow> rows = sweep_rows({synthetic_sweep()});
    // step 1: abs_eig_mean, large, mixed, small for each of 2 j points;
    // step 2 adds the action row
    CHECK(rows.size() == 8 + 10);

    std::map<std::string, int> counts;
    for (const CsvRow& r : rows) counts[r.kind] += 1;
    CHECK(counts["abs_eig_mean"] == 4);
    CHECK(counts["action"] == 2);
    CHECK(counts["large"] == 4);
    CHECK(counts["mixed"] == 4);
    CHECK(counts["small"] == 4);

    for (const CsvRow& r : rows) {
        CHECK(r.loop == "syn");
        if (r.kind == "abs_eig_mean") CHECK(r.value == 2.0);
        if (r.kind == "action") {
            CHECK(r.step == 2);
            CHECK(r.value == 4.0);
        }
        if (r.kind == "large") CHECK(r.value == 3.0);
        if (r.kind == "small") CHECK(r.value == 1.0);
        if (r.kind == "mixed") CHECK(r.value == 2.0);
    }
}

TEST_CASE("csv rendering is sorted and fixed-format") {
    std::vector<CsvRow> rows;
    CsvRow r;
    r.loop = "b";
    r.step = 1;
    r.axis = TimeAxis::e2e4;
    r.j = 0.5;
    r.set = 0;
    r.kind = "mixed";
    r.value = 1.5;
    rows.push_back(r);
    r.loop = "a";
    r.step = 2;
    r.axis = TimeAxis::e1e4;
    r.j = 0.0;
    r.set = 1;
    r.kind = "action";
    r.value = 0.125;
    rows.push_back(r);
    r.set = 0;
    r.value = -2.0;
    rows.push_back(r);
    r.kind = "abs_eig_mean";
    r.value = 0.1;
    rows.push_back(r);

    const std::string expected =
        "loop,step,time_axis,j,set,kind,value\n"
        "a,2,e1e4,0,0,abs_eig_mean,0.10000000000000001\n"
        "a,2,e1e4,0,0,action,-2\n"
        "a,2,e1e4,0,1,action,0.125\n"
        "b,1,e2e4,0.5,0,mixed,1.5\n";
    CHECK(csv_text(rows) == expected);

    CHECK(csv_text({}) == "loop,step,time_axis,j,set,kind,value\n");
}

TEST_CASE("line plot svg structure") {
    SvgSeries alpha{"alpha", "red", {{0.0, 0.0}, {1.0, 1.0}}};
    SvgSeries beta{"beta", "blue", {{0.0, 1.0}, {1.0, 0.0}}};
    const std::string svg = svg_plot("demo title", "xlab", "ylab", {alpha, beta});
    CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\"") !=
          std::string::npos);
    CHECK(svg.find(">demo title</text>") != std::string::npos);
    CHECK(svg.find(">xlab</text>") != std::string::npos);
    CHECK(svg.find(">ylab</text>") != std::string::npos);
    CHECK(svg.find("stroke=\"red\"") != std::string::npos);
    CHECK(svg.find("stroke=\"blue\"") != std::string::npos);
    CHECK(svg.find(">alpha</text>") != std::string::npos);
    CHECK(svg.find(">beta</text>") != std::string::npos);
    // data corners with 5% padding: x in [-0.05, 1.05] over [70, 770],
    // y in [-0.05, 1.05] over [550, 50]
    CHECK(svg.find("points=\"101.82,527.27 738.18,72.73\"") != std::string::npos);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);

    const std::string empty = svg_plot("empty", "x", "y", {});
    CHECK(empty.find("<svg") != std::string::npos);
    CHECK(empty.find("polyline") == std::string::npos);
}

TEST_CASE("sweep plot draws the three separated series") {
    const LoopSweep sw = synthetic_sweep();
    const std::string svg = svg_sweep_plot(sw, 1);
    CHECK(svg.find(">syn step 1 (e2e4)</text>") != std::string::npos);
    CHECK(svg.find(">4j</text>") != std::string::npos);
    CHECK(svg.find(">singular value mean</text>") != std::string::npos);
    CHECK(svg.find(">large</text>") != std::string::npos);
    CHECK(svg.find(">small</text>") != std::string::npos);
    CHECK(svg.find(">mixed</text>") != std::string::npos);
    CHECK(svg.find("stroke=\"red\"") != std::string::npos);
    CHECK(svg.find("stroke=\"green\"") != std::string::npos);
    CHECK(svg.find("stroke=\"blue\"") != std::string::npos);

    CHECK_THROWS_AS((void)svg_sweep_plot(sw, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)svg_sweep_plot(sw, 3), std::invalid_argument);
}

TEST_CASE("text files round trip") {
    const std::string path = "quatlab_io_roundtrip.txt";
    const std::string text = "line one\nline two\n";
    write_text_file(path, text);
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == text);
    std::remove(path.c_str());

    CHECK_THROWS_AS(write_text_file("no_such_dir_xyz/out.txt", "x"), std::runtime_error);
}

TEST_CASE("svg path derivation") {
    CHECK(derive_svg_path("out.csv") == "out.svg");
    CHECK(derive_svg_path("out.csv", "_step3") == "out_step3.svg");
    CHECK(derive_svg_path("data/sweep") == "data/sweep.svg");
    CHECK(derive_svg_path("a.csv.csv") == "a.csv.svg");
    CHECK(derive_svg_path("x.CSV") == "x.CSV.svg");
}

#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "quatlab/clifford.hpp"
#include "quatlab/conformal.hpp"
#include "quatlab/linalg.hpp"
#include "quatlab/loops.hpp"

using namespace quatlab;

namespace {

/// Minimal well-formed two-step program used as the mutation baseline.
const char* kTinyLoop =
    "loop T1\n"
    "space 2+1\n"
    "axes e3e4\n"
    "directions 23 -23\n"
    "path (i,j,0) (i+u,j,0) (i,j,0)\n"
    "draws 1:s1 2:s1\n"
    "step 1 x + s1\n"
    "V  = [a1*I, 0; 0, a1*ref]\n"
    "Vd = [a1*ref, 0; 0, a1*I]\n"
    "step 2 x - s1\n"
    "V  = [a1*I, 0; 0, a1*ref]\n"
    "Vd = [a1*ref, 0; 0, a1*I]\n";

std::string replaced(const std::string& from, const std::string& to) {
    std::string text = kTinyLoop;
    const std::size_t pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, from.size(), to);
    return text;
}

ComplexMatrix zero_phi() {
    ComplexMatrix m(8, 8);
    m.set_block(4, 0, ComplexMatrix::identity(4));
    return m;
}

}  // namespace

TEST_CASE("embedded loop table") {
    const std::vector<std::string> names = loop_names();
    const std::vector<std::string> expected = {"L19", "L20", "L21", "L22", "L23",
                                               "L24", "L25", "L3p", "L4p", "L7p"};
    CHECK(names == expected);
    CHECK(loop_table().size() == 10);
    for (const std::string& n : names) CHECK(loop(n).name == n);
    CHECK_THROWS_AS((void)loop("L99"), std::invalid_argument);
    CHECK_THROWS_WITH_AS((void)loop("L99"),
                         "unknown loop 'L99' (valid: L19, L20, L21, L22, L23, L24, L25, L3p, "
                         "L4p, L7p)",
                         std::invalid_argument);
}

TEST_CASE("program structure of the embedded loops") {
    const LoopProgram& l19 = loop("L19");
    CHECK(l19.space == Space::three_plus_one);
    CHECK(l19.spatial_dims == 3);
    REQUIRE(l19.axes.size() == 1);
    CHECK(l19.axes.front() == TimeAxis::e2e4);
    CHECK(l19.allows_axis(TimeAxis::e2e4));
    CHECK_FALSE(l19.allows_axis(TimeAxis::e1e4));
    CHECK(l19.directions.size() == 8);
    CHECK(l19.path.size() == 9);
    CHECK(l19.steps.size() == 8);
    // recorded draw row: 1:s1 2:s2 3:s3 4:s4 5:s3 6:s4 7:s1 8:s2
    CHECK(l19.draw_s[1] == 1);
    CHECK(l19.draw_s[4] == 4);
    CHECK(l19.draw_s[5] == 3);
    CHECK(l19.draw_s[7] == 1);
    CHECK(l19.draw_s[8] == 2);

    const LoopProgram& l21 = loop("L21");
    REQUIRE(l21.axes.size() == 3);
    CHECK(l21.axes.front() == TimeAxis::e1e4);

    const LoopProgram& l7p = loop("L7p");
    CHECK(l7p.space == Space::two_plus_one);
    CHECK(l7p.spatial_dims == 2);
    CHECK(l7p.steps.size() == 8);
    CHECK(l7p.path.size() == 9);

    const LoopProgram& l3p = loop("L3p");
    CHECK(l3p.steps.size() == 6);
    CHECK(l3p.path.size() == 7);
    REQUIRE(l3p.axes.size() == 2);
    CHECK(l3p.axes.front() == TimeAxis::e3e4);

    for (const std::string& n : loop_names()) {
        const LoopProgram& prog = loop(n);
        // parser guarantees closure; pin it down for all embedded programs
        CHECK(prog.path.front().space == prog.path.back().space);
        CHECK(prog.path.front().time == prog.path.back().time);
        CHECK(prog.path.front().space == std::array<int, 3>{});
        CHECK(prog.directions.size() == prog.steps.size());
    }
}

TEST_CASE("path coordinates scale by the lattice spacings") {
    const LoopProgram& l19 = loop("L19");
    // fifth vertex of the recorded path: all three spatial offsets plus time
    const std::vector<double> c = path_coords(l19, l19.path[4], 0.1, 0.7);
    REQUIRE(c.size() == 4);
    CHECK(c[0] == 0.1);
    CHECK(c[1] == 0.1);
    CHECK(c[2] == 0.1);
    CHECK(c[3] == 0.7);

    const LoopProgram& l7p = loop("L7p");
    // fourth vertex walks the first slot twice
    const std::vector<double> p = path_coords(l7p, l7p.path[3], 0.25, 0.5);
    REQUIRE(p.size() == 3);
    CHECK(p[0] == 0.5);
    CHECK(p[1] == 0.25);
    CHECK(p[2] == 0.0);
}

TEST_CASE("draw streams are reproducible and correctly keyed") {
    const RandomDraws a = draws_for(42, 0, 0.25);
    const RandomDraws b = draws_for(42, 0, 0.25);
    for (std::size_t i = 0; i < 4; ++i) CHECK(a.s[i] == b.s[i]);
    for (std::size_t i = 0; i < 8; ++i) CHECK(a.coef[i] == b.coef[i]);

    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(a.s[i] > 0.0);
        CHECK(a.s[i] < 0.25);
    }
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(a.coef[i] > 0.0);
        CHECK(a.coef[i] < 1.0);
    }

    // the spatial scale only rescales the s draws
    const RandomDraws wide = draws_for(42, 0, 0.5);
    for (std::size_t i = 0; i < 4; ++i) CHECK(wide.s[i] == 2.0 * a.s[i]);
    for (std::size_t i = 0; i < 8; ++i) CHECK(wide.coef[i] == a.coef[i]);

    // different sets and seeds give different numbers
    const RandomDraws set1 = draws_for(42, 1, 0.25);
    CHECK(set1.s[0] != a.s[0]);
    const RandomDraws seed43 = draws_for(43, 0, 0.25);
    CHECK(seed43.s[0] != a.s[0]);

    CHECK(a.a1() == a.coef[0]);
    CHECK(a.b2() == a.coef[3]);
    CHECK(a.d1() == a.coef[6]);

    CHECK_THROWS_AS((void)draws_for(42, -1, 0.25), std::invalid_argument);
    CHECK_THROWS_AS((void)draws_for(42, 0, 0.0), std::invalid_argument);
}

TEST_CASE("symmetrized coefficient walkthrough") {
    LoopRunConfig cfg;
    cfg.axis = TimeAxis::e2e4;
    cfg.j = 1.25;
    cfg.j0 = 0.25;
    cfg.seed = 9;
    cfg.set_index = 3;
    const LoopRun run = run_loop(loop("L19"), cfg);
    REQUIRE(run.steps.size() == 8);
    const RandomDraws d = draws_for(9, 3, cfg.du);

    const double v1 = cfg.j + d.s[0];
    const double v2 = cfg.j0 + d.s[1];
    const double v3 = cfg.j0 + d.s[2];
    const double v4 = cfg.j0 + d.s[3];

    using Map = std::array<double, kChannelCount>;
    const std::array<Map, 8> want = {{{v1, 0.0, 0.0, 0.0, 0.0},
                                      {v1, v2, 0.0, 0.0, 0.0},
                                      {v1, v2, v3, 0.0, 0.0},
                                      {v1, v2, v3, v4, 0.0},
                                      {v1, v2, 0.0, v4, 0.0},
                                      {v1, v2, 0.0, 0.0, 0.0},
                                      {v1 - (cfg.j0 + d.s[0]), v2, 0.0, 0.0, 0.0},
                                      {v1 - (cfg.j0 + d.s[0]), 0.0, 0.0, 0.0, 0.0}}};
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(run.steps[k].step == static_cast<int>(k) + 1);
        for (std::size_t c = 0; c < kChannelCount; ++c) {
            CHECK(run.steps[k].cx[c] == want[k][c]);
            CHECK(run.steps[k].cxbar[c] == want[k][c]);
        }
    }

    // materialization uses the channel-to-bivector map of the conformal blocks
    const StepResult& s4 = run.steps[3];
    ComplexMatrix direct = s4.cx[0] * biv(2, 3);
    direct += s4.cx[1] * biv(1, 3);
    direct += s4.cx[2] * biv(1, 2);
    direct += s4.cx[3] * time_biv(cfg.axis);
    direct += s4.cx[4] * biv(3, 4);
    CHECK(max_abs_diff(s4.x, direct) == 0.0);
    ComplexMatrix direct_bar = s4.cxbar[0] * biv_bar(2, 3);
    direct_bar += s4.cxbar[1] * biv_bar(1, 3);
    direct_bar += s4.cxbar[2] * biv_bar(1, 2);
    direct_bar += s4.cxbar[3] * time_biv_bar(cfg.axis);
    direct_bar += s4.cxbar[4] * biv_bar(3, 4);
    CHECK(max_abs_diff(s4.xbar, direct_bar) == 0.0);
    CHECK(max_abs_diff(s4.phi, assemble_phi(s4.x, s4.xbar)) == 0.0);
}

TEST_CASE("coefficients cancel exactly at the base point") {
    for (const std::string& name : loop_names()) {
        const LoopProgram& prog = loop(name);
        for (TimeAxis axis : prog.axes) {
            LoopRunConfig cfg;
            cfg.axis = axis;
            cfg.j = 0.75;
            cfg.j0 = 0.75;
            cfg.seed = 42;
            const LoopRun run = run_loop(prog, cfg);
            const StepResult& last = run.steps.back();
            for (std::size_t c = 0; c < kChannelCount; ++c) {
                CHECK(last.cx[c] == 0.0);
                CHECK(last.cxbar[c] == 0.0);
            }
            CHECK(last.x.max_abs() == 0.0);
            CHECK(last.xbar.max_abs() == 0.0);
            // the embedding collapses to the base point, so the conjugation
            // difference of the coordinates vanishes identically
            CHECK(last.delta_coord.max_abs() == 0.0);
            CHECK(nuclear_norm(last.delta_coord) == 0.0);
        }
    }
}

TEST_CASE("doubly walked channel unwinds last in first out") {
    LoopRunConfig cfg;
    cfg.axis = TimeAxis::e3e4;
    cfg.j = 0.5;
    cfg.j0 = 0.0;
    cfg.seed = 42;
    const LoopRun run = run_loop(loop("L7p"), cfg);
    const RandomDraws d = draws_for(42, 0, cfg.du);
    const double v1 = cfg.j + d.s[0];
    const double v3 = cfg.j0 + d.s[2];

    // steps 1 and 3 both feed the x channel
    CHECK(run.steps[0].cx[0] == v1);
    CHECK(run.steps[2].cx[0] == v1 + v3);
    // step 6 unwinds the second walk, leaving the first intact
    CHECK(run.steps[5].cx[0] == v1);
    // step 7 reverses the first walk at the shifted value
    CHECK(run.steps[6].cx[0] == v1 - (cfg.j0 + d.s[0]));
    // away from the base point the x channel does not return to zero
    CHECK(run.steps[7].cx[0] != 0.0);

    cfg.j = 0.0;
    const LoopRun at_base = run_loop(loop("L7p"), cfg);
    CHECK(at_base.steps[5].cx[0] == at_base.steps[0].cx[0]);
    CHECK(at_base.steps[6].cx[0] == 0.0);
    CHECK(at_base.steps[7].cx[0] == 0.0);
}

TEST_CASE("verbatim maps replace the recorded sides") {
    LoopRunConfig cfg;
    cfg.j = 0.0;
    cfg.j0 = 0.0;
    cfg.seed = 42;
    cfg.verbatim = true;
    const RandomDraws d = draws_for(42, 0, cfg.du);

    cfg.axis = TimeAxis::e2e4;
    const LoopRun l19 = run_loop(loop("L19"), cfg);
    const StepResult& f19 = l19.steps.back();
    // the recorded x side keeps the full time coefficient at the endpoint
    CHECK(f19.cx[0] == 0.0);
    CHECK(f19.cx[1] == 0.0);
    CHECK(f19.cx[2] == 0.0);
    CHECK(f19.cx[3] == d.s[3]);
    CHECK(f19.cx[4] == 0.0);
    // the xbar side has no recorded map and follows the symmetrized sums
    for (std::size_t c = 0; c < kChannelCount; ++c) CHECK(f19.cxbar[c] == 0.0);

    const LoopRun l20 = run_loop(loop("L20"), cfg);
    const StepResult& f20 = l20.steps.back();
    // the recorded reversal pairs x with the step-5 draw
    CHECK(f20.cx[0] == d.s[0] - d.s[2]);
    CHECK(f20.cx[3] == d.s[3]);
    CHECK(f20.cxbar[0] == d.s[0] - d.s[2]);
    CHECK(f20.cxbar[3] == 0.0);

    cfg.axis = TimeAxis::e1e4;
    const LoopRun l21 = run_loop(loop("L21"), cfg);
    const StepResult& f21 = l21.steps.back();
    // the recorded reversal pairs x with the step-6 draw
    CHECK(f21.cx[0] == d.s[0] - d.s[3]);
    CHECK(f21.cx[3] == 0.0);

    cfg.axis = TimeAxis::e2e4;
    const LoopRun l22 = run_loop(loop("L22"), cfg);
    const StepResult& f22 = l22.steps.back();
    CHECK(f22.cx[0] == 0.0);
    CHECK(f22.cx[1] == 0.0);
    CHECK(f22.cx[3] == d.s[3]);
    CHECK(f22.cx[4] == -d.s[3]);
    // the recorded xbar side keeps the full y coefficient
    CHECK(f22.cxbar[1] == d.s[1]);
    CHECK(f22.cxbar[3] == d.s[3]);
    CHECK(f22.cxbar[4] == -d.s[3]);
    // on this axis the two time channels ride different bivectors
    CHECK(f22.x.max_abs() > 0.0);

    cfg.axis = TimeAxis::e3e4;
    const LoopRun l22f = run_loop(loop("L22"), cfg);
    // the (3,4) channel folds onto the selected axis and cancels exactly
    CHECK(l22f.steps.back().x.max_abs() == 0.0);

    // without the flag the recorded maps are ignored
    cfg.verbatim = false;
    cfg.axis = TimeAxis::e2e4;
    const LoopRun plain = run_loop(loop("L19"), cfg);
    CHECK(plain.steps.back().cx[3] == 0.0);
}

TEST_CASE("conjugation recipes evaluate to the recorded blocks") {
    LoopRunConfig cfg;
    cfg.axis = TimeAxis::e2e4;
    cfg.j = 0.5;
    cfg.seed = 7;
    cfg.set_index = 2;
    const LoopRun run = run_loop(loop("L19"), cfg);
    const RandomDraws d = draws_for(7, 2, cfg.du);
    const ComplexMatrix i4 = ComplexMatrix::identity(4);
    const ComplexMatrix& ref = catalog().ref;

    // step 1: V = [a1*I, b1*B23; c1*B23, 0], Vd = [0, c1*bar23; b1*bar23, a1*ref]
    {
        ComplexMatrix v(8, 8);
        v.set_block(0, 0, d.a1() * i4);
        v.set_block(0, 4, d.b1() * biv(2, 3));
        v.set_block(4, 0, d.c1() * biv(2, 3));
        CHECK(max_abs_diff(run.steps[0].v, v) == 0.0);

        ComplexMatrix vd(8, 8);
        vd.set_block(0, 4, d.c1() * biv_bar(2, 3));
        vd.set_block(4, 0, d.b1() * biv_bar(2, 3));
        vd.set_block(4, 4, d.a1() * ref);
        CHECK(max_abs_diff(run.steps[0].vd, vd) == 0.0);
    }

    // step 2 stacks two terms in the upper-left block
    {
        ComplexMatrix block = d.a1() * i4;
        block += d.a2() * biv(1, 3);
        CHECK(max_abs_diff(run.steps[1].v.block(0, 0, 4, 4), block) == 0.0);
        CHECK(max_abs_diff(run.steps[1].v.block(4, 4, 4, 4), d.d2() * biv(1, 3)) == 0.0);
    }

    // step 3 resolves the time token against the configured axis
    CHECK(max_abs_diff(run.steps[2].v.block(4, 4, 4, 4),
                       d.d1() * time_biv(TimeAxis::e2e4)) == 0.0);
    CHECK(max_abs_diff(run.steps[2].vd.block(0, 0, 4, 4),
                       d.d1() * time_biv_bar(TimeAxis::e2e4)) == 0.0);

    // signs carry through: step 5 negates the diagonal time recipe
    CHECK(max_abs_diff(run.steps[4].v.block(4, 4, 4, 4),
                       -d.d1() * time_biv(TimeAxis::e2e4)) == 0.0);

    // difference matrices follow their definitions
    const ComplexMatrix phi0 = zero_phi();
    for (const StepResult& st : run.steps) {
        CHECK(max_abs_diff(st.delta_matrix, vconj(st.phi, st.v, st.vd)) == 0.0);
        CHECK(max_abs_diff(st.delta_coord, st.delta_matrix - vconj(phi0, st.v, st.vd)) == 0.0);
    }
}

TEST_CASE("axis-conditioned conjugations select by the configured axis") {
    LoopRunConfig cfg;
    cfg.j = 0.5;
    cfg.seed = 11;
    const RandomDraws d = draws_for(11, 0, cfg.du);

    // the recorded step 4 uses a diagonal B12 recipe on one axis only
    cfg.axis = TimeAxis::e2e4;
    const LoopRun on_e2e4 = run_loop(loop("L22"), cfg);
    ComplexMatrix upper = d.a1() * ComplexMatrix::identity(4);
    upper += -d.a2() * biv(1, 2);
    CHECK(max_abs_diff(on_e2e4.steps[3].v.block(0, 0, 4, 4), upper) == 0.0);

    cfg.axis = TimeAxis::e1e4;
    const LoopRun on_e1e4 = run_loop(loop("L22"), cfg);
    CHECK(max_abs_diff(on_e1e4.steps[3].v.block(4, 4, 4, 4), d.d1() * biv(1, 4)) == 0.0);

    cfg.axis = TimeAxis::e3e4;
    const LoopRun on_e3e4 = run_loop(loop("L22"), cfg);
    CHECK(max_abs_diff(on_e3e4.steps[3].v.block(4, 4, 4, 4), d.d1() * biv(3, 4)) == 0.0);

    // the recorded step 8 names the (3,4) plane literally on every axis,
    // and its V-dagger block carries +d1 where the block transpose has -d1
    CHECK(max_abs_diff(on_e1e4.steps[7].v.block(4, 4, 4, 4), -d.d1() * biv(3, 4)) == 0.0);
    CHECK(max_abs_diff(on_e1e4.steps[7].vd.block(0, 0, 4, 4),
                       d.d1() * biv_bar(3, 4)) == 0.0);
}

TEST_CASE("loop runs reject axes outside the recorded set") {
    LoopRunConfig cfg;
    cfg.axis = TimeAxis::e1e4;
    CHECK_THROWS_AS((void)run_loop(loop("L19"), cfg), std::invalid_argument);
    cfg.axis = TimeAxis::e2e4;
    CHECK_THROWS_AS((void)run_loop(loop("L4p"), cfg), std::invalid_argument);

    // every recorded axis of L22 runs
    for (TimeAxis axis : {TimeAxis::e1e4, TimeAxis::e2e4, TimeAxis::e3e4}) {
        cfg.axis = axis;
        CHECK(run_loop(loop("L22"), cfg).steps.size() == 8);
    }
}

TEST_CASE("runs are deterministic") {
    LoopRunConfig cfg;
    cfg.axis = TimeAxis::e2e4;
    cfg.j = 1.5;
    cfg.seed = 42;
    cfg.set_index = 1;
    const LoopRun a = run_loop(loop("L25"), cfg);
    const LoopRun b = run_loop(loop("L25"), cfg);
    for (std::size_t k = 0; k < a.steps.size(); ++k) {
        CHECK(max_abs_diff(a.steps[k].delta_coord, b.steps[k].delta_coord) == 0.0);
        CHECK(max_abs_diff(a.steps[k].x, b.steps[k].x) == 0.0);
    }

    // a different set changes the draws and the matrices
    cfg.set_index = 2;
    const LoopRun c = run_loop(loop("L25"), cfg);
    CHECK(max_abs_diff(a.steps[0].x, c.steps[0].x) > 0.0);
}

TEST_CASE("parser accepts the tiny program") {
    const LoopProgram prog = parse_loop(kTinyLoop);
    CHECK(prog.name == "T1");
    CHECK(prog.space == Space::two_plus_one);
    CHECK(prog.steps.size() == 2);
    CHECK(prog.path.size() == 3);
    CHECK(prog.draw_s[1] == 1);
    CHECK(prog.draw_s[2] == 1);
    CHECK(prog.steps[1].sign == -1);

    // comments and blank lines are ignored
    const LoopProgram again = parse_loop(std::string("# header\n\n") + kTinyLoop);
    CHECK(again.name == "T1");
}

TEST_CASE("parser rejects malformed programs") {
    // missing draws line
    CHECK_THROWS_AS((void)parse_loop(replaced("draws 1:s1 2:s1\n", "")), std::invalid_argument);
    // unknown channel
    CHECK_THROWS_AS((void)parse_loop(replaced("step 1 x + s1", "step 1 w + s1")),
                    std::invalid_argument);
    // channel z is not available in a planar program
    CHECK_THROWS_AS((void)parse_loop(replaced("step 1 x + s1", "step 1 z + s1")),
                    std::invalid_argument);
    // t34 never appears as a step channel
    CHECK_THROWS_AS((void)parse_loop(replaced("step 1 x + s1", "step 1 t34 + s1")),
                    std::invalid_argument);
    // draw index out of range
    CHECK_THROWS_AS((void)parse_loop(replaced("step 1 x + s1", "step 1 x + s5")),
                    std::invalid_argument);
    // steps must be sequential
    CHECK_THROWS_AS((void)parse_loop(replaced("step 2 x - s1", "step 3 x - s1")),
                    std::invalid_argument);
    // path must close
    CHECK_THROWS_AS(
        (void)parse_loop(replaced("path (i,j,0) (i+u,j,0) (i,j,0)",
                                  "path (i,j,0) (i+u,j,0) (i+u,j,0)")),
        std::invalid_argument);
    // path must start at the origin
    CHECK_THROWS_AS(
        (void)parse_loop(replaced("path (i,j,0) (i+u,j,0) (i,j,0)",
                                  "path (i+u,j,0) (i+u,j+u,0) (i+u,j,0)")),
        std::invalid_argument);
    // each leg moves one slot by one unit
    CHECK_THROWS_AS(
        (void)parse_loop(replaced("path (i,j,0) (i+u,j,0) (i,j,0)",
                                  "path (i,j,0) (i+u,j+u,0) (i,j,0)")),
        std::invalid_argument);
    // directions row must match the step count
    CHECK_THROWS_AS((void)parse_loop(replaced("directions 23 -23", "directions 23")),
                    std::invalid_argument);
    // duplicate draw assignment
    CHECK_THROWS_AS((void)parse_loop(replaced("draws 1:s1 2:s1", "draws 1:s1 1:s2 2:s1")),
                    std::invalid_argument);
    // time slot must be 0 or d
    CHECK_THROWS_AS(
        (void)parse_loop(replaced("path (i,j,0) (i+u,j,0) (i,j,0)",
                                  "path (i,j,0) (i+u,j,1) (i,j,0)")),
        std::invalid_argument);
    // unknown keyword
    CHECK_THROWS_AS((void)parse_loop(std::string(kTinyLoop) + "bogus line\n"),
                    std::invalid_argument);
    // Vd must follow V
    CHECK_THROWS_AS(
        (void)parse_loop(replaced("V  = [a1*I, 0; 0, a1*ref]\nVd = [a1*ref, 0; 0, a1*I]\nstep 2",
                                  "Vd = [a1*ref, 0; 0, a1*I]\nstep 2")),
        std::invalid_argument);
    // a step without any conjugation is rejected
    CHECK_THROWS_AS(
        (void)parse_loop(replaced("step 2 x - s1\nV  = [a1*I, 0; 0, a1*ref]\n"
                                  "Vd = [a1*ref, 0; 0, a1*I]\n",
                                  "step 2 x - s1\n")),
        std::invalid_argument);
    // unknown coefficient name in a recipe
    CHECK_THROWS_AS((void)parse_loop(replaced("V  = [a1*I, 0; 0, a1*ref]", "V  = [q9*I, 0; 0, a1*ref]")),
                    std::invalid_argument);
    // unknown block token in a recipe
    CHECK_THROWS_AS((void)parse_loop(replaced("V  = [a1*I, 0; 0, a1*ref]", "V  = [a1*B99, 0; 0, a1*ref]")),
                    std::invalid_argument);
    // duplicate unconditioned conjugation for one step
    CHECK_THROWS_AS(
        (void)parse_loop(std::string(kTinyLoop) +
                         "V  = [a1*I, 0; 0, a1*ref]\nVd = [a1*ref, 0; 0, a1*I]\n"),
        std::invalid_argument);
    // verbatim map index out of range
    CHECK_THROWS_AS((void)parse_loop(std::string(kTinyLoop) + "vmap 2 x x:+9\n"),
                    std::invalid_argument);
    // overlapping verbatim maps on one side
    CHECK_THROWS_AS(
        (void)parse_loop(std::string(kTinyLoop) + "vmap 2 x x:+1\nvmap 2 x x:+2\n"),
        std::invalid_argument);
    // vmap side must name x or xbar
    CHECK_THROWS_AS((void)parse_loop(std::string(kTinyLoop) + "vmap 2 y x:+1\n"),
                    std::invalid_argument);
    // vmap step number must match the step it follows
    CHECK_THROWS_AS((void)parse_loop(std::string(kTinyLoop) + "vmap 1 x x:+1\n"),
                    std::invalid_argument);
    // an axis-conditioned clause leaves the other recorded axis uncovered
    {
        std::string text = replaced("axes e3e4\n", "axes e3e4 e1e4\n");
        const std::size_t pos = text.find("step 2 x - s1\n");
        REQUIRE(pos != std::string::npos);
        text.insert(pos + std::string("step 2 x - s1\n").size(), "when e3e4\n");
        CHECK_THROWS_AS((void)parse_loop(text), std::invalid_argument);
    }
    // an unconditioned clause covers every recorded axis
    CHECK_NOTHROW((void)parse_loop(replaced("axes e3e4\n", "axes e3e4 e1e4\n")));
    // V given twice inside one clause
    CHECK_THROWS_AS(
        (void)parse_loop(replaced("Vd = [a1*ref, 0; 0, a1*I]\nstep 2",
                                  "V = [a1*ref, 0; 0, a1*I]\nstep 2")),
        std::invalid_argument);
    // a trailing V without its Vd is incomplete
    CHECK_THROWS_AS((void)parse_loop(std::string(kTinyLoop) + "V  = [a1*I, 0; 0, a1*ref]\n"),
                    std::invalid_argument);
    // when lines need axes and a preceding step
    CHECK_THROWS_AS((void)parse_loop(std::string(kTinyLoop) + "when\n"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_loop(replaced("step 1 x + s1", "when e3e4\nstep 1 x + s1")),
                    std::invalid_argument);
    // required lines cannot be dropped
    CHECK_THROWS_AS((void)parse_loop(replaced("loop T1\n", "")), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_loop(replaced("space 2+1\n", "")), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_loop(replaced("axes e3e4\n", "")), std::invalid_argument);

    // error messages carry the loop name and a line number
    try {
        (void)parse_loop(replaced("step 1 x + s1", "step 1 w + s1"));
        FAIL("expected an exception");
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        CHECK(what.find("T1 line 7") == 0);
    }
}

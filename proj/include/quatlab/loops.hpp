#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "quatlab/conformal.hpp"
#include "quatlab/linalg.hpp"

namespace quatlab {

/// Dimensionality of a loop's ambient space.
enum class Space { three_plus_one, two_plus_one };

/// Coordinate channels of the coefficient map. x, y, z ride the spatial
/// bivectors (2,3), (1,3), (1,2); t rides the loop's selected time bivector;
/// t34 is a fixed (3,4) slot used by one recorded map whose time reversal
/// names e3e4 literally. t34 folds onto t when the selected axis is e3e4.
enum class Channel { x, y, z, t, t34 };

inline constexpr std::size_t kChannelCount = 5;

std::string to_string(Channel ch);

/// One vertex of a loop path, as integer offsets from the starting point:
/// space[d] counts spatial lattice units (du), time counts time units (dt).
struct PathPoint {
    std::array<int, 3> space{};
    int time = 0;
};

/// One signed term of a 4x4 block expression: sign * coefficient * token.
/// Coefficient indices follow the draw order a1,a2,b1,b2,c1,c2,d1,d2.
/// Tokens name the identity, the reflection matrix, a fixed bivector or its
/// bar, or the axis-resolved time bivector (Bt / bart).
struct BlockTerm {
    double sign = 1.0;
    int coef = 0;
    int token = 0;
};

/// A 4x4 block as a sum of terms; empty means the zero block.
struct BlockExpr {
    std::vector<BlockTerm> terms;
};

/// A 2x2 arrangement of 4x4 block expressions (row-major).
struct VRecipe {
    std::array<BlockExpr, 4> blocks;
};

/// One conjugation alternative for a step: empty axes matches any selected
/// time axis, otherwise the clause applies only to the listed axes.
struct VClause {
    std::vector<TimeAxis> axes;
    VRecipe v;
    VRecipe vd;
};

/// A complete replacement coefficient map for one side at one step, used by
/// verbatim mode: each channel is a list of signed draw indices m, where
/// index 1 contributes j + s(1) and every other index contributes
/// j0 + s(draw(m)). Channels absent from the map are zero.
struct VerbatimMap {
    std::vector<TimeAxis> axes;  ///< empty = any axis
    std::array<std::vector<int>, kChannelCount> terms;
};

/// One step of a loop schedule. In symmetrized mode the step adds
/// sign * ((index==1 ? j : j0) + s(sym_draw)) to its channel on both sides;
/// reverse steps carry the same s index as their forward partner, so the
/// accumulation cancels exactly at j = j0.
struct StepSpec {
    int index = 0;
    Channel channel = Channel::x;
    int sign = 1;
    int sym_draw = 1;  ///< s index 1..4
    std::vector<VClause> v_clauses;
    std::vector<VerbatimMap> vmap_x;
    std::vector<VerbatimMap> vmap_xbar;
};

/// A parsed loop data file.
struct LoopProgram {
    std::string name;
    Space space = Space::three_plus_one;
    int spatial_dims = 3;
    std::vector<TimeAxis> axes;  ///< allowed axes; front() is the default
    std::vector<std::string> directions;
    std::vector<PathPoint> path;
    std::array<int, 9> draw_s{};  ///< recorded s index per draw index 1..8
    std::vector<StepSpec> steps;

    bool allows_axis(TimeAxis a) const;
};

/// Parses one loop data file. Throws std::invalid_argument with the loop
/// name and line number on malformed input, and validates: path closure,
/// one-slot-per-leg moves, per-axis uniqueness of V clauses and verbatim
/// maps, draw coverage, and channel/space consistency.
LoopProgram parse_loop(const std::string& text);

/// All loops embedded at build time, keyed by name.
const std::map<std::string, LoopProgram>& loop_table();

/// Names in the embedded order (lexicographic).
std::vector<std::string> loop_names();

/// Lookup that throws std::invalid_argument listing the valid names.
const LoopProgram& loop(const std::string& name);

/// The twelve uniform draws of one set: s1..s4 scaled into (0, du), then
/// a1,a2,b1,b2,c1,c2,d1,d2 raw in (0, 1).
struct RandomDraws {
    std::array<double, 4> s{};
    std::array<double, 8> coef{};

    double a1() const { return coef[0]; }
    double a2() const { return coef[1]; }
    double b1() const { return coef[2]; }
    double b2() const { return coef[3]; }
    double c1() const { return coef[4]; }
    double c2() const { return coef[5]; }
    double d1() const { return coef[6]; }
    double d2() const { return coef[7]; }
};

/// Deterministic draws for (seed, set_index); streams are keyed by the set
/// index alone so every loop and every j point sees the same numbers.
RandomDraws draws_for(std::uint64_t seed, int set_index, double du);

/// Per-run parameters of a single loop evaluation.
struct LoopRunConfig {
    TimeAxis axis = TimeAxis::e2e4;
    double j = 0.0;
    double j0 = 0.0;
    double du = 0.25;
    double dt = 0.25;
    std::uint64_t seed = 42;
    int set_index = 0;
    bool verbatim = false;
};

/// The full state after one step: both coefficient maps, the materialized
/// blocks x and xbar, the 8x8 embedding, the step's conjugation pair, the
/// raw difference v*phi*vd - phi, and the coordinate difference with the
/// base-point artifact v*phi0*vd - phi0 removed (phi0 = [[0,0],[I4,0]]).
struct StepResult {
    int step = 0;
    std::array<double, kChannelCount> cx{};
    std::array<double, kChannelCount> cxbar{};
    ComplexMatrix x;
    ComplexMatrix xbar;
    ComplexMatrix phi;
    ComplexMatrix v;
    ComplexMatrix vd;
    ComplexMatrix delta_matrix;
    ComplexMatrix delta_coord;
};

struct LoopRun {
    std::string loop;
    LoopRunConfig config;
    RandomDraws draws;
    std::vector<StepResult> steps;
};

/// Runs one loop for one draw set. Throws std::invalid_argument if the axis
/// is not allowed for the loop.
LoopRun run_loop(const LoopProgram& prog, const LoopRunConfig& cfg);

/// Evaluates a path point numerically: spatial offsets scaled by du, time
/// offset by dt, relative to origin (0,...,0).
std::vector<double> path_coords(const LoopProgram& prog, const PathPoint& p, double du, double dt);

}  // namespace quatlab

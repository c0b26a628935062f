#include "quatlab/loops.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "quatlab/clifford.hpp"
#include "quatlab/loops_data.hpp"
#include "quatlab/rng.hpp"

namespace quatlab {

namespace {

enum BlockToken {
    tok_identity,
    tok_ref,
    tok_b12,
    tok_b13,
    tok_b23,
    tok_b34,
    tok_bar12,
    tok_bar13,
    tok_bar23,
    tok_bar34,
    tok_bt,
    tok_bart,
};

int block_token_from_string(const std::string& s) {
    if (s == "I") return tok_identity;
    if (s == "ref") return tok_ref;
    if (s == "B12") return tok_b12;
    if (s == "B13") return tok_b13;
    if (s == "B23") return tok_b23;
    if (s == "B34") return tok_b34;
    if (s == "bar12") return tok_bar12;
    if (s == "bar13") return tok_bar13;
    if (s == "bar23") return tok_bar23;
    if (s == "bar34") return tok_bar34;
    if (s == "Bt") return tok_bt;
    if (s == "bart") return tok_bart;
    throw std::invalid_argument("unknown block token '" + s + "'");
}

const ComplexMatrix& block_token_matrix(int code, TimeAxis axis) {
    static const ComplexMatrix id4 = ComplexMatrix::identity(4);
    switch (code) {
        case tok_identity: return id4;
        case tok_ref: return catalog().ref;
        case tok_b12: return biv(1, 2);
        case tok_b13: return biv(1, 3);
        case tok_b23: return biv(2, 3);
        case tok_b34: return biv(3, 4);
        case tok_bar12: return biv_bar(1, 2);
        case tok_bar13: return biv_bar(1, 3);
        case tok_bar23: return biv_bar(2, 3);
        case tok_bar34: return biv_bar(3, 4);
        case tok_bt: return time_biv(axis);
        case tok_bart: return time_biv_bar(axis);
        default: throw std::invalid_argument("bad block token code");
    }
}

int coef_index_from_string(const std::string& s) {
    static const std::array<std::string, 8> names = {"a1", "a2", "b1", "b2",
                                                     "c1", "c2", "d1", "d2"};
    for (std::size_t i = 0; i < names.size(); ++i)
        if (s == names[i]) return static_cast<int>(i);
    throw std::invalid_argument("unknown coefficient '" + s + "'");
}

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

Channel channel_from_string(const std::string& s) {
    if (s == "x") return Channel::x;
    if (s == "y") return Channel::y;
    if (s == "z") return Channel::z;
    if (s == "t") return Channel::t;
    if (s == "t34") return Channel::t34;
    throw std::invalid_argument("unknown channel '" + s + "'");
}

int parse_int(const std::string& s) {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
    return v;
}

/// Parses one 4x4 block as a signed sum of coef*token terms; "0" is the
/// zero block.
BlockExpr parse_block_expr(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    BlockExpr expr;
    if (s == "0") return expr;
    if (s.empty()) throw std::invalid_argument("empty block expression");
    std::size_t pos = 0;
    while (pos < s.size()) {
        double sign = 1.0;
        if (s[pos] == '+') {
            ++pos;
        } else if (s[pos] == '-') {
            sign = -1.0;
            ++pos;
        }
        const std::size_t star = s.find('*', pos);
        if (star == std::string::npos)
            throw std::invalid_argument("block term without '*' in '" + raw + "'");
        const int coef = coef_index_from_string(s.substr(pos, star - pos));
        std::size_t end = star + 1;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        const int token = block_token_from_string(s.substr(star + 1, end - star - 1));
        expr.terms.push_back({sign, coef, token});
        pos = end;
    }
    return expr;
}

/// Parses "[e, e; e, e]" into four block expressions, row-major.
VRecipe parse_recipe(const std::string& raw) {
    const std::size_t lb = raw.find('[');
    const std::size_t rb = raw.rfind(']');
    if (lb == std::string::npos || rb == std::string::npos || rb <= lb)
        throw std::invalid_argument("recipe must be bracketed: '" + raw + "'");
    const std::string body = raw.substr(lb + 1, rb - lb - 1);
    const std::size_t semi = body.find(';');
    if (semi == std::string::npos)
        throw std::invalid_argument("recipe needs two rows: '" + raw + "'");
    const std::string rows[2] = {body.substr(0, semi), body.substr(semi + 1)};
    VRecipe recipe;
    for (int r = 0; r < 2; ++r) {
        const std::size_t comma = rows[r].find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("recipe row needs two entries: '" + raw + "'");
        recipe.blocks[2 * r] = parse_block_expr(rows[r].substr(0, comma));
        recipe.blocks[2 * r + 1] = parse_block_expr(rows[r].substr(comma + 1));
    }
    return recipe;
}

/// Parses "ch:+i-k..." into a channel slot of a verbatim map.
void parse_vmap_entry(const std::string& tok, VerbatimMap& map, Space space) {
    const std::size_t colon = tok.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("vmap entry needs ':' in '" + tok + "'");
    const Channel ch = channel_from_string(tok.substr(0, colon));
    if (space == Space::two_plus_one && (ch == Channel::z || ch == Channel::t34))
        throw std::invalid_argument("channel '" + to_string(ch) + "' not available in 2+1");
    auto& slot = map.terms[static_cast<std::size_t>(ch)];
    if (!slot.empty())
        throw std::invalid_argument("duplicate vmap channel in '" + tok + "'");
    std::size_t pos = colon + 1;
    while (pos < tok.size()) {
        int sign = 1;
        if (tok[pos] == '+') {
            ++pos;
        } else if (tok[pos] == '-') {
            sign = -1;
            ++pos;
        } else {
            throw std::invalid_argument("vmap indices need signs in '" + tok + "'");
        }
        std::size_t end = pos;
        while (end < tok.size() && std::isdigit(static_cast<unsigned char>(tok[end]))) ++end;
        if (end == pos) throw std::invalid_argument("vmap index missing in '" + tok + "'");
        slot.push_back(sign * parse_int(tok.substr(pos, end - pos)));
        pos = end;
    }
    if (slot.empty()) throw std::invalid_argument("vmap entry lists no indices: '" + tok + "'");
}

struct PendingClause {
    bool open = false;
    bool has_v = false;
    std::vector<TimeAxis> axes;
    VRecipe v;
    VRecipe vd;
};

/// Parses one path component. Spatial slots are a letter with an optional
/// +u or +Nu offset; the time slot is 0 or d.
int parse_path_component(const std::string& tok, int slot, int dims) {
    if (slot == dims) {
        if (tok == "0") return 0;
        if (tok == "d") return 1;
        throw std::invalid_argument("time slot must be 0 or d, got '" + tok + "'");
    }
    const char expect = "ijk"[slot];
    if (tok.empty() || tok[0] != expect)
        throw std::invalid_argument(std::string("spatial slot must start with '") + expect +
                                    "', got '" + tok + "'");
    if (tok.size() == 1) return 0;
    if (tok[1] != '+' || tok.back() != 'u')
        throw std::invalid_argument("spatial offset must be +u or +Nu, got '" + tok + "'");
    const std::string count = tok.substr(2, tok.size() - 3);
    if (count.empty()) return 1;
    return parse_int(count);
}

PathPoint parse_path_point(const std::string& tok, int dims) {
    if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')')
        throw std::invalid_argument("path point must be parenthesized: '" + tok + "'");
    std::vector<std::string> parts;
    std::string cur;
    for (char c : tok.substr(1, tok.size() - 2)) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    if (static_cast<int>(parts.size()) != dims + 1)
        throw std::invalid_argument("path point needs " + std::to_string(dims + 1) +
                                    " slots: '" + tok + "'");
    PathPoint p;
    for (int slot = 0; slot < dims; ++slot) p.space[slot] = parse_path_component(parts[slot], slot, dims);
    p.time = parse_path_component(parts[dims], dims, dims);
    return p;
}

void validate_path(const LoopProgram& prog) {
    if (prog.path.size() != prog.steps.size() + 1)
        throw std::invalid_argument("path must have one point per step plus the start");
    const PathPoint& first = prog.path.front();
    if (first.space != std::array<int, 3>{} || first.time != 0)
        throw std::invalid_argument("path must start at the origin");
    const PathPoint& last = prog.path.back();
    if (last.space != first.space || last.time != first.time)
        throw std::invalid_argument("path endpoint must equal its start");
    for (std::size_t leg = 1; leg < prog.path.size(); ++leg) {
        const PathPoint& a = prog.path[leg - 1];
        const PathPoint& b = prog.path[leg];
        int moved = std::abs(b.time - a.time);
        for (int d = 0; d < prog.spatial_dims; ++d) moved += std::abs(b.space[d] - a.space[d]);
        if (moved != 1)
            throw std::invalid_argument("path leg " + std::to_string(leg) +
                                        " must move one slot by one unit");
    }
}

void validate_clauses(const LoopProgram& prog) {
    for (const StepSpec& st : prog.steps) {
        if (st.v_clauses.empty())
            throw std::invalid_argument("step " + std::to_string(st.index) +
                                        " has no conjugation");
        for (TimeAxis axis : prog.axes) {
            int hits = 0;
            for (const VClause& cl : st.v_clauses)
                if (cl.axes.empty() ||
                    std::find(cl.axes.begin(), cl.axes.end(), axis) != cl.axes.end())
                    ++hits;
            if (hits != 1)
                throw std::invalid_argument("step " + std::to_string(st.index) + " has " +
                                            std::to_string(hits) + " conjugations for axis " +
                                            to_string(axis));
        }
        for (const auto* maps : {&st.vmap_x, &st.vmap_xbar}) {
            for (TimeAxis axis : prog.axes) {
                int hits = 0;
                for (const VerbatimMap& m : *maps)
                    if (m.axes.empty() ||
                        std::find(m.axes.begin(), m.axes.end(), axis) != m.axes.end())
                        ++hits;
                if (hits > 1)
                    throw std::invalid_argument("step " + std::to_string(st.index) +
                                                " has overlapping verbatim maps for axis " +
                                                to_string(axis));
            }
            for (const VerbatimMap& m : *maps)
                for (const auto& slot : m.terms)
                    for (int idx : slot) {
                        const int k = std::abs(idx);
                        if (k < 1 || k > static_cast<int>(prog.steps.size()))
                            throw std::invalid_argument("verbatim map index " +
                                                        std::to_string(k) + " out of range");
                    }
        }
    }
}

/// Signed-entry accumulator with matched-pair elimination: a reverse step
/// erases the most recent entry equal to its value, so at j = j0 the map
/// returns to zero exactly, including doubly walked channels.
void apply_step(std::vector<double>& entries, int sign, double value) {
    if (sign > 0) {
        entries.push_back(value);
        return;
    }
    const auto it = std::find(entries.rbegin(), entries.rend(), value);
    if (it != entries.rend()) {
        entries.erase(std::next(it).base());
    } else {
        entries.push_back(-value);
    }
}

double channel_sum(const std::vector<double>& entries) {
    double sum = 0.0;
    for (double v : entries) sum += v;
    return sum;
}

const VerbatimMap* matching_vmap(const std::vector<VerbatimMap>& maps, TimeAxis axis) {
    for (const VerbatimMap& m : maps)
        if (m.axes.empty() || std::find(m.axes.begin(), m.axes.end(), axis) != m.axes.end())
            return &m;
    return nullptr;
}

std::array<double, kChannelCount> map_from_vmap(const VerbatimMap& map, const LoopProgram& prog,
                                                const LoopRunConfig& cfg,
                                                const RandomDraws& draws) {
    std::array<double, kChannelCount> out{};
    for (std::size_t ch = 0; ch < kChannelCount; ++ch) {
        double sum = 0.0;
        for (int idx : map.terms[ch]) {
            const int k = std::abs(idx);
            const double base = (k == 1) ? cfg.j : cfg.j0;
            const double value = base + draws.s[prog.draw_s[k] - 1];
            sum += (idx > 0) ? value : -value;
        }
        out[ch] = sum;
    }
    return out;
}

ComplexMatrix materialize(const std::array<double, kChannelCount>& c, TimeAxis axis,
                          bool barred) {
    const auto& b23 = barred ? biv_bar(2, 3) : biv(2, 3);
    const auto& b13 = barred ? biv_bar(1, 3) : biv(1, 3);
    const auto& b12 = barred ? biv_bar(1, 2) : biv(1, 2);
    const auto& bt = barred ? time_biv_bar(axis) : time_biv(axis);
    const auto& b34 = barred ? biv_bar(3, 4) : biv(3, 4);
    ComplexMatrix m = c[0] * b23;
    m += c[1] * b13;
    m += c[2] * b12;
    m += c[3] * bt;
    m += c[4] * b34;
    return m;
}

ComplexMatrix evaluate_recipe_block(const BlockExpr& expr, const RandomDraws& draws,
                                    TimeAxis axis) {
    ComplexMatrix m = ComplexMatrix::zero(4, 4);
    for (const BlockTerm& term : expr.terms)
        m += (term.sign * draws.coef[term.coef]) * block_token_matrix(term.token, axis);
    return m;
}

ComplexMatrix evaluate_recipe(const VRecipe& recipe, const RandomDraws& draws, TimeAxis axis) {
    ComplexMatrix m(8, 8);
    m.set_block(0, 0, evaluate_recipe_block(recipe.blocks[0], draws, axis));
    m.set_block(0, 4, evaluate_recipe_block(recipe.blocks[1], draws, axis));
    m.set_block(4, 0, evaluate_recipe_block(recipe.blocks[2], draws, axis));
    m.set_block(4, 4, evaluate_recipe_block(recipe.blocks[3], draws, axis));
    return m;
}

const VClause& matching_clause(const StepSpec& st, TimeAxis axis) {
    for (const VClause& cl : st.v_clauses)
        if (cl.axes.empty() || std::find(cl.axes.begin(), cl.axes.end(), axis) != cl.axes.end())
            return cl;
    throw std::invalid_argument("step " + std::to_string(st.index) +
                                " has no conjugation for axis " + to_string(axis));
}

const ComplexMatrix& base_phi() {
    static const ComplexMatrix phi0 = [] {
        ComplexMatrix m(8, 8);
        m.set_block(4, 0, ComplexMatrix::identity(4));
        return m;
    }();
    return phi0;
}

std::map<std::string, LoopProgram> parse_embedded() {
    std::map<std::string, LoopProgram> table;
    for (const auto& src : detail::kLoopSources) {
        LoopProgram prog = parse_loop(std::string(src.text));
        if (prog.name != src.name)
            throw std::invalid_argument("loop file '" + std::string(src.name) +
                                        "' declares name '" + prog.name + "'");
        table.emplace(prog.name, std::move(prog));
    }
    return table;
}

}  // namespace

std::string to_string(Channel ch) {
    switch (ch) {
        case Channel::x: return "x";
        case Channel::y: return "y";
        case Channel::z: return "z";
        case Channel::t: return "t";
        case Channel::t34: return "t34";
    }
    throw std::invalid_argument("bad channel");
}

bool LoopProgram::allows_axis(TimeAxis a) const {
    return std::find(axes.begin(), axes.end(), a) != axes.end();
}

LoopProgram parse_loop(const std::string& text) {
    LoopProgram prog;
    PendingClause pending;
    bool saw_space = false;
    bool saw_draws = false;
    int line_no = 0;
    std::istringstream stream(text);
    std::string line;
    const auto fail = [&](const std::string& msg) -> std::invalid_argument {
        const std::string who = prog.name.empty() ? "loop" : prog.name;
        return std::invalid_argument(who + " line " + std::to_string(line_no) + ": " + msg);
    };
    try {
        while (std::getline(stream, line)) {
            ++line_no;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const std::vector<std::string> tokens = split_tokens(line);
            if (tokens.empty()) continue;
            const std::string& key = tokens[0];
            if (key == "loop") {
                if (tokens.size() != 2) throw fail("loop line needs a name");
                prog.name = tokens[1];
            } else if (key == "space") {
                if (tokens.size() != 2) throw fail("space line needs one value");
                if (tokens[1] == "3+1") {
                    prog.space = Space::three_plus_one;
                    prog.spatial_dims = 3;
                } else if (tokens[1] == "2+1") {
                    prog.space = Space::two_plus_one;
                    prog.spatial_dims = 2;
                } else {
                    throw fail("space must be 3+1 or 2+1");
                }
                saw_space = true;
            } else if (key == "axes") {
                if (tokens.size() < 2) throw fail("axes line needs at least one axis");
                for (std::size_t i = 1; i < tokens.size(); ++i)
                    prog.axes.push_back(time_axis_from_string(tokens[i]));
            } else if (key == "directions") {
                prog.directions.assign(tokens.begin() + 1, tokens.end());
            } else if (key == "path") {
                if (!saw_space) throw fail("path must follow the space line");
                for (std::size_t i = 1; i < tokens.size(); ++i)
                    prog.path.push_back(parse_path_point(tokens[i], prog.spatial_dims));
            } else if (key == "draws") {
                for (std::size_t i = 1; i < tokens.size(); ++i) {
                    const std::size_t colon = tokens[i].find(':');
                    if (colon == std::string::npos) throw fail("draw entries are k:sN");
                    const int step = parse_int(tokens[i].substr(0, colon));
                    const std::string s = tokens[i].substr(colon + 1);
                    if (s.size() != 2 || s[0] != 's') throw fail("draw entries are k:sN");
                    const int draw = s[1] - '0';
                    if (step < 1 || step > 8 || draw < 1 || draw > 4)
                        throw fail("draw entry out of range: '" + tokens[i] + "'");
                    if (prog.draw_s[step] != 0) throw fail("duplicate draw for step " +
                                                           std::to_string(step));
                    prog.draw_s[step] = draw;
                }
                saw_draws = true;
            } else if (key == "step") {
                if (pending.open) throw fail("previous conjugation is incomplete");
                if (tokens.size() != 5) throw fail("step lines are: step n ch sign sN");
                StepSpec st;
                st.index = parse_int(tokens[1]);
                if (st.index != static_cast<int>(prog.steps.size()) + 1)
                    throw fail("steps must be sequential");
                st.channel = channel_from_string(tokens[2]);
                if (st.channel == Channel::t34) throw fail("t34 is not a step channel");
                if (prog.space == Space::two_plus_one && st.channel == Channel::z)
                    throw fail("channel z is not available in 2+1");
                if (tokens[3] == "+") {
                    st.sign = 1;
                } else if (tokens[3] == "-") {
                    st.sign = -1;
                } else {
                    throw fail("step sign must be + or -");
                }
                if (tokens[4].size() != 2 || tokens[4][0] != 's') throw fail("step draw is sN");
                st.sym_draw = tokens[4][1] - '0';
                if (st.sym_draw < 1 || st.sym_draw > 4) throw fail("step draw out of range");
                prog.steps.push_back(std::move(st));
            } else if (key == "when") {
                if (prog.steps.empty()) throw fail("when must follow a step");
                if (pending.open) throw fail("previous conjugation is incomplete");
                pending.open = true;
                pending.has_v = false;
                pending.axes.clear();
                for (std::size_t i = 1; i < tokens.size(); ++i)
                    pending.axes.push_back(time_axis_from_string(tokens[i]));
                if (pending.axes.empty()) throw fail("when line needs at least one axis");
            } else if (key == "V" || key == "Vd") {
                if (prog.steps.empty()) throw fail("conjugation must follow a step");
                const std::size_t eq = line.find('=');
                if (eq == std::string::npos) throw fail("conjugation lines need '='");
                const std::string rhs = line.substr(eq + 1);
                if (key == "V") {
                    if (pending.open && pending.has_v) throw fail("V given twice");
                    if (!pending.open) {
                        pending.open = true;
                        pending.axes.clear();
                    }
                    pending.v = parse_recipe(rhs);
                    pending.has_v = true;
                } else {
                    if (!pending.open || !pending.has_v) throw fail("Vd before V");
                    pending.vd = parse_recipe(rhs);
                    prog.steps.back().v_clauses.push_back(
                        {pending.axes, std::move(pending.v), std::move(pending.vd)});
                    pending = PendingClause{};
                }
            } else if (key == "vmap") {
                if (pending.open) throw fail("previous conjugation is incomplete");
                if (prog.steps.empty()) throw fail("vmap must follow a step");
                if (tokens.size() < 4) throw fail("vmap lines are: vmap n side entries");
                if (parse_int(tokens[1]) != prog.steps.back().index)
                    throw fail("vmap step must match the current step");
                VerbatimMap map;
                std::size_t i = 3;
                if (i < tokens.size() && tokens[i] == "when") {
                    ++i;
                    while (i < tokens.size() && tokens[i].find(':') == std::string::npos)
                        map.axes.push_back(time_axis_from_string(tokens[i++]));
                    if (map.axes.empty()) throw fail("vmap when needs at least one axis");
                }
                if (i == tokens.size()) throw fail("vmap lists no entries");
                for (; i < tokens.size(); ++i) parse_vmap_entry(tokens[i], map, prog.space);
                if (tokens[2] == "x") {
                    prog.steps.back().vmap_x.push_back(std::move(map));
                } else if (tokens[2] == "xbar") {
                    prog.steps.back().vmap_xbar.push_back(std::move(map));
                } else {
                    throw fail("vmap side must be x or xbar");
                }
            } else {
                throw fail("unknown keyword '" + key + "'");
            }
        }
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        if (what.rfind(prog.name.empty() ? "loop line" : prog.name + " line", 0) == 0) throw;
        throw fail(what);
    }
    const auto fail_file = [&](const std::string& msg) -> std::invalid_argument {
        const std::string who = prog.name.empty() ? "loop" : prog.name;
        return std::invalid_argument(who + ": " + msg);
    };
    if (prog.name.empty()) throw fail_file("missing loop line");
    if (!saw_space) throw fail_file("missing space line");
    if (prog.axes.empty()) throw fail_file("missing axes line");
    if (prog.steps.empty()) throw fail_file("no steps");
    if (pending.open) throw fail_file("trailing incomplete conjugation");
    if (prog.directions.size() != prog.steps.size())
        throw fail_file("directions count must equal the step count");
    if (!saw_draws) throw fail_file("missing draws line");
    for (std::size_t k = 1; k <= prog.steps.size(); ++k)
        if (prog.draw_s[k] == 0) throw fail_file("missing draw for step " + std::to_string(k));
    try {
        validate_path(prog);
        validate_clauses(prog);
    } catch (const std::invalid_argument& e) {
        throw fail_file(e.what());
    }
    return prog;
}

const std::map<std::string, LoopProgram>& loop_table() {
    static const std::map<std::string, LoopProgram> table = parse_embedded();
    return table;
}

std::vector<std::string> loop_names() {
    std::vector<std::string> names;
    for (const auto& [name, prog] : loop_table()) names.push_back(name);
    return names;
}

const LoopProgram& loop(const std::string& name) {
    const auto& table = loop_table();
    const auto it = table.find(name);
    if (it != table.end()) return it->second;
    std::string valid;
    for (const auto& [n, prog] : table) {
        if (!valid.empty()) valid += ", ";
        valid += n;
    }
    throw std::invalid_argument("unknown loop '" + name + "' (valid: " + valid + ")");
}

RandomDraws draws_for(std::uint64_t seed, int set_index, double du) {
    if (set_index < 0) throw std::invalid_argument("set index must be nonnegative");
    if (du <= 0.0) throw std::invalid_argument("du must be positive");
    SplitMix64 rng = make_stream(seed, static_cast<std::uint64_t>(set_index));
    RandomDraws d;
    for (double& v : d.s) v = du * rng.uniform();
    for (double& v : d.coef) v = rng.uniform();
    return d;
}

LoopRun run_loop(const LoopProgram& prog, const LoopRunConfig& cfg) {
    if (!prog.allows_axis(cfg.axis))
        throw std::invalid_argument("loop " + prog.name + " does not run on axis " +
                                    to_string(cfg.axis));
    LoopRun run;
    run.loop = prog.name;
    run.config = cfg;
    run.draws = draws_for(cfg.seed, cfg.set_index, cfg.du);
    std::array<std::vector<double>, kChannelCount> acc_x;
    std::array<std::vector<double>, kChannelCount> acc_xbar;
    run.steps.reserve(prog.steps.size());
    for (const StepSpec& st : prog.steps) {
        const double value = ((st.index == 1) ? cfg.j : cfg.j0) + run.draws.s[st.sym_draw - 1];
        const std::size_t ch = static_cast<std::size_t>(st.channel);
        apply_step(acc_x[ch], st.sign, value);
        apply_step(acc_xbar[ch], st.sign, value);
        StepResult res;
        res.step = st.index;
        for (std::size_t c = 0; c < kChannelCount; ++c) {
            res.cx[c] = channel_sum(acc_x[c]);
            res.cxbar[c] = channel_sum(acc_xbar[c]);
        }
        if (cfg.verbatim) {
            if (const VerbatimMap* m = matching_vmap(st.vmap_x, cfg.axis))
                res.cx = map_from_vmap(*m, prog, cfg, run.draws);
            if (const VerbatimMap* m = matching_vmap(st.vmap_xbar, cfg.axis))
                res.cxbar = map_from_vmap(*m, prog, cfg, run.draws);
        }
        res.x = materialize(res.cx, cfg.axis, false);
        res.xbar = materialize(res.cxbar, cfg.axis, true);
        res.phi = assemble_phi(res.x, res.xbar);
        const VClause& clause = matching_clause(st, cfg.axis);
        res.v = evaluate_recipe(clause.v, run.draws, cfg.axis);
        res.vd = evaluate_recipe(clause.vd, run.draws, cfg.axis);
        res.delta_matrix = vconj(res.phi, res.v, res.vd);
        res.delta_coord = res.delta_matrix - vconj(base_phi(), res.v, res.vd);
        run.steps.push_back(std::move(res));
    }
    return run;
}

std::vector<double> path_coords(const LoopProgram& prog, const PathPoint& p, double du,
                                double dt) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(prog.spatial_dims) + 1);
    for (int d = 0; d < prog.spatial_dims; ++d) out.push_back(du * p.space[d]);
    out.push_back(dt * p.time);
    return out;
}

}  // namespace quatlab

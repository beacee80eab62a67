#include "rcplan/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace rcplan {
namespace {

// Unsigned axis exchange induced by a turn of `f`; identity for half turns.
int sigma_axis(Move m, int axis) {
    if (m.turn == Turn::HALF) return axis;
    auto [a, b] = swapped_axes(m.face);
    if (axis == a) return b;
    if (axis == b) return a;
    return axis;
}

int index_of(std::span<const int> axes, int axis) {
    for (size_t i = 0; i < axes.size(); ++i)
        if (axes[i] == axis) return static_cast<int>(i);
    throw std::logic_error("axis not on this cubelet");
}

PddlEffect make_effect(Move m, bool is_corner, int src, int dst) {
    PddlEffect e;
    e.is_corner = is_corner;
    e.src = src;
    e.dst = dst;
    int arity = is_corner ? 3 : 2;
    for (int k = 0; k < arity; ++k) {
        int dst_axis;
        std::array<int, 3> src_axes3{};
        int n;
        if (is_corner) {
            dst_axis = corner_param_axes(dst)[k];
            auto a = corner_param_axes(src);
            std::copy(a.begin(), a.end(), src_axes3.begin());
            n = 3;
        } else {
            dst_axis = edge_param_axes(dst)[k];
            auto a = edge_param_axes(src);
            std::copy(a.begin(), a.end(), src_axes3.begin());
            n = 2;
        }
        // the color arriving on dst_axis came from sigma^{-1}(dst_axis);
        // sigma is an involution
        e.param_map[k] = index_of(std::span<const int>(src_axes3.data(), n),
                                  sigma_axis(m, dst_axis));
    }
    return e;
}

// Order a set of cycle effects for readable output: start at an anchor, then
// repeatedly append the effect whose destination is the previous effect's
// source.
std::vector<PddlEffect> chain_order(std::vector<PddlEffect> effects, bool anchor_by_src) {
    std::vector<PddlEffect> out;
    while (!out.empty() || !effects.empty()) {
        if (effects.empty()) break;
        // pick anchor: lowest src (corners) or lowest dst (edges)
        auto anchor = std::min_element(effects.begin(), effects.end(),
                                       [&](const PddlEffect& a, const PddlEffect& b) {
                                           return anchor_by_src ? a.src < b.src : a.dst < b.dst;
                                       });
        PddlEffect cur = *anchor;
        effects.erase(anchor);
        out.push_back(cur);
        for (;;) {
            auto next = std::find_if(effects.begin(), effects.end(),
                                     [&](const PddlEffect& e) { return e.dst == out.back().src; });
            if (next == effects.end()) break;
            out.push_back(*next);
            effects.erase(next);
        }
    }
    return out;
}

const char* kVarNames[3] = {"?x", "?y", "?z"};

std::string effect_clause(const PddlEffect& e) {
    int arity = e.is_corner ? 3 : 2;
    const std::string& src_name = e.is_corner ? corner_predicate(e.src) : edge_predicate(e.src);
    const std::string& dst_name = e.is_corner ? corner_predicate(e.dst) : edge_predicate(e.dst);
    std::string vars, cond, target;
    for (int k = 0; k < arity; ++k) {
        vars += std::string(" ") + kVarNames[k];
        cond += std::string(" ") + kVarNames[k];
        target += std::string(" ") + kVarNames[e.param_map[k]];
    }
    return "(forall (" + vars.substr(1) + ") (when (" + src_name + cond + ") (and (" +
           dst_name + target + "))))";
}

std::string atom_text(const std::string& pred, std::span<const Color> colors) {
    std::string s = "(" + pred;
    for (Color c : colors) s += std::string(" ") + color_word(c);
    return s + ")";
}

// ---------------------------------------------------------------------------
// S-expression parsing (only what this domain's problem grammar needs).

struct Sexp {
    bool is_list = false;
    std::string atom;
    std::vector<Sexp> items;
};

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> toks;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            toks.push_back(cur);
            cur.clear();
        }
    };
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == ';') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (c == '(' || c == ')') {
            flush();
            toks.push_back(std::string(1, c));
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    flush();
    return toks;
}

Sexp parse_sexp(const std::vector<std::string>& toks, size_t& pos) {
    if (pos >= toks.size()) throw PddlParseError("unexpected end of input");
    if (toks[pos] == "(") {
        Sexp s;
        s.is_list = true;
        ++pos;
        while (pos < toks.size() && toks[pos] != ")") s.items.push_back(parse_sexp(toks, pos));
        if (pos >= toks.size()) throw PddlParseError("missing ')'");
        ++pos;
        return s;
    }
    if (toks[pos] == ")") throw PddlParseError("unexpected ')'");
    Sexp s;
    s.atom = toks[pos++];
    return s;
}

struct ParsedAtoms {
    std::map<int, std::array<Color, 3>> corners;
    std::map<int, std::array<Color, 2>> edges;
};

ParsedAtoms read_atoms(const std::vector<Sexp>& atoms, const char* where) {
    ParsedAtoms out;
    for (const Sexp& a : atoms) {
        if (!a.is_list || a.items.empty() || a.items[0].is_list)
            throw PddlParseError(std::string("malformed atom in ") + where);
        const std::string& pred = a.items[0].atom;
        std::vector<Color> colors;
        for (size_t i = 1; i < a.items.size(); ++i) {
            auto c = color_from_word(a.items[i].atom);
            if (!c)
                throw PddlParseError("unknown color constant '" + a.items[i].atom + "' in " + where);
            colors.push_back(*c);
        }
        int cs = corner_slot_from_predicate(pred);
        int es = edge_slot_from_predicate(pred);
        if (cs >= 0) {
            if (colors.size() != 3)
                throw PddlParseError("corner predicate " + pred + " needs 3 arguments");
            if (!out.corners.emplace(cs, std::array<Color, 3>{colors[0], colors[1], colors[2]}).second)
                throw InconsistentInit("duplicate atom for " + pred + " in " + where);
        } else if (es >= 0) {
            if (colors.size() != 2)
                throw PddlParseError("edge predicate " + pred + " needs 2 arguments");
            if (!out.edges.emplace(es, std::array<Color, 2>{colors[0], colors[1]}).second)
                throw InconsistentInit("duplicate atom for " + pred + " in " + where);
        } else {
            throw PddlParseError("unknown predicate '" + pred + "' in " + where);
        }
    }
    return out;
}

CubeState decode_symbolic(const ParsedAtoms& atoms) {
    if (atoms.corners.size() != kNumCorners || atoms.edges.size() != kNumEdges)
        throw InconsistentInit("init must contain exactly one atom per cubelet predicate (" +
                               std::to_string(atoms.corners.size() + atoms.edges.size()) +
                               " of 20 present)");
    std::array<std::array<Color, 3>, kNumCorners> corners;
    std::array<std::array<Color, 2>, kNumEdges> edges;
    for (auto& [slot, colors] : atoms.corners) corners[slot] = colors;
    for (auto& [slot, colors] : atoms.edges) edges[slot] = colors;
    try {
        return state_from_cubelet_colors(corners, edges);
    } catch (const InvalidArray& e) {
        throw InconsistentInit(e.what());
    }
}

}  // namespace

PddlDomainModel build_domain_model(PddlVariant variant) {
    PddlDomainModel model;
    model.variant = variant;
    ActionSet as = variant == PddlVariant::M1 ? ActionSet::quarter12() : ActionSet::full18();
    for (Move m : as.moves()) {
        PddlAction act;
        act.name = move_name(m);
        act.move = m;
        const MoveTable& t = move_table(m);
        std::vector<PddlEffect> corners, edges;
        for (int j = 0; j < kNumCorners; ++j)
            if (t.cp[j] != j) corners.push_back(make_effect(m, true, t.cp[j], j));
        for (int j = 0; j < kNumEdges; ++j)
            if (t.ep[j] != j) edges.push_back(make_effect(m, false, t.ep[j], j));
        act.corner_effects = chain_order(std::move(corners), /*anchor_by_src=*/true);
        act.edge_effects = chain_order(std::move(edges), /*anchor_by_src=*/false);
        model.actions.push_back(std::move(act));
    }
    return model;
}

std::string domain_name(PddlVariant variant) {
    return variant == PddlVariant::M1 ? "rubiks-cube-m1" : "rubiks-cube-m2";
}

std::string emit_domain(PddlVariant variant) {
    PddlDomainModel model = build_domain_model(variant);
    std::ostringstream out;
    out << ";; Rubik's Cube domain, "
        << (variant == PddlVariant::M1 ? "12-action model (quarter turns only)"
                                       : "18-action model (quarter and half turns)")
        << "\n";
    out << "(define (domain " << domain_name(variant) << ")\n";
    out << "(:requirements :adl)\n";
    out << "(:predicates\n";
    for (int i = 0; i < kNumCorners; ++i)
        out << "  (" << corner_predicate(i) << " ?x ?y ?z)\n";
    for (int i = 0; i < kNumEdges; ++i)
        out << "  (" << edge_predicate(i) << " ?x ?y)\n";
    out << ")\n";
    for (const PddlAction& act : model.actions) {
        out << "\n(:action " << act.name << "\n";
        out << ":effect (and\n";
        out << ";for corner cubelets\n";
        for (const PddlEffect& e : act.corner_effects) out << effect_clause(e) << "\n";
        out << ";for edge cubelets\n";
        for (const PddlEffect& e : act.edge_effects) out << effect_clause(e) << "\n";
        out << "))\n";
    }
    out << ")\n";
    return out.str();
}

std::string emit_problem(const CubeState& state, const std::string& name, PddlVariant variant) {
    if (!check_solvability(state))
        throw UnsolvableState("cannot emit a problem for an unreachable state");
    SymbolicState init = symbolic_encode(state);
    SymbolicState goal = symbolic_encode(CubeState::solved());
    std::ostringstream out;
    out << "(define (problem " << name << ")\n";
    out << "(:domain " << domain_name(variant) << ")\n";
    out << "(:objects white red green yellow orange blue)\n";
    out << "(:init\n";
    for (int i = 0; i < kNumCorners; ++i)
        out << "  " << atom_text(corner_predicate(i), init.corners[i]) << "\n";
    for (int i = 0; i < kNumEdges; ++i)
        out << "  " << atom_text(edge_predicate(i), init.edges[i]) << "\n";
    out << ")\n";
    out << "(:goal (and\n";
    for (int i = 0; i < kNumCorners; ++i)
        out << "  " << atom_text(corner_predicate(i), goal.corners[i]) << "\n";
    for (int i = 0; i < kNumEdges; ++i)
        out << "  " << atom_text(edge_predicate(i), goal.edges[i]) << "\n";
    out << "))\n";
    out << ")\n";
    return out.str();
}

CubeState parse_problem(const std::string& text) {
    auto toks = tokenize(text);
    size_t pos = 0;
    Sexp top = parse_sexp(toks, pos);
    if (!top.is_list || top.items.empty() || top.items[0].atom != "define")
        throw PddlParseError("expected (define (problem ...) ...)");

    const std::vector<Sexp>* init_atoms = nullptr;
    const Sexp* goal_expr = nullptr;
    for (const Sexp& s : top.items) {
        if (!s.is_list || s.items.empty()) continue;
        if (s.items[0].atom == ":init") init_atoms = &s.items;
        if (s.items[0].atom == ":goal") goal_expr = &s;
    }
    if (!init_atoms) throw PddlParseError("problem has no :init block");
    if (!goal_expr || goal_expr->items.size() != 2)
        throw PddlParseError("problem has no :goal block");

    ParsedAtoms init =
        read_atoms({init_atoms->begin() + 1, init_atoms->end()}, ":init");

    // goal: (and atoms...) or a single atom
    std::vector<Sexp> goal_list;
    const Sexp& g = goal_expr->items[1];
    if (g.is_list && !g.items.empty() && !g.items[0].is_list && g.items[0].atom == "and")
        goal_list.assign(g.items.begin() + 1, g.items.end());
    else
        goal_list.push_back(g);
    ParsedAtoms goal = read_atoms(goal_list, ":goal");

    SymbolicState solved = symbolic_encode(CubeState::solved());
    if (goal.corners.size() != kNumCorners || goal.edges.size() != kNumEdges)
        throw UnsupportedGoal("goal must specify all 20 cubelets");
    for (auto& [slot, colors] : goal.corners)
        if (colors != solved.corners[slot])
            throw UnsupportedGoal("only the solved-configuration goal is supported");
    for (auto& [slot, colors] : goal.edges)
        if (colors != solved.edges[slot])
            throw UnsupportedGoal("only the solved-configuration goal is supported");

    // Each predicate argument is the color along a known axis of a known
    // slot, which pins every sticker of the cube.
    return decode_symbolic(init);
}

SymbolicState symbolic_encode(const CubeState& s) {
    SymbolicState sym;
    for (int i = 0; i < kNumCorners; ++i) sym.corners[i] = corner_param_colors(s, i);
    for (int i = 0; i < kNumEdges; ++i) sym.edges[i] = edge_param_colors(s, i);
    return sym;
}

SymbolicState symbolic_apply(const PddlAction& action, const SymbolicState& s) {
    SymbolicState next = s;
    for (const PddlEffect& e : action.corner_effects) {
        for (int k = 0; k < 3; ++k) next.corners[e.dst][k] = s.corners[e.src][e.param_map[k]];
    }
    for (const PddlEffect& e : action.edge_effects) {
        for (int k = 0; k < 2; ++k) next.edges[e.dst][k] = s.edges[e.src][e.param_map[k]];
    }
    return next;
}

std::vector<Move> parse_plan(const std::string& text) {
    std::vector<Move> plan;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        if (line[b] == ';') continue;
        size_t e = line.find_last_not_of(" \t\r");
        std::string body = line.substr(b, e - b + 1);
        if (body.front() != '(' || body.back() != ')')
            throw PddlParseError("line " + std::to_string(lineno) +
                                 ": expected a parenthesized action");
        std::string name = body.substr(1, body.size() - 2);
        // trim inner whitespace
        size_t nb = name.find_first_not_of(" \t");
        size_t ne = name.find_last_not_of(" \t");
        if (nb == std::string::npos)
            throw PddlParseError("line " + std::to_string(lineno) + ": empty action");
        name = name.substr(nb, ne - nb + 1);
        auto m = move_from_name(name);
        if (!m)
            throw UnknownAction("line " + std::to_string(lineno) + ": unknown action '" + name +
                                "'");
        plan.push_back(*m);
    }
    return plan;
}

}  // namespace rcplan

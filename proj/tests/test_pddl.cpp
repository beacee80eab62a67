#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <regex>

#include "rcplan/pddl.hpp"
#include "test_util.hpp"

using namespace rcplan;
using test::Rng;

namespace {

int count_occurrences(const std::string& hay, const std::string& needle) {
    int n = 0;
    for (size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
    return n;
}

std::string squash_ws(const std::string& s) {
    std::string out;
    bool in_ws = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_ws = true;
        } else {
            if (in_ws && !out.empty()) out += ' ';
            in_ws = false;
            out += c;
        }
    }
    return out;
}

const PddlAction& find_action(const PddlDomainModel& m, const std::string& name) {
    for (const auto& a : m.actions)
        if (a.name == name) return a;
    throw std::runtime_error("no action " + name);
}

}  // namespace

TEST_CASE("domain action counts") {
    CHECK(count_occurrences(emit_domain(PddlVariant::M1), "(:action ") == 12);
    CHECK(count_occurrences(emit_domain(PddlVariant::M2), "(:action ") == 18);
    CHECK(build_domain_model(PddlVariant::M1).actions.size() == 12);
    CHECK(build_domain_model(PddlVariant::M2).actions.size() == 18);
}

TEST_CASE("emitted L action reproduces the reference corner and edge cycles") {
    std::string dom = squash_ws(emit_domain(PddlVariant::M1));
    // the four corner clauses
    CHECK(dom.find("(when (cube1 ?x ?y ?z) (and (cube2 ?y ?x ?z)))") != std::string::npos);
    CHECK(dom.find("(when (cube3 ?x ?y ?z) (and (cube1 ?y ?x ?z)))") != std::string::npos);
    CHECK(dom.find("(when (cube4 ?x ?y ?z) (and (cube3 ?y ?x ?z)))") != std::string::npos);
    CHECK(dom.find("(when (cube2 ?x ?y ?z) (and (cube4 ?y ?x ?z)))") != std::string::npos);
    // the four edge clauses (identity parameter maps)
    CHECK(dom.find("(when (edge13 ?x ?y) (and (edge12 ?x ?y)))") != std::string::npos);
    CHECK(dom.find("(when (edge34 ?x ?y) (and (edge13 ?x ?y)))") != std::string::npos);
    CHECK(dom.find("(when (edge24 ?x ?y) (and (edge34 ?x ?y)))") != std::string::npos);
    CHECK(dom.find("(when (edge12 ?x ?y) (and (edge24 ?x ?y)))") != std::string::npos);
}

TEST_CASE("every action has empty preconditions and only conditional effects") {
    for (PddlVariant v : {PddlVariant::M1, PddlVariant::M2}) {
        auto model = build_domain_model(v);
        for (const auto& act : model.actions) {
            CHECK(act.corner_effects.size() == (act.move.turn == Turn::HALF ? 4 : 4));
            CHECK(act.edge_effects.size() == 4);
            for (const auto& e : act.corner_effects) CHECK(e.src != e.dst);
            for (const auto& e : act.edge_effects) CHECK(e.src != e.dst);
        }
        std::string dom = emit_domain(v);
        CHECK(count_occurrences(dom, ":precondition") == 0);
        CHECK(count_occurrences(dom, "(when ") ==
              static_cast<int>(model.actions.size()) * 8);
    }
}

TEST_CASE("symbolic transition system is isomorphic to the move engine") {
    auto model = build_domain_model(PddlVariant::M2);
    Rng rng(2024);
    for (int i = 0; i < 200; ++i) {
        CubeState s = test::random_state(rng, 1 + static_cast<int>(rng.below(25)));
        SymbolicState sym = symbolic_encode(s);
        for (const auto& act : model.actions) {
            CHECK(symbolic_apply(act, sym) == symbolic_encode(apply_move(s, act.move)));
        }
    }
}

TEST_CASE("symbolic effects read before writing") {
    // A face cycle would corrupt under sequential in-place application; four
    // applications of L must return to the start.
    auto model = build_domain_model(PddlVariant::M1);
    const auto& l = find_action(model, "L");
    SymbolicState s = symbolic_encode(CubeState::solved());
    SymbolicState cur = s;
    for (int i = 0; i < 4; ++i) cur = symbolic_apply(l, cur);
    CHECK(cur == s);
    CHECK(symbolic_apply(l, s) != s);
    // single application moves cube1's colors to cube2 with the first two
    // parameters swapped
    SymbolicState once = symbolic_apply(l, s);
    CHECK(once.corners[1][0] == s.corners[0][1]);
    CHECK(once.corners[1][1] == s.corners[0][0]);
    CHECK(once.corners[1][2] == s.corners[0][2]);
}

TEST_CASE("problem emission") {
    std::string prob = emit_problem(CubeState::solved(), "solved", PddlVariant::M1);
    CHECK(prob.find("(:domain rubiks-cube-m1)") != std::string::npos);
    CHECK(count_occurrences(prob, "(cube") == 16);  // 8 in init + 8 in goal
    CHECK(count_occurrences(prob, "(edge") == 24);
    // solved: init and goal coincide up to block placement
    CubeState back = parse_problem(prob);
    CHECK(back == CubeState::solved());

    // one L turn: exactly the 8 left-face atoms differ from the goal
    CubeState s = apply_move(CubeState::solved(), {Face::L, Turn::CW90});
    SymbolicState sym = symbolic_encode(s);
    SymbolicState goal = symbolic_encode(CubeState::solved());
    int diff = 0;
    for (int i = 0; i < kNumCorners; ++i) diff += sym.corners[i] != goal.corners[i];
    for (int i = 0; i < kNumEdges; ++i) diff += sym.edges[i] != goal.edges[i];
    CHECK(diff == 8);

    CubeState bad = CubeState::solved();
    bad.corner_ori[0] = 1;
    CHECK_THROWS_AS(emit_problem(bad, "x"), UnsolvableState);
}

TEST_CASE("problem round trip on random states") {
    Rng rng(55);
    for (int i = 0; i < 500; ++i) {
        CubeState s = test::random_state(rng, 1 + static_cast<int>(rng.below(25)));
        CHECK(parse_problem(emit_problem(s, "rt", PddlVariant::M2)) == s);
    }
}

TEST_CASE("emit -> parse -> emit is byte-identical") {
    Rng rng(77);
    for (int i = 0; i < 20; ++i) {
        CubeState s = test::random_state(rng, 12);
        std::string p1 = emit_problem(s, "idem", PddlVariant::M2);
        std::string p2 = emit_problem(parse_problem(p1), "idem", PddlVariant::M2);
        CHECK(p1 == p2);
    }
}

TEST_CASE("problem parse errors") {
    CubeState s = apply_move(CubeState::solved(), {Face::F, Turn::CW90});
    std::string prob = emit_problem(s, "p", PddlVariant::M2);

    SUBCASE("missing init atom") {
        // drop the cube1 line from :init (first occurrence)
        size_t pos = prob.find("  (cube1 ");
        size_t end = prob.find('\n', pos);
        std::string broken = prob.substr(0, pos) + prob.substr(end + 1);
        CHECK_THROWS_AS(parse_problem(broken), InconsistentInit);
    }
    SUBCASE("non-solved goal") {
        // emit a problem whose goal block is the scrambled state: swap blocks
        std::string init_atom = "(cube1 red yellow blue)";
        size_t goal_pos = prob.find("(:goal");
        std::string broken = prob.substr(0, goal_pos) +
                             "(:goal (and (cube1 blue yellow red)))\n)\n";
        CHECK_THROWS_AS(parse_problem(broken), UnsupportedGoal);
    }
    SUBCASE("unknown predicate") {
        std::string broken = prob;
        size_t pos = broken.find("(cube1");
        broken.replace(pos, 6, "(cube9");
        CHECK_THROWS_AS(parse_problem(broken), PddlParseError);
    }
    SUBCASE("inconsistent colors") {
        // two slots claiming the same cubie
        size_t pos = prob.find("  (cube1 ");
        size_t end = prob.find('\n', pos);
        std::string line = prob.substr(pos, end - pos);
        size_t pos2 = prob.find("  (cube2 ");
        size_t end2 = prob.find('\n', pos2);
        std::string broken = prob.substr(0, pos2) +
                             "  (cube2" + line.substr(line.find(' ', 4)) +
                             prob.substr(end2);
        CHECK_THROWS_AS(parse_problem(broken), InconsistentInit);
    }
    SUBCASE("not a problem file") {
        CHECK_THROWS_AS(parse_problem("(define (domain foo))"), PddlParseError);
        CHECK_THROWS_AS(parse_problem("((("), PddlParseError);
    }
}

TEST_CASE("plan parsing") {
    auto plan = parse_plan("(l)\n(urev)\n; cost = 2 (unit cost)\n");
    REQUIRE(plan.size() == 2);
    CHECK(plan[0] == Move{Face::L, Turn::CW90});
    CHECK(plan[1] == Move{Face::U, Turn::CCW90});

    CHECK(parse_plan("").empty());
    CHECK(parse_plan("; only comments\n").empty());
    CHECK(parse_plan("(F2)\n(Lrev)").size() == 2);
    CHECK(parse_plan("  ( b2 )  ").size() == 1);

    CHECK_THROWS_AS(parse_plan("(m)"), UnknownAction);
    CHECK_THROWS_AS(parse_plan("l urev"), PddlParseError);
}

#pragma once

// PDDL codec for the cube domain: emits the m1 (12-action) and m2
// (18-action) domain files, emits/parses problem files, parses planner plan
// files, and provides a symbolic transition system over the 20 cubelet
// predicates for cross-validating the emitted actions against the move
// engine.
//
// Every non-L action is generated from the move engine's tables; the L
// action's corner cycle reproduces the documented reference encoding.

#include <string>
#include <vector>

#include "rcplan/cube.hpp"

namespace rcplan {

enum class PddlVariant { M1, M2 };

// One conditional-effect clause: the colors of `src` move to `dst`;
// dst parameter j takes src parameter param_map[j].
struct PddlEffect {
    bool is_corner = false;
    int src = 0;
    int dst = 0;
    std::array<int, 3> param_map{};  // only the first 2 entries used for edges
};

struct PddlAction {
    std::string name;  // move notation
    Move move{};
    std::vector<PddlEffect> corner_effects;
    std::vector<PddlEffect> edge_effects;
};

struct PddlDomainModel {
    PddlVariant variant;
    std::vector<PddlAction> actions;
};

// Color tuple per cubelet predicate: 8 corner triples + 12 edge pairs.
struct SymbolicState {
    std::array<std::array<Color, 3>, kNumCorners> corners;
    std::array<std::array<Color, 2>, kNumEdges> edges;

    friend bool operator==(const SymbolicState& a, const SymbolicState& b) {
        return a.corners == b.corners && a.edges == b.edges;
    }
    friend bool operator!=(const SymbolicState& a, const SymbolicState& b) { return !(a == b); }
};

struct PddlParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownAction : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InconsistentInit : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedGoal : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsolvableState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

PddlDomainModel build_domain_model(PddlVariant variant);

std::string domain_name(PddlVariant variant);
std::string emit_domain(PddlVariant variant);
// Requires check_solvability(state); throws UnsolvableState otherwise.
std::string emit_problem(const CubeState& state, const std::string& name,
                         PddlVariant variant = PddlVariant::M2);

CubeState parse_problem(const std::string& text);

// One "(<action>)" per line, case-insensitive, ';' comments ignored.
std::vector<Move> parse_plan(const std::string& text);

SymbolicState symbolic_encode(const CubeState& s);
// All condition reads happen before any write.
SymbolicState symbolic_apply(const PddlAction& action, const SymbolicState& s);

}  // namespace rcplan

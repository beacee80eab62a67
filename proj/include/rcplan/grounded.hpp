#pragma once

// Propositional grounding of the cube domain plus delete-relaxation
// machinery (relaxed planning graph, relaxed-plan extraction) backing the FF
// and goal-count heuristics.
//
// Atom universe: every cubelet predicate instantiated over all color tuples,
// 8*6^3 + 12*6^2 = 2160 atoms. A cube state is exactly 20 true atoms, one
// per cubelet slot.

#include <span>
#include <string>
#include <vector>

#include "rcplan/pddl.hpp"

namespace rcplan {

constexpr int kNumAtoms = 8 * 216 + 12 * 36;  // 2160
constexpr int kEdgeAtomBase = 8 * 216;        // 1728

int corner_atom(int slot, Color c1, Color c2, Color c3);
int edge_atom(int slot, Color c1, Color c2);
// Slot (0..19, corners first) whose occupancy the atom describes.
int atom_slot(int atom);
// "(cube1 red green blue)" — for traces and error messages.
std::string atom_name(int atom);

// One ground conditional effect: if `cond` holds, `add` holds afterwards
// (and `cond`'s slot atom is superseded under real, non-relaxed semantics).
struct GroundEffect {
    int cond;
    int add;
};

struct GroundAction {
    std::string name;  // move notation
    Move move{};
    std::vector<GroundEffect> effects;
};

struct GroundedTask {
    PddlVariant variant;
    std::vector<GroundAction> actions;
    std::array<int, 20> goal_atoms;  // encode(solved), slot order
};

GroundedTask ground(PddlVariant variant);

// The 20 true atoms of a state, slot order (corners then edges).
std::array<int, 20> encode_atoms(const CubeState& s);

// Real (non-relaxed) simultaneous application of one action's ground
// effects: every firing effect replaces its destination slot's atom.
std::array<int, 20> apply_ground_action(const GroundedTask& task, int action_index,
                                        const std::array<int, 20>& atoms);

// Layer-parallel relaxed reachability. Fact layer i is {a : first_layer[a] <= i};
// supporters record, for each atom first appearing after layer 0, the
// achiever chosen by the documented tie-break (lowest action index, then
// lowest condition atom).
struct RelaxedPlanningGraph {
    int num_layers = 0;      // final layer index
    bool goal_reached = false;
    std::vector<int> first_layer;           // per atom; -1 = unreached
    std::vector<int> supporter_action;      // per atom; -1 for start atoms
    std::vector<int> supporter_cond;        // per atom; -1 for start atoms

    bool in_layer(int atom, int layer) const {
        return first_layer[atom] >= 0 && first_layer[atom] <= layer;
    }
};

RelaxedPlanningGraph build_rpg(const GroundedTask& task, std::span<const int> start_atoms);

// Relaxed-plan length: distinct (action, layer) pairs extracted by
// backchaining every unsatisfied goal atom through its supporter. 0 iff
// solved.
int h_ff(const GroundedTask& task, const CubeState& s);

}  // namespace rcplan

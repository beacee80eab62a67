#include "rcplan/grounded.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rcplan {

int corner_atom(int slot, Color c1, Color c2, Color c3) {
    return slot * 216 + static_cast<int>(c1) * 36 + static_cast<int>(c2) * 6 +
           static_cast<int>(c3);
}

int edge_atom(int slot, Color c1, Color c2) {
    return kEdgeAtomBase + slot * 36 + static_cast<int>(c1) * 6 + static_cast<int>(c2);
}

int atom_slot(int atom) {
    if (atom < kEdgeAtomBase) return atom / 216;
    return kNumCorners + (atom - kEdgeAtomBase) / 36;
}

std::string atom_name(int atom) {
    if (atom < kEdgeAtomBase) {
        int slot = atom / 216, rest = atom % 216;
        return "(" + corner_predicate(slot) + " " + color_word(static_cast<Color>(rest / 36)) +
               " " + color_word(static_cast<Color>(rest / 6 % 6)) + " " +
               color_word(static_cast<Color>(rest % 6)) + ")";
    }
    int slot = (atom - kEdgeAtomBase) / 36, rest = (atom - kEdgeAtomBase) % 36;
    return "(" + edge_predicate(slot) + " " + color_word(static_cast<Color>(rest / 6)) + " " +
           color_word(static_cast<Color>(rest % 6)) + ")";
}

GroundedTask ground(PddlVariant variant) {
    GroundedTask task;
    task.variant = variant;
    PddlDomainModel model = build_domain_model(variant);
    for (const auto& schema : model.actions) {
        GroundAction ga;
        ga.name = schema.name;
        ga.move = schema.move;
        ga.effects.reserve(schema.corner_effects.size() * 216 +
                           schema.edge_effects.size() * 36);
        for (const auto& e : schema.corner_effects) {
            for (int t0 = 0; t0 < 6; ++t0)
                for (int t1 = 0; t1 < 6; ++t1)
                    for (int t2 = 0; t2 < 6; ++t2) {
                        int t[3] = {t0, t1, t2};
                        ga.effects.push_back(
                            {corner_atom(e.src, static_cast<Color>(t0), static_cast<Color>(t1),
                                         static_cast<Color>(t2)),
                             corner_atom(e.dst, static_cast<Color>(t[e.param_map[0]]),
                                         static_cast<Color>(t[e.param_map[1]]),
                                         static_cast<Color>(t[e.param_map[2]]))});
                    }
        }
        for (const auto& e : schema.edge_effects) {
            for (int t0 = 0; t0 < 6; ++t0)
                for (int t1 = 0; t1 < 6; ++t1) {
                    int t[2] = {t0, t1};
                    ga.effects.push_back(
                        {edge_atom(e.src, static_cast<Color>(t0), static_cast<Color>(t1)),
                         edge_atom(e.dst, static_cast<Color>(t[e.param_map[0]]),
                                   static_cast<Color>(t[e.param_map[1]]))});
                }
        }
        // each slot is the source of at most one effect, so conds are unique
        // within an action; sort for binary lookup during RPG construction
        std::sort(ga.effects.begin(), ga.effects.end(),
                  [](const GroundEffect& a, const GroundEffect& b) { return a.cond < b.cond; });
        task.actions.push_back(std::move(ga));
    }
    auto solved = encode_atoms(CubeState::solved());
    task.goal_atoms = solved;
    return task;
}

std::array<int, 20> encode_atoms(const CubeState& s) {
    std::array<int, 20> out;
    for (int slot = 0; slot < kNumCorners; ++slot) {
        auto c = corner_param_colors(s, slot);
        out[slot] = corner_atom(slot, c[0], c[1], c[2]);
    }
    for (int slot = 0; slot < kNumEdges; ++slot) {
        auto c = edge_param_colors(s, slot);
        out[kNumCorners + slot] = edge_atom(slot, c[0], c[1]);
    }
    return out;
}

std::array<int, 20> apply_ground_action(const GroundedTask& task, int action_index,
                                        const std::array<int, 20>& atoms) {
    const GroundAction& ga = task.actions.at(action_index);
    std::array<int, 20> out = atoms;
    for (const GroundEffect& e : ga.effects)
        if (atoms[atom_slot(e.cond)] == e.cond) out[atom_slot(e.add)] = e.add;
    return out;
}

RelaxedPlanningGraph build_rpg(const GroundedTask& task, std::span<const int> start_atoms) {
    RelaxedPlanningGraph g;
    g.first_layer.assign(kNumAtoms, -1);
    g.supporter_action.assign(kNumAtoms, -1);
    g.supporter_cond.assign(kNumAtoms, -1);

    std::vector<int> frontier;
    for (int a : start_atoms)
        if (g.first_layer[a] != 0) {
            g.first_layer[a] = 0;
            frontier.push_back(a);
        }

    auto goal_done = [&] {
        for (int a : task.goal_atoms)
            if (g.first_layer[a] < 0) return false;
        return true;
    };

    g.goal_reached = goal_done();
    int layer = 0;
    while (!g.goal_reached && !frontier.empty()) {
        std::vector<int> next;
        // lowest action index first, then lowest condition atom: iterate
        // actions outermost and conditions in ascending order.
        std::sort(frontier.begin(), frontier.end());
        for (int ai = 0; ai < static_cast<int>(task.actions.size()); ++ai) {
            const auto& effects = task.actions[ai].effects;
            for (int c : frontier) {
                auto it = std::lower_bound(
                    effects.begin(), effects.end(), c,
                    [](const GroundEffect& e, int cond) { return e.cond < cond; });
                for (; it != effects.end() && it->cond == c; ++it) {
                    if (g.first_layer[it->add] >= 0) continue;  // reached, or set this pass
                    g.first_layer[it->add] = layer + 1;
                    g.supporter_action[it->add] = ai;
                    g.supporter_cond[it->add] = c;
                    next.push_back(it->add);
                }
            }
        }
        frontier = std::move(next);
        ++layer;
        g.goal_reached = goal_done();
    }
    g.num_layers = layer;
    return g;
}

int h_ff(const GroundedTask& task, const CubeState& s) {
    std::array<int, 20> start = encode_atoms(s);
    if (start == task.goal_atoms) return 0;
    RelaxedPlanningGraph g = build_rpg(task, start);
    if (!g.goal_reached)
        throw std::logic_error("relaxed planning graph reached fixpoint before goal");

    std::set<std::pair<int, int>> plan;  // (action, layer)
    std::vector<char> needed(kNumAtoms, 0);
    std::vector<int> stack;
    for (int a : task.goal_atoms) stack.push_back(a);
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        if (g.first_layer[a] == 0 || needed[a]) continue;
        needed[a] = 1;
        plan.emplace(g.supporter_action[a], g.first_layer[a]);
        stack.push_back(g.supporter_cond[a]);
    }
    return static_cast<int>(plan.size());
}

}  // namespace rcplan

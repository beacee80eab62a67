#pragma once

// Shared helpers for test binaries: a tiny deterministic RNG and random
// reachable states built from legal moves only.

#include <cstdint>
#include <vector>

#include "rcplan/cube.hpp"

namespace rcplan::test {

struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return next() % n; }
};

inline std::vector<Move> random_scramble(Rng& rng, int len, ActionSet as) {
    const auto& moves = as.moves();
    std::vector<Move> plan;
    for (int i = 0; i < len; ++i) plan.push_back(moves[rng.below(moves.size())]);
    return plan;
}

inline CubeState random_state(Rng& rng, int depth, ActionSet as = ActionSet::full18()) {
    auto plan = random_scramble(rng, depth, as);
    return apply_plan(CubeState::solved(), plan);
}

}  // namespace rcplan::test

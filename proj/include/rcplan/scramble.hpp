#pragma once

// Deterministic, seeded problem-instance and dataset generation.
//
// The RNG is splitmix64 (documented, platform-independent); datasets are
// byte-identical across runs and machines for the same master seed.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rcplan/cube.hpp"

namespace rcplan {

struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, n) by rejection sampling
    uint64_t below(uint64_t n) {
        uint64_t threshold = -n % n;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }
};

struct ProblemInstance {
    std::string id;
    std::vector<Move> scramble;
    int depth_n = 0;
    ActionSet action_set;
    CubeState state = CubeState::solved();
    uint64_t seed = 0;
};

struct Dataset {
    std::string name;
    uint64_t master_seed = 0;
    ActionSet action_set;
    std::vector<ProblemInstance> instances;
};

struct InvalidDepth : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GenerationExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ActionSetMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int kMaxScrambleDepth = 20;

// Scramble of n moves from solved, no two consecutive moves on the same
// face. Deterministic in (n, action_set, seed). `allow_any_depth` lifts the
// 1..20 bound for ad-hoc use.
ProblemInstance generate_instance(int n, ActionSet action_set, uint64_t seed,
                                  bool allow_any_depth = false);

// 200 instances: depths 1..20, ten per depth, pairwise-distinct states.
Dataset generate_dataset(ActionSet action_set, uint64_t master_seed,
                         const std::string& name = "");

// Whitespace-separated move notation. Consecutive same-face pairs are
// accepted for imported data; a note per occurrence is appended to
// `warnings` when given.
ProblemInstance import_scramble(const std::string& text, ActionSet action_set,
                                std::vector<std::string>* warnings = nullptr);

std::string scramble_to_string(std::span<const Move> plan);

nlohmann::json instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const nlohmann::json& j);
nlohmann::json dataset_to_json(const Dataset& ds);
Dataset dataset_from_json(const nlohmann::json& j);

}  // namespace rcplan

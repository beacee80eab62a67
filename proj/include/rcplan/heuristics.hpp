#pragma once

// Heuristic suite: blind, goal count, relaxed-plan (FF), and max-combined
// pattern databases. PDB tables are exact optimal distances in the projected
// transition system (tracked cubies only), hence admissible and consistent.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rcplan/cube.hpp"
#include "rcplan/grounded.hpp"

namespace rcplan {

// Subset of tracked cubies. Corner ids 0..7, edge ids 0..11 (canonical
// numbering minus one).
struct Pattern {
    std::vector<int> corner_ids;
    std::vector<int> edge_ids;

    int size() const { return static_cast<int>(corner_ids.size() + edge_ids.size()); }
    // "c0134" / "e25" / "c07-e3" — stable spec string used for cache keys.
    std::string spec() const;

    friend bool operator==(const Pattern& a, const Pattern& b) {
        return a.corner_ids == b.corner_ids && a.edge_ids == b.edge_ids;
    }
};

struct MemoryCapExceeded : std::runtime_error {
    MemoryCapExceeded(const std::string& msg, uint64_t size)
        : std::runtime_error(msg), computed_size(size) {}
    uint64_t computed_size;
};

// Dense distance table over the pattern's abstract states; one byte each.
struct PatternDB {
    Pattern pattern;
    ActionSet action_set;
    std::vector<uint8_t> table;

    uint64_t size() const { return table.size(); }
    uint64_t abstract_index(const CubeState& s) const;
    int lookup(const CubeState& s) const { return table[abstract_index(s)]; }
    int max_entry() const;
};

// Number of abstract states: P(8,k)·3^k · P(12,m)·2^m.
uint64_t pattern_space_size(const Pattern& p);

// Breadth-first search over the projected space from the abstract solved
// state. Throws MemoryCapExceeded if the table would exceed max_entries.
PatternDB build_pdb(const Pattern& pattern, ActionSet action_set,
                    uint64_t max_entries = uint64_t{1} << 28);

// The 2+3 default partition: corners {1-4},{5-8}; edges {1-4},{5-8},{9-12}.
std::vector<Pattern> manual_patterns();
// All cubie subsets of size 1..max_size (1 <= max_size <= 3).
std::vector<Pattern> systematic_patterns(int max_size);

int h_blind(const CubeState& s);
int h_goal_count(const CubeState& s);
int h_pdb_max(const CubeState& s, const std::vector<PatternDB>& pdbs);

// ---------------------------------------------------------------------------
// Binary cache (versioned; keyed by pattern, action set, and the cubelet
// numbering version). Directory resolution: explicit argument, else
// $RCPLAN_CACHE_DIR, else ".rcplan-cache".

std::string pdb_cache_dir(const std::string& override_dir = "");
std::string pdb_cache_path(const Pattern& p, ActionSet as, const std::string& dir);
void save_pdb(const PatternDB& db, const std::string& path);
// nullopt if missing, unreadable, or header mismatch.
std::optional<PatternDB> load_pdb(const Pattern& p, ActionSet as, const std::string& path);
// Load from cache or build and persist (best-effort write).
PatternDB build_pdb_cached(const Pattern& p, ActionSet as, const std::string& dir = "");

// ---------------------------------------------------------------------------
// Uniform handle used by the search engine and benchmarks.

enum class HeuristicKind { BLIND, GOAL_COUNT, FF, PDB_MANUAL, PDB_SYSTEMATIC };

struct HeuristicConfig {
    HeuristicKind kind = HeuristicKind::BLIND;
    ActionSet action_set = ActionSet::full18();
    int systematic_max_size = 3;  // PDB_SYSTEMATIC only

    std::string label() const;
};

std::optional<HeuristicKind> heuristic_kind_from_string(const std::string& s);

// Owns whatever the configured heuristic needs (grounded task, PDB tables);
// immutable after construction and safe to share across threads.
class Heuristic {
  public:
    explicit Heuristic(const HeuristicConfig& config, const std::string& cache_dir = "");

    int operator()(const CubeState& s) const;
    const HeuristicConfig& config() const { return config_; }
    bool admissible() const;

  private:
    HeuristicConfig config_;
    std::shared_ptr<const GroundedTask> task_;       // FF
    std::shared_ptr<const std::vector<PatternDB>> pdbs_;  // PDB kinds
};

}  // namespace rcplan

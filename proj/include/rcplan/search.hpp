#pragma once

// A* and IDA* over the move engine with pluggable heuristics, deterministic
// tie-breaking, and resource accounting.
//
// Conventions (documented for statistics comparability): the goal test runs
// on pop, a solved input costs 0 expansions, and open-list ties break on
// lower f, then lower g, then generation order. Memory limits are realized
// as a stored-node cap (a portable proxy; roughly 80 bytes per stored node).

#include <functional>

#include <json.hpp>

#include "rcplan/cube.hpp"

namespace rcplan {

struct SearchLimits {
    double wall_time_s = 60.0;
    uint64_t max_stored_nodes = 10'000'000;
    uint64_t max_expansions = 0;  // 0 = unlimited

    // long-run benchmark regime: 30 minutes per instance
    static SearchLimits extended() { return {1800.0, 40'000'000, 0}; }
};

enum class SearchStatus { SOLVED, TIMEOUT, MEMOUT, EXHAUSTED };

const char* search_status_name(SearchStatus s);

struct PlanResult {
    SearchStatus status = SearchStatus::EXHAUSTED;
    std::vector<Move> plan;  // meaningful only when SOLVED
    uint64_t expansions = 0;
    uint64_t generated = 0;
    uint64_t peak_stored = 0;
    double wall_time_s = 0.0;
    int heuristic_initial = 0;
};

nlohmann::json plan_result_to_json(const PlanResult& r);

using HeuristicFn = std::function<int(const CubeState&)>;

// Optimal with an admissible, consistent heuristic. Duplicate detection via
// a closed map over packed states; successors in the fixed move order. No
// move-sequence pruning (mirrors the planners this is compared against).
PlanResult astar(const CubeState& start, const HeuristicFn& h, ActionSet action_set,
                 const SearchLimits& limits = {});

// Memory-light alternative: first solution is optimal when h is admissible.
// Prunes redundant move sequences (inverse of the last move; same face under
// FULL_18; triple repeats under QUARTER_12; opposite faces in one order).
PlanResult idastar(const CubeState& start, const HeuristicFn& h, ActionSet action_set,
                   const SearchLimits& limits = {});

}  // namespace rcplan

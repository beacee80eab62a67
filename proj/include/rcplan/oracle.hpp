#pragma once

// Ground truth and plan checking: brute-force BFS distances, an optimal
// oracle (iterative-deepening A* with the manual pattern databases —
// admissible, so its first solution is optimal), plan validation, the
// half-turn/quarter-turn metric conversion, and optimality classification.

#include <optional>

#include "rcplan/heuristics.hpp"
#include "rcplan/search.hpp"

namespace rcplan {

// Breadth gets unmanageable past these depths; bfs_optimal rejects deeper
// requests (use the IDA* oracle instead).
int bfs_depth_cap(ActionSet as);  // 7 quarter-turn, 6 full

// Exact distance if <= max_depth, nullopt otherwise. Forward BFS with
// duplicate detection. Throws std::invalid_argument past the cap.
std::optional<int> bfs_optimal(const CubeState& s, ActionSet as, int max_depth);

// Owns the admissible heuristic the optimal searches run with.
class OptimalOracle {
  public:
    explicit OptimalOracle(ActionSet as, const std::string& cache_dir = "");

    // Exact optimal length, or nullopt when the budget runs out.
    std::optional<int> optimal_length(const CubeState& s,
                                      const SearchLimits& budget = {}) const;
    // Full search result (the oracle's plan is itself optimal).
    PlanResult solve(const CubeState& s, const SearchLimits& budget = {}) const;

    ActionSet action_set() const { return action_set_; }

  private:
    ActionSet action_set_;
    Heuristic heuristic_;
};

// ---------------------------------------------------------------------------
// Plan validation

enum class PlanViolation { MOVE_NOT_IN_ACTION_SET, NOT_SOLVED_AT_END };

struct ValidationResult {
    bool valid = true;
    std::optional<PlanViolation> reason;
    int position = -1;  // offending move index for MOVE_NOT_IN_ACTION_SET
    std::string message;
};

ValidationResult validate_plan(const CubeState& s, std::span<const Move> plan, ActionSet as);

// ---------------------------------------------------------------------------
// Metric conversion

enum class MetricDirection { TO_FULL_18, TO_QUARTER_12 };

// TO_FULL_18: repeated left-to-right passes merging adjacent same-face moves
// (F,F -> F2; L,Lrev -> cancel) until a fixpoint. TO_QUARTER_12: each half
// turn becomes two clockwise quarter turns. Always effect-preserving.
std::vector<Move> metric_convert(std::span<const Move> plan, MetricDirection direction);

// ---------------------------------------------------------------------------
// Optimality classification

struct PlanRecord {
    std::string id;
    CubeState state;
    std::vector<Move> plan;
};

struct OptimalityReport {
    std::string id;
    int plan_length = 0;
    std::optional<int> optimal_length;  // nullopt = oracle budget exhausted
    std::optional<bool> is_optimal;
    ActionSet metric;
};

struct OptimalityAggregate {
    int total = 0;
    int classified = 0;  // reports with a known optimum
    int optimal = 0;
    int unknown = 0;
    // both denominators reported; nullopt when the denominator is zero
    std::optional<double> percent_of_classified;
    std::optional<double> percent_of_total;
};

nlohmann::json optimality_report_to_json(const OptimalityReport& r);

std::pair<std::vector<OptimalityReport>, OptimalityAggregate> classify_optimality(
    std::span<const PlanRecord> records, const OptimalOracle& oracle,
    const SearchLimits& budget = {});

}  // namespace rcplan

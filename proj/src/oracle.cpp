#include "rcplan/oracle.hpp"

#include <unordered_set>

namespace rcplan {

int bfs_depth_cap(ActionSet as) {
    return as == ActionSet::quarter12() ? 7 : 6;
}

std::optional<int> bfs_optimal(const CubeState& s, ActionSet as, int max_depth) {
    if (max_depth < 0 || max_depth > bfs_depth_cap(as))
        throw std::invalid_argument("bfs_optimal depth " + std::to_string(max_depth) +
                                    " beyond cap " + std::to_string(bfs_depth_cap(as)));
    if (s.is_solved()) return 0;
    std::unordered_set<PackedState, PackedStateHash> seen{pack_state(s)};
    std::vector<CubeState> frontier{s};
    const auto& moves = as.moves();
    for (int d = 1; d <= max_depth; ++d) {
        std::vector<CubeState> next;
        for (const CubeState& cur : frontier)
            for (Move m : moves) {
                CubeState t = apply_move(cur, m);
                if (t.is_solved()) return d;
                if (seen.insert(pack_state(t)).second) next.push_back(t);
            }
        frontier = std::move(next);
    }
    return std::nullopt;
}

OptimalOracle::OptimalOracle(ActionSet as, const std::string& cache_dir)
    : action_set_(as), heuristic_({HeuristicKind::PDB_MANUAL, as}, cache_dir) {}

PlanResult OptimalOracle::solve(const CubeState& s, const SearchLimits& budget) const {
    return idastar(s, std::cref(heuristic_), action_set_, budget);
}

std::optional<int> OptimalOracle::optimal_length(const CubeState& s,
                                                 const SearchLimits& budget) const {
    PlanResult r = solve(s, budget);
    if (r.status != SearchStatus::SOLVED) return std::nullopt;
    return static_cast<int>(r.plan.size());
}

ValidationResult validate_plan(const CubeState& s, std::span<const Move> plan, ActionSet as) {
    ValidationResult res;
    for (size_t i = 0; i < plan.size(); ++i) {
        if (!as.contains(plan[i])) {
            res.valid = false;
            res.reason = PlanViolation::MOVE_NOT_IN_ACTION_SET;
            res.position = static_cast<int>(i);
            res.message = "move " + std::to_string(i) + " (" + move_name(plan[i]) +
                          ") not in action set " + as.name();
            return res;
        }
    }
    if (!apply_plan(s, plan).is_solved()) {
        res.valid = false;
        res.reason = PlanViolation::NOT_SOLVED_AT_END;
        res.message = "cube not solved after applying the plan";
        return res;
    }
    res.message = "valid";
    return res;
}

namespace {

// quarter-turn count mod 4 (clockwise)
int quarters(Turn t) {
    switch (t) {
        case Turn::CW90: return 1;
        case Turn::CCW90: return 3;
        case Turn::HALF: return 2;
    }
    return 0;
}

std::optional<Turn> turn_from_quarters(int q) {
    switch (q & 3) {
        case 0: return std::nullopt;
        case 1: return Turn::CW90;
        case 2: return Turn::HALF;
        default: return Turn::CCW90;
    }
}

// one left-to-right merge pass; true if anything changed
bool merge_pass(std::vector<Move>& plan) {
    std::vector<Move> out;
    bool changed = false;
    size_t i = 0;
    while (i < plan.size()) {
        if (i + 1 < plan.size() && plan[i].face == plan[i + 1].face) {
            auto t = turn_from_quarters(quarters(plan[i].turn) + quarters(plan[i + 1].turn));
            if (t) out.push_back({plan[i].face, *t});
            changed = true;
            i += 2;
        } else {
            out.push_back(plan[i]);
            ++i;
        }
    }
    plan = std::move(out);
    return changed;
}

}  // namespace

std::vector<Move> metric_convert(std::span<const Move> plan, MetricDirection direction) {
    std::vector<Move> out(plan.begin(), plan.end());
    if (direction == MetricDirection::TO_FULL_18) {
        while (merge_pass(out)) {
        }
    } else {
        std::vector<Move> expanded;
        for (Move m : out) {
            if (m.turn == Turn::HALF) {
                expanded.push_back({m.face, Turn::CW90});
                expanded.push_back({m.face, Turn::CW90});
            } else {
                expanded.push_back(m);
            }
        }
        out = std::move(expanded);
    }
    return out;
}

nlohmann::json optimality_report_to_json(const OptimalityReport& r) {
    nlohmann::json j{{"id", r.id},
                     {"plan_length", r.plan_length},
                     {"metric", r.metric.name()}};
    j["optimal_length"] = r.optimal_length ? nlohmann::json(*r.optimal_length) : nlohmann::json();
    j["is_optimal"] = r.is_optimal ? nlohmann::json(*r.is_optimal) : nlohmann::json();
    return j;
}

std::pair<std::vector<OptimalityReport>, OptimalityAggregate> classify_optimality(
    std::span<const PlanRecord> records, const OptimalOracle& oracle,
    const SearchLimits& budget) {
    std::vector<OptimalityReport> reports;
    OptimalityAggregate agg;
    agg.total = static_cast<int>(records.size());
    for (const PlanRecord& rec : records) {
        OptimalityReport rep;
        rep.id = rec.id;
        rep.plan_length = static_cast<int>(rec.plan.size());
        rep.metric = oracle.action_set();
        rep.optimal_length = oracle.optimal_length(rec.state, budget);
        if (rep.optimal_length) {
            rep.is_optimal = rep.plan_length == *rep.optimal_length;
            ++agg.classified;
            agg.optimal += *rep.is_optimal;
        } else {
            ++agg.unknown;
        }
        reports.push_back(std::move(rep));
    }
    if (agg.classified > 0)
        agg.percent_of_classified = 100.0 * agg.optimal / agg.classified;
    if (agg.total > 0) agg.percent_of_total = 100.0 * agg.optimal / agg.total;
    return {std::move(reports), agg};
}

}  // namespace rcplan

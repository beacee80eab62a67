#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "rcplan/oracle.hpp"
#include "rcplan/scramble.hpp"
#include "test_util.hpp"

using namespace rcplan;
using test::Rng;

namespace {

std::string cache_dir() {
    return (std::filesystem::temp_directory_path() / "rcplan-oracle-cache").string();
}

const OptimalOracle& oracle_full() {
    static OptimalOracle o(ActionSet::full18(), cache_dir());
    return o;
}

const OptimalOracle& oracle_quarter() {
    static OptimalOracle o(ActionSet::quarter12(), cache_dir());
    return o;
}

std::vector<Move> plan_of(std::initializer_list<const char*> names) {
    std::vector<Move> plan;
    for (const char* n : names) plan.push_back(*move_from_name(n));
    return plan;
}

}  // namespace

TEST_CASE("bfs_optimal basics") {
    CHECK(bfs_optimal(CubeState::solved(), ActionSet::full18(), 0) == 0);
    CHECK(bfs_optimal(apply_move(CubeState::solved(), {Face::L, Turn::CW90}),
                      ActionSet::full18(), 2) == 1);
    // a half turn is depth 2 in the quarter metric
    CubeState s = apply_move(CubeState::solved(), {Face::F, Turn::HALF});
    CHECK(bfs_optimal(s, ActionSet::quarter12(), 3) == 2);
    CHECK(bfs_optimal(s, ActionSet::full18(), 2) == 1);
    // bounded: nullopt beyond max_depth
    Rng rng(8);
    CubeState deep = test::random_state(rng, 20);
    CHECK(!bfs_optimal(deep, ActionSet::full18(), 2));
    CHECK_THROWS_AS(bfs_optimal(deep, ActionSet::full18(), 8), std::invalid_argument);
    CHECK(bfs_depth_cap(ActionSet::quarter12()) == 7);
}

TEST_CASE("optimal oracle agrees with bfs") {
    Rng rng(21);
    for (int i = 0; i < 30; ++i) {
        CubeState s = test::random_state(rng, 1 + static_cast<int>(rng.below(5)));
        auto bfs = bfs_optimal(s, ActionSet::full18(), 5);
        REQUIRE(bfs);
        CHECK(oracle_full().optimal_length(s) == *bfs);
        auto bfs_q = bfs_optimal(s, ActionSet::quarter12(), 7);
        if (bfs_q) CHECK(oracle_quarter().optimal_length(s) == *bfs_q);
    }
    // half-turn scramble: 1 in the full metric, 2 in the quarter metric
    CubeState f2 = apply_move(CubeState::solved(), {Face::F, Turn::HALF});
    CHECK(oracle_full().optimal_length(f2) == 1);
    CHECK(oracle_quarter().optimal_length(f2) == 2);
    // budget exhaustion is a value, not an error
    Rng rng2(5);
    CubeState deep = test::random_state(rng2, 20);
    SearchLimits tiny;
    tiny.wall_time_s = 0.0;
    CHECK(!oracle_full().optimal_length(deep, tiny));
}

TEST_CASE("validate_plan") {
    CHECK(validate_plan(CubeState::solved(), {}, ActionSet::full18()).valid);

    CubeState s = apply_move(CubeState::solved(), {Face::L, Turn::CW90});
    auto undo = plan_of({"Lrev"});
    CHECK(validate_plan(s, undo, ActionSet::full18()).valid);
    CHECK(validate_plan(s, undo, ActionSet::quarter12()).valid);

    auto with_half = plan_of({"F2", "F2", "Lrev"});
    ValidationResult bad_set = validate_plan(s, with_half, ActionSet::quarter12());
    CHECK(!bad_set.valid);
    CHECK(bad_set.reason == PlanViolation::MOVE_NOT_IN_ACTION_SET);
    CHECK(bad_set.position == 0);
    CHECK(validate_plan(s, with_half, ActionSet::full18()).valid);

    ValidationResult not_solved = validate_plan(s, plan_of({"U"}), ActionSet::full18());
    CHECK(!not_solved.valid);
    CHECK(not_solved.reason == PlanViolation::NOT_SOLVED_AT_END);
}

TEST_CASE("metric conversion") {
    CHECK(metric_convert(plan_of({"F", "F"}), MetricDirection::TO_FULL_18) == plan_of({"F2"}));
    CHECK(metric_convert(plan_of({"F2"}), MetricDirection::TO_QUARTER_12) ==
          plan_of({"F", "F"}));
    CHECK(metric_convert(plan_of({"L", "Lrev"}), MetricDirection::TO_FULL_18).empty());
    // cascading merges across passes: U U2 U -> cancels entirely
    CHECK(metric_convert(plan_of({"U", "U2", "U"}), MetricDirection::TO_FULL_18).empty());
    CHECK(metric_convert(plan_of({"U", "U", "U"}), MetricDirection::TO_FULL_18) ==
          plan_of({"Urev"}));
    // quarter direction only expands half turns
    CHECK(metric_convert(plan_of({"L", "Lrev"}), MetricDirection::TO_QUARTER_12) ==
          plan_of({"L", "Lrev"}));

    // effect preservation on random plans
    Rng rng(33);
    for (int i = 0; i < 200; ++i) {
        std::vector<Move> plan;
        int len = static_cast<int>(rng.below(12));
        for (int k = 0; k < len; ++k) plan.push_back(move_from_id(static_cast<int>(rng.below(18))));
        CubeState s = test::random_state(rng, 5);
        for (auto dir : {MetricDirection::TO_FULL_18, MetricDirection::TO_QUARTER_12}) {
            auto conv = metric_convert(plan, dir);
            CHECK(apply_plan(s, conv) == apply_plan(s, plan));
            if (dir == MetricDirection::TO_QUARTER_12)
                for (Move m : conv) CHECK(m.turn != Turn::HALF);
        }
    }
}

TEST_CASE("classify_optimality") {
    // empty input: aggregate undefined, reported as absent
    auto [none, empty_agg] = classify_optimality({}, oracle_full());
    CHECK(none.empty());
    CHECK(!empty_agg.percent_of_classified);
    CHECK(!empty_agg.percent_of_total);

    CubeState f2 = apply_move(CubeState::solved(), {Face::F, Turn::HALF});
    std::vector<PlanRecord> records{
        {"good", f2, plan_of({"F2"})},
        {"quarter-pair", f2, plan_of({"Frev", "Frev"})},  // valid but 2 moves in full metric
    };
    auto [reports, agg] = classify_optimality(records, oracle_full());
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].is_optimal == true);
    CHECK(reports[1].is_optimal == false);
    CHECK(reports[1].optimal_length == 1);
    CHECK(agg.classified == 2);
    CHECK(agg.optimal == 1);
    CHECK(agg.percent_of_classified == 50.0);

    nlohmann::json j = optimality_report_to_json(reports[1]);
    CHECK(j["id"] == "quarter-pair");
    CHECK(j["plan_length"] == 2);
    CHECK(j["optimal_length"] == 1);
    CHECK(j["is_optimal"] == false);

    // admissible searches on shallow instances classify 100% optimal
    Rng rng(61);
    std::vector<PlanRecord> solved_records;
    for (int i = 0; i < 10; ++i) {
        CubeState s = test::random_state(rng, 1 + static_cast<int>(rng.below(5)));
        PlanResult r = oracle_full().solve(s);
        REQUIRE(r.status == SearchStatus::SOLVED);
        solved_records.push_back({"i" + std::to_string(i), s, r.plan});
    }
    auto [_, agg2] = classify_optimality(solved_records, oracle_full());
    CHECK(agg2.percent_of_classified == 100.0);
    CHECK(agg2.unknown == 0);
}

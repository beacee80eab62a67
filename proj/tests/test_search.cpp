#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <unordered_map>

#include "rcplan/heuristics.hpp"
#include "rcplan/search.hpp"
#include "test_util.hpp"

using namespace rcplan;
using test::Rng;

namespace {

std::unordered_map<PackedState, int, PackedStateHash> distance_map(ActionSet as, int max_depth) {
    std::unordered_map<PackedState, int, PackedStateHash> dist;
    std::vector<CubeState> frontier{CubeState::solved()};
    dist[pack_state(CubeState::solved())] = 0;
    for (int d = 1; d <= max_depth; ++d) {
        std::vector<CubeState> next;
        for (const CubeState& s : frontier)
            for (Move m : as.moves()) {
                CubeState t = apply_move(s, m);
                if (dist.emplace(pack_state(t), d).second) next.push_back(t);
            }
        frontier = std::move(next);
    }
    return dist;
}

const Heuristic& manual_pdb_full18() {
    static Heuristic h({HeuristicKind::PDB_MANUAL, ActionSet::full18()},
                       (std::filesystem::temp_directory_path() / "rcplan-search-cache").string());
    return h;
}

const Heuristic& manual_pdb_quarter12() {
    static Heuristic h({HeuristicKind::PDB_MANUAL, ActionSet::quarter12()},
                       (std::filesystem::temp_directory_path() / "rcplan-search-cache").string());
    return h;
}

}  // namespace

TEST_CASE("solved input conventions") {
    for (auto* search : {&astar, &idastar}) {
        PlanResult r = (*search)(CubeState::solved(), h_blind, ActionSet::full18(), {});
        CHECK(r.status == SearchStatus::SOLVED);
        CHECK(r.plan.empty());
        CHECK(r.expansions == 0);
        CHECK(r.heuristic_initial == 0);
    }
}

TEST_CASE("depth-1 scrambles, blind heuristic") {
    for (Move m : ActionSet::quarter12().moves()) {
        PlanResult r = astar(apply_move(CubeState::solved(), m), h_blind,
                             ActionSet::quarter12(), {});
        REQUIRE(r.status == SearchStatus::SOLVED);
        CHECK(r.plan.size() == 1);
        CHECK(r.plan[0] == inverse_move(m));
    }
}

TEST_CASE("astar optimality against exhaustive distances") {
    auto dist = distance_map(ActionSet::full18(), 4);
    const Heuristic& h = manual_pdb_full18();
    Rng rng(100);
    for (int i = 0; i < 60; ++i) {
        CubeState s = test::random_state(rng, 1 + static_cast<int>(rng.below(4)));
        int d = dist.at(pack_state(s));
        PlanResult r = astar(s, std::cref(h), ActionSet::full18(), {});
        REQUIRE(r.status == SearchStatus::SOLVED);
        CHECK(static_cast<int>(r.plan.size()) == d);
        CHECK(apply_plan(s, r.plan).is_solved());
    }
}

TEST_CASE("astar and idastar agree on optimal lengths") {
    const Heuristic& hf = manual_pdb_full18();
    const Heuristic& hq = manual_pdb_quarter12();
    Rng rng(200);
    for (int i = 0; i < 25; ++i) {
        CubeState s = test::random_state(rng, 1 + static_cast<int>(rng.below(6)));
        PlanResult a = astar(s, std::cref(hf), ActionSet::full18(), {});
        PlanResult b = idastar(s, std::cref(hf), ActionSet::full18(), {});
        REQUIRE(a.status == SearchStatus::SOLVED);
        REQUIRE(b.status == SearchStatus::SOLVED);
        CHECK(a.plan.size() == b.plan.size());
        CHECK(apply_plan(s, b.plan).is_solved());
        CHECK(b.peak_stored <= b.plan.size() + 2);

        PlanResult q = idastar(s, std::cref(hq), ActionSet::quarter12(), {});
        REQUIRE(q.status == SearchStatus::SOLVED);
        CHECK(apply_plan(s, q.plan).is_solved());
        // the quarter metric can only lengthen plans
        CHECK(q.plan.size() >= a.plan.size());
    }
}

TEST_CASE("determinism") {
    Rng rng(300);
    CubeState s = test::random_state(rng, 6);
    const Heuristic& h = manual_pdb_full18();
    PlanResult r1 = astar(s, std::cref(h), ActionSet::full18(), {});
    PlanResult r2 = astar(s, std::cref(h), ActionSet::full18(), {});
    CHECK(r1.plan == r2.plan);
    CHECK(r1.expansions == r2.expansions);
    CHECK(r1.generated == r2.generated);
    CHECK(r1.peak_stored == r2.peak_stored);

    PlanResult i1 = idastar(s, std::cref(h), ActionSet::full18(), {});
    PlanResult i2 = idastar(s, std::cref(h), ActionSet::full18(), {});
    CHECK(i1.plan == i2.plan);
    CHECK(i1.expansions == i2.expansions);
}

TEST_CASE("inadmissible heuristics still yield valid plans") {
    Heuristic ff({HeuristicKind::FF, ActionSet::full18()});
    Rng rng(400);
    for (int i = 0; i < 5; ++i) {
        CubeState s = test::random_state(rng, 4);
        PlanResult r = astar(s, std::cref(ff), ActionSet::full18(), {});
        REQUIRE(r.status == SearchStatus::SOLVED);
        CHECK(apply_plan(s, r.plan).is_solved());
    }
    // goal count likewise
    CubeState s = test::random_state(rng, 5);
    PlanResult r = astar(s, h_goal_count, ActionSet::full18(), {});
    REQUIRE(r.status == SearchStatus::SOLVED);
    CHECK(apply_plan(s, r.plan).is_solved());
}

TEST_CASE("resource limits produce statuses, not exceptions") {
    Rng rng(500);
    CubeState s = test::random_state(rng, 15);

    SearchLimits tiny_mem;
    tiny_mem.max_stored_nodes = 500;
    PlanResult m = astar(s, h_blind, ActionSet::full18(), tiny_mem);
    CHECK(m.status == SearchStatus::MEMOUT);
    CHECK(m.peak_stored <= 500);

    SearchLimits tiny_time;
    tiny_time.wall_time_s = 0.0;
    CHECK(astar(s, h_blind, ActionSet::full18(), tiny_time).status == SearchStatus::TIMEOUT);
    CHECK(idastar(s, h_blind, ActionSet::full18(), tiny_time).status == SearchStatus::TIMEOUT);

    SearchLimits few_exp;
    few_exp.max_expansions = 10;
    PlanResult e = astar(s, h_blind, ActionSet::full18(), few_exp);
    CHECK(e.status == SearchStatus::TIMEOUT);
    CHECK(e.expansions <= 10);
}

TEST_CASE("plan result serialization") {
    CubeState s = apply_move(CubeState::solved(), {Face::R, Turn::HALF});
    PlanResult r = astar(s, h_blind, ActionSet::full18(), {});
    nlohmann::json j = plan_result_to_json(r);
    CHECK(j["status"] == "SOLVED");
    CHECK(j["plan"] == nlohmann::json::array({"R2"}));
    CHECK(j["plan_length"] == 1);
    CHECK(j["expansions"].get<uint64_t>() >= 1);
}

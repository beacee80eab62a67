#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rcplan/bench.hpp"
#include "test_util.hpp"

using namespace rcplan;
namespace fs = std::filesystem;

namespace {

std::string cache_dir() {
    return (fs::temp_directory_path() / "rcplan-bench-cache").string();
}

// small dataset on disk: 8 instances, depths 1..4
std::string write_small_dataset(const fs::path& dir) {
    Dataset ds;
    ds.name = "smoke";
    ds.master_seed = 11;
    ds.action_set = ActionSet::full18();
    for (int n = 1; n <= 4; ++n)
        for (int i = 0; i < 2; ++i) {
            ProblemInstance inst = generate_instance(n, ds.action_set, 1000 + n * 10 + i);
            inst.id = "n" + std::to_string(n) + "-i" + std::to_string(i);
            ds.instances.push_back(std::move(inst));
        }
    fs::create_directories(dir);
    fs::path p = dir / "smoke.json";
    std::ofstream(p) << dataset_to_json(ds).dump(2);
    return p.string();
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("bench config parsing") {
    nlohmann::json j{{"dataset", "d.json"},
                     {"configs", {{{"search", "astar"}, {"heuristic", "blind"}}}}};
    BenchConfig c = bench_config_from_json(j);
    CHECK(c.dataset_path == "d.json");
    REQUIRE(c.entries.size() == 1);
    CHECK(c.entries[0].search == SearchKind::ASTAR);
    CHECK(c.entries[0].heuristic.kind == HeuristicKind::BLIND);
    CHECK(c.entries[0].action_set_from_dataset);

    j["configs"][0]["actions"] = "quarter12";
    j["configs"][0]["search"] = "idastar";
    c = bench_config_from_json(j);
    CHECK(!c.entries[0].action_set_from_dataset);
    CHECK(c.entries[0].heuristic.action_set == ActionSet::quarter12());
    CHECK(c.entries[0].search == SearchKind::IDASTAR);

    j["limits"] = {{"extended_budget", true}};
    CHECK(bench_config_from_json(j).limits.wall_time_s == 1800.0);

    CHECK_THROWS_AS(bench_config_from_json({{"configs", nlohmann::json::array()}}), ConfigError);
    j["configs"][0]["heuristic"] = "nope";
    CHECK_THROWS_AS(bench_config_from_json(j), ConfigError);
    j["configs"][0]["heuristic"] = "blind";
    j["version"] = 2;
    CHECK_THROWS_AS(bench_config_from_json(j), ConfigError);
}

TEST_CASE("instance result serialization") {
    BenchInstanceResult r;
    r.config = "astar+blind@full18";
    r.instance = "n03-i1";
    r.depth = 3;
    r.status = SearchStatus::SOLVED;
    r.scramble = "L U2 F";
    r.plan = {"Frev", "U2", "Lrev"};
    r.optimal_len = 3;
    r.is_optimal = true;
    r.expansions = 42;
    r.generated = 756;
    r.peak_stored = 799;
    r.wall_s = 0.0125;

    BenchInstanceResult back = instance_result_from_json(instance_result_to_json(r));
    CHECK(back.config == r.config);
    CHECK(back.plan == r.plan);
    CHECK(back.optimal_len == 3);
    CHECK(back.is_optimal == true);
    CHECK(back.wall_s == r.wall_s);

    // unknown optimum serializes as null and comes back empty
    r.optimal_len.reset();
    r.is_optimal.reset();
    back = instance_result_from_json(instance_result_to_json(r));
    CHECK(!back.optimal_len);
    CHECK(!back.is_optimal);
}

TEST_CASE("results CSV round trip") {
    BenchInstanceResult a;
    a.config = "astar+blind@full18";
    a.instance = "n01-i0";
    a.depth = 1;
    a.status = SearchStatus::SOLVED;
    a.plan = {"U"};
    a.optimal_len = 1;
    a.is_optimal = true;
    a.expansions = 3;
    a.generated = 54;
    a.peak_stored = 55;
    a.wall_s = 0.001;
    BenchInstanceResult b;
    b.config = "astar+blind@full18";
    b.instance = "n19-i4";
    b.depth = 19;
    b.status = SearchStatus::TIMEOUT;
    b.expansions = 100000;
    b.generated = 1800000;
    b.peak_stored = 1900000;
    b.wall_s = 60.0;

    std::string csv = results_csv({a, b});
    CHECK(csv.rfind("config,instance,depth,status,plan_len,optimal_len,is_optimal,", 0) == 0);
    auto loaded = results_from_csv(csv);
    REQUIRE(loaded.size() == 2);
    CHECK(results_csv(loaded) == csv);
    CHECK(loaded[1].status == SearchStatus::TIMEOUT);
    CHECK(!loaded[1].optimal_len);

    CHECK_THROWS_AS(results_from_csv("bogus\n1,2,3\n"), IoError);
}

TEST_CASE("rendering") {
    std::string net = render_state(CubeState::solved());
    CHECK(net.find("WWW") != std::string::npos);  // front block rows
    // exactly 9 of each color
    for (char c : {'W', 'R', 'G', 'Y', 'O', 'B'})
        CHECK(std::count(net.begin(), net.end(), c) == 9);
    // centers never move: after any scramble the F center stays W
    test::Rng rng(2);
    CubeState s = test::random_state(rng, 15);
    std::string snet = render_state(s);
    for (char c : {'W', 'R', 'G', 'Y', 'O', 'B'})
        CHECK(std::count(snet.begin(), snet.end(), c) == 9);

    CHECK(render_trace(CubeState::solved(), {}).find("start:") == 0);
    CubeState one = apply_move(CubeState::solved(), {Face::U, Turn::CW90});
    std::vector<Move> plan{{Face::U, Turn::CCW90}};
    std::string trace = render_trace(one, plan);
    CHECK(trace.find("after 1. Urev:") != std::string::npos);
    // frame count = plan length + 1
    size_t frames = 0;
    for (size_t p = trace.find(":\n"); p != std::string::npos; p = trace.find(":\n", p + 1))
        ++frames;
    CHECK(frames == plan.size() + 1);

    std::vector<Move> bad{{Face::F, Turn::CW90}};
    CHECK_THROWS_AS(render_trace(one, bad), InvalidPlan);
}

TEST_CASE("run_bench end to end with resume") {
    fs::path work = fs::temp_directory_path() / "rcplan-bench-test";
    fs::remove_all(work);
    std::string dataset = write_small_dataset(work);

    BenchConfig c;
    c.dataset_path = dataset;
    c.out_dir = (work / "out").string();
    c.cache_dir = cache_dir();
    c.optcheck = true;
    c.entries.push_back({SearchKind::ASTAR,
                         {HeuristicKind::PDB_MANUAL, ActionSet::full18()},
                         false,
                         ""});
    c.entries.push_back({SearchKind::IDASTAR,
                         {HeuristicKind::BLIND, ActionSet::full18()},
                         false,
                         "blind-ida"});

    BenchReport rep = run_bench(c);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].label == "astar+pdb-manual@full18");
    CHECK(rep.rows[1].label == "blind-ida");
    for (const BenchRow& row : rep.rows) {
        CHECK(row.dataset_size == 8);
        CHECK(row.solved == 8);
        CHECK(row.optimal_percent == 100.0);  // admissible configs, shallow instances
    }
    CHECK(rep.instances.size() == 16);
    CHECK(fs::exists(work / "out" / "results.csv"));
    CHECK(fs::exists(work / "out" / "instances.jsonl"));

    // resume: nothing left to run, CSV identical
    std::string csv1 = slurp(work / "out" / "results.csv");
    BenchReport rep2 = run_bench(c);
    CHECK(slurp(work / "out" / "results.csv") == csv1);
    CHECK(rep2.rows[0].solved == 8);

    // partial log: drop half the lines, rerun, CSV identical again
    std::string log = slurp(work / "out" / "instances.jsonl");
    std::vector<std::string> lines;
    std::istringstream ls(log);
    for (std::string l; std::getline(ls, l);) lines.push_back(l);
    std::ofstream trunc(work / "out" / "instances.jsonl", std::ios::trunc);
    for (size_t i = 0; i < lines.size() / 2; ++i) trunc << lines[i] << "\n";
    trunc.close();
    run_bench(c);
    // re-run instances get fresh wall clocks; everything else is identical
    auto strip_wall = [](const std::string& csv) {
        std::string out;
        std::istringstream ss(csv);
        for (std::string l; std::getline(ss, l);) out += l.substr(0, l.rfind(',')) + "\n";
        return out;
    };
    CHECK(strip_wall(slurp(work / "out" / "results.csv")) == strip_wall(csv1));

    // mismatched action set is rejected without the override
    BenchConfig bad = c;
    bad.out_dir.clear();
    bad.entries = {{SearchKind::ASTAR, {HeuristicKind::BLIND, ActionSet::quarter12()}, false, ""}};
    CHECK_THROWS_AS(run_bench(bad), ConfigError);
    bad.allow_action_set_mismatch = true;
    BenchReport cross = run_bench(bad);  // quarter-turn model on a full-turn dataset
    CHECK(cross.rows[0].solved == 8);

    // parallel run reproduces the serial aggregate
    BenchConfig par = c;
    par.out_dir.clear();
    par.parallelism = 4;
    BenchReport prep = run_bench(par);
    CHECK(prep.rows[0].solved == rep.rows[0].solved);
    CHECK(prep.rows[0].median_expansions == rep.rows[0].median_expansions);
    CHECK(prep.instances.size() == rep.instances.size());

    fs::remove_all(work);
}

#pragma once

// Benchmark harness and reporting: runs a configuration matrix (search ×
// heuristic) over a dataset with per-instance JSONL logging (crash-resumable
// by instance id), aggregates rows in the "137 (99.27%)" count-with-percent
// style, and renders states/plan traces as ASCII nets.

#include <optional>
#include <string>
#include <vector>

#include "rcplan/oracle.hpp"
#include "rcplan/scramble.hpp"
#include "rcplan/search.hpp"

namespace rcplan {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidPlan : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SearchKind { ASTAR, IDASTAR };

std::optional<SearchKind> search_kind_from_string(const std::string& s);

// One cell of the configuration matrix. The entry's action set drives both
// the heuristic and the successor moves, so a quarter-turn model can be run
// against a half-turn dataset (the cross experiments).
struct BenchEntry {
    SearchKind search = SearchKind::ASTAR;
    HeuristicConfig heuristic;
    // when set, the entry inherits the dataset's action set at run time
    bool action_set_from_dataset = false;
    std::string label;  // defaults to "<search>+<heuristic>@<actions>"
};

struct BenchConfig {
    std::string dataset_path;
    std::vector<BenchEntry> entries;
    SearchLimits limits;
    std::string out_dir;   // JSONL log + CSV; empty = in-memory only
    int parallelism = 1;
    bool allow_action_set_mismatch = false;
    bool optcheck = false;          // classify optimality of solved plans
    SearchLimits oracle_budget;     // for optcheck
    std::string cache_dir;          // PDB cache override
};

// Declarative config document (schema version 1); throws ConfigError.
BenchConfig bench_config_from_json(const nlohmann::json& j);

struct BenchInstanceResult {
    std::string config;  // entry label
    std::string instance;
    int depth = 0;
    SearchStatus status = SearchStatus::EXHAUSTED;
    std::string scramble;            // for re-deriving the state
    std::vector<std::string> plan;   // move names, when solved
    std::optional<int> optimal_len;
    std::optional<bool> is_optimal;
    uint64_t expansions = 0;
    uint64_t generated = 0;
    uint64_t peak_stored = 0;
    double wall_s = 0.0;
};

nlohmann::json instance_result_to_json(const BenchInstanceResult& r);
BenchInstanceResult instance_result_from_json(const nlohmann::json& j);

// Aggregate per configuration. Expansion/time statistics cover solved
// instances only.
struct BenchRow {
    std::string label;
    int dataset_size = 0;
    int solved = 0;
    int timeout = 0;
    int memout = 0;
    int optimal_known = 0;  // solved instances the oracle classified
    int optimal_count = 0;
    std::optional<double> optimal_percent;  // of classified
    double mean_expansions = 0.0;
    double median_expansions = 0.0;
    double mean_wall_s = 0.0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<BenchInstanceResult> instances;  // entry order, then dataset order
};

// Runs everything not already present in out_dir's instance log. Each
// per-instance result is persisted before aggregation.
BenchReport run_bench(const BenchConfig& config);

// Aggregation only (exposed for tests and resumed runs).
std::vector<BenchRow> aggregate_rows(const BenchConfig& config, const Dataset& dataset,
                                     const std::vector<BenchInstanceResult>& instances);

// Fixed-width text table; percent cells formatted "123 (99.27%)".
std::string report_table(const std::vector<BenchRow>& rows);

// Per-instance results CSV, schema:
// config,instance,depth,status,plan_len,optimal_len,is_optimal,expansions,generated,peak_nodes,wall_s
std::string results_csv(const std::vector<BenchInstanceResult>& results);
std::vector<BenchInstanceResult> results_from_csv(const std::string& text);  // throws IoError

// Aggregate-row CSV (one line per configuration).
std::string rows_csv(const std::vector<BenchRow>& rows);

// ---------------------------------------------------------------------------
// ASCII rendering: unfolded net, single-letter color codes.

std::string render_state(const CubeState& s);
// One frame per state: initial, then after each move (labelled). Throws
// InvalidPlan when the plan does not solve the state.
std::string render_trace(const CubeState& s, std::span<const Move> plan);

}  // namespace rcplan

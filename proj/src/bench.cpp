#include "rcplan/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace rcplan {

std::optional<SearchKind> search_kind_from_string(const std::string& s) {
    if (s == "astar") return SearchKind::ASTAR;
    if (s == "idastar") return SearchKind::IDASTAR;
    return std::nullopt;
}

namespace {

const char* search_kind_name(SearchKind k) {
    return k == SearchKind::ASTAR ? "astar" : "idastar";
}

std::string entry_label(const BenchEntry& e) {
    if (!e.label.empty()) return e.label;
    return std::string(search_kind_name(e.search)) + "+" + e.heuristic.label() + "@" +
           e.heuristic.action_set.name();
}

SearchLimits limits_from_json(const nlohmann::json& j) {
    SearchLimits l;
    if (j.value("extended_budget", false)) l = SearchLimits::extended();
    if (j.contains("wall_time_s")) l.wall_time_s = j["wall_time_s"].get<double>();
    if (j.contains("max_stored_nodes")) l.max_stored_nodes = j["max_stored_nodes"].get<uint64_t>();
    if (j.contains("max_expansions")) l.max_expansions = j["max_expansions"].get<uint64_t>();
    return l;
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

}  // namespace

BenchConfig bench_config_from_json(const nlohmann::json& j) {
    try {
        if (j.value("version", 1) != 1) throw ConfigError("unsupported bench config version");
        BenchConfig c;
        c.dataset_path = j.at("dataset").get<std::string>();
        c.out_dir = j.value("out_dir", "");
        c.parallelism = j.value("parallelism", 1);
        if (c.parallelism < 1) throw ConfigError("parallelism must be >= 1");
        c.allow_action_set_mismatch = j.value("allow_action_set_mismatch", false);
        c.optcheck = j.value("optcheck", false);
        c.cache_dir = j.value("cache_dir", "");
        if (j.contains("limits")) c.limits = limits_from_json(j["limits"]);
        if (j.contains("oracle_budget")) c.oracle_budget = limits_from_json(j["oracle_budget"]);
        for (const auto& ej : j.at("configs")) {
            BenchEntry e;
            auto sk = search_kind_from_string(ej.at("search").get<std::string>());
            if (!sk) throw ConfigError("unknown search: " + ej["search"].get<std::string>());
            e.search = *sk;
            auto hk = heuristic_kind_from_string(ej.at("heuristic").get<std::string>());
            if (!hk) throw ConfigError("unknown heuristic: " + ej["heuristic"].get<std::string>());
            e.heuristic.kind = *hk;
            e.heuristic.systematic_max_size = ej.value("systematic_max_size", 3);
            if (ej.contains("actions")) {
                auto as = action_set_from_string(ej["actions"].get<std::string>());
                if (!as) throw ConfigError("unknown action set: " + ej["actions"].get<std::string>());
                e.heuristic.action_set = *as;
            } else {
                e.action_set_from_dataset = true;
            }
            e.label = ej.value("label", "");
            c.entries.push_back(std::move(e));
        }
        if (c.entries.empty()) throw ConfigError("no configurations listed");
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bench config: ") + e.what());
    }
}

nlohmann::json instance_result_to_json(const BenchInstanceResult& r) {
    nlohmann::json j{{"config", r.config},
                     {"instance", r.instance},
                     {"depth", r.depth},
                     {"status", search_status_name(r.status)},
                     {"scramble", r.scramble},
                     {"plan", r.plan},
                     {"expansions", r.expansions},
                     {"generated", r.generated},
                     {"peak_stored", r.peak_stored},
                     {"wall_s", r.wall_s}};
    j["optimal_len"] = r.optimal_len ? nlohmann::json(*r.optimal_len) : nlohmann::json();
    j["is_optimal"] = r.is_optimal ? nlohmann::json(*r.is_optimal) : nlohmann::json();
    return j;
}

BenchInstanceResult instance_result_from_json(const nlohmann::json& j) {
    BenchInstanceResult r;
    r.config = j.at("config").get<std::string>();
    r.instance = j.at("instance").get<std::string>();
    r.depth = j.at("depth").get<int>();
    std::string st = j.at("status").get<std::string>();
    for (auto s : {SearchStatus::SOLVED, SearchStatus::TIMEOUT, SearchStatus::MEMOUT,
                   SearchStatus::EXHAUSTED})
        if (st == search_status_name(s)) r.status = s;
    r.scramble = j.value("scramble", "");
    r.plan = j.value("plan", std::vector<std::string>{});
    if (j.contains("optimal_len") && !j["optimal_len"].is_null())
        r.optimal_len = j["optimal_len"].get<int>();
    if (j.contains("is_optimal") && !j["is_optimal"].is_null())
        r.is_optimal = j["is_optimal"].get<bool>();
    r.expansions = j.value("expansions", uint64_t{0});
    r.generated = j.value("generated", uint64_t{0});
    r.peak_stored = j.value("peak_stored", uint64_t{0});
    r.wall_s = j.value("wall_s", 0.0);
    return r;
}

std::vector<BenchRow> aggregate_rows(const BenchConfig& config, const Dataset& dataset,
                                     const std::vector<BenchInstanceResult>& instances) {
    std::vector<BenchRow> rows;
    for (const BenchEntry& entry : config.entries) {
        std::string label = entry_label(entry);
        BenchRow row;
        row.label = label;
        row.dataset_size = static_cast<int>(dataset.instances.size());
        std::vector<uint64_t> exps;
        double wall = 0.0;
        for (const BenchInstanceResult& r : instances) {
            if (r.config != label) continue;
            switch (r.status) {
                case SearchStatus::SOLVED:
                    ++row.solved;
                    exps.push_back(r.expansions);
                    wall += r.wall_s;
                    if (r.optimal_len) {
                        ++row.optimal_known;
                        row.optimal_count += r.is_optimal.value_or(false);
                    }
                    break;
                case SearchStatus::TIMEOUT: ++row.timeout; break;
                case SearchStatus::MEMOUT: ++row.memout; break;
                case SearchStatus::EXHAUSTED: break;
            }
        }
        if (!exps.empty()) {
            row.mean_expansions =
                static_cast<double>(std::accumulate(exps.begin(), exps.end(), uint64_t{0})) /
                static_cast<double>(exps.size());
            std::sort(exps.begin(), exps.end());
            size_t n = exps.size();
            row.median_expansions = n % 2 ? static_cast<double>(exps[n / 2])
                                          : (static_cast<double>(exps[n / 2 - 1]) +
                                             static_cast<double>(exps[n / 2])) /
                                                2.0;
            row.mean_wall_s = wall / static_cast<double>(exps.size());
        }
        if (row.optimal_known > 0)
            row.optimal_percent = 100.0 * row.optimal_count / row.optimal_known;
        rows.push_back(std::move(row));
    }
    return rows;
}

BenchReport run_bench(const BenchConfig& config) {
    namespace fs = std::filesystem;

    std::ifstream df(config.dataset_path);
    if (!df) throw IoError("cannot read dataset " + config.dataset_path);
    nlohmann::json dj;
    try {
        df >> dj;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("dataset " + config.dataset_path + ": " + e.what());
    }
    Dataset dataset = dataset_from_json(dj);

    // resolve entries against the dataset's action set
    std::vector<BenchEntry> entries = config.entries;
    std::vector<std::string> labels;
    for (BenchEntry& e : entries) {
        if (e.action_set_from_dataset) e.heuristic.action_set = dataset.action_set;
        if (e.heuristic.action_set != dataset.action_set && !config.allow_action_set_mismatch)
            throw ConfigError("entry '" + entry_label(e) + "' action set " +
                              e.heuristic.action_set.name() + " does not match dataset " +
                              dataset.action_set.name() +
                              " (set allow_action_set_mismatch to run cross experiments)");
        labels.push_back(entry_label(e));
    }

    // previously persisted per-instance results (crash resume)
    std::map<std::pair<std::string, std::string>, BenchInstanceResult> done;
    std::string log_path;
    if (!config.out_dir.empty()) {
        fs::create_directories(config.out_dir);
        log_path = config.out_dir + "/instances.jsonl";
        std::ifstream log(log_path);
        std::string line;
        while (std::getline(log, line)) {
            if (line.empty()) continue;
            BenchInstanceResult r = instance_result_from_json(nlohmann::json::parse(line));
            done[{r.config, r.instance}] = std::move(r);
        }
    }

    struct Job {
        size_t entry, instance;
    };
    std::vector<Job> jobs;
    for (size_t ei = 0; ei < entries.size(); ++ei)
        for (size_t ii = 0; ii < dataset.instances.size(); ++ii)
            if (!done.count({labels[ei], dataset.instances[ii].id})) jobs.push_back({ei, ii});

    // shared immutable heuristics / oracles, built once per needed entry
    std::vector<std::shared_ptr<const Heuristic>> heuristics(entries.size());
    std::map<ActionSetVariant, std::shared_ptr<const OptimalOracle>> oracles;
    for (const Job& job : jobs) {
        if (!heuristics[job.entry])
            heuristics[job.entry] = std::make_shared<const Heuristic>(
                entries[job.entry].heuristic, config.cache_dir);
        if (config.optcheck) {
            ActionSetVariant v = entries[job.entry].heuristic.action_set.variant;
            if (!oracles.count(v))
                oracles[v] = std::make_shared<const OptimalOracle>(ActionSet{v}, config.cache_dir);
        }
    }

    std::mutex sink_mutex;
    std::ofstream log_out;
    if (!log_path.empty()) log_out.open(log_path, std::ios::app);

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t k = next.fetch_add(1);
            if (k >= jobs.size()) return;
            const Job& job = jobs[k];
            const BenchEntry& entry = entries[job.entry];
            const ProblemInstance& inst = dataset.instances[job.instance];
            ActionSet as = entry.heuristic.action_set;

            const Heuristic& h = *heuristics[job.entry];
            PlanResult pr = entry.search == SearchKind::ASTAR
                                ? astar(inst.state, std::cref(h), as, config.limits)
                                : idastar(inst.state, std::cref(h), as, config.limits);

            BenchInstanceResult r;
            r.config = labels[job.entry];
            r.instance = inst.id;
            r.depth = inst.depth_n;
            r.status = pr.status;
            r.scramble = scramble_to_string(inst.scramble);
            r.expansions = pr.expansions;
            r.generated = pr.generated;
            r.peak_stored = pr.peak_stored;
            r.wall_s = pr.wall_time_s;
            if (pr.status == SearchStatus::SOLVED) {
                if (!validate_plan(inst.state, pr.plan, as).valid)
                    throw std::logic_error("search returned an invalid plan for " + inst.id);
                for (Move m : pr.plan) r.plan.push_back(move_name(m));
                if (config.optcheck) {
                    auto opt = oracles.at(as.variant)->optimal_length(inst.state,
                                                                      config.oracle_budget);
                    r.optimal_len = opt;
                    if (opt) r.is_optimal = static_cast<int>(pr.plan.size()) == *opt;
                }
            }

            std::lock_guard<std::mutex> lock(sink_mutex);
            if (log_out.is_open()) {
                log_out << instance_result_to_json(r).dump() << "\n";
                log_out.flush();
            }
            done[{r.config, r.instance}] = std::move(r);
        }
    };

    int threads = std::min<int>(config.parallelism, static_cast<int>(jobs.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    BenchReport report;
    for (size_t ei = 0; ei < entries.size(); ++ei)
        for (const ProblemInstance& inst : dataset.instances)
            report.instances.push_back(done.at({labels[ei], inst.id}));
    BenchConfig resolved = config;
    resolved.entries = entries;
    report.rows = aggregate_rows(resolved, dataset, report.instances);

    if (!config.out_dir.empty()) {
        std::ofstream csv(config.out_dir + "/results.csv", std::ios::trunc);
        csv << results_csv(report.instances);
        std::ofstream summary(config.out_dir + "/summary.csv", std::ios::trunc);
        summary << rows_csv(report.rows);
    }
    return report;
}

std::string report_table(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "config                                   solved            timeout memout "
           "median-exp   mean-exp     mean-s\n";
    for (const BenchRow& r : rows) {
        std::string solved = std::to_string(r.solved) + "/" + std::to_string(r.dataset_size);
        if (r.optimal_percent) solved += " (" + fmt("%.2f", *r.optimal_percent) + "%)";
        char line[256];
        std::snprintf(line, sizeof line, "%-40s %-17s %-7d %-6d %-12.1f %-12.1f %.3f\n",
                      r.label.c_str(), solved.c_str(), r.timeout, r.memout, r.median_expansions,
                      r.mean_expansions, r.mean_wall_s);
        out << line;
    }
    return out.str();
}

std::string results_csv(const std::vector<BenchInstanceResult>& results) {
    std::ostringstream out;
    out << "config,instance,depth,status,plan_len,optimal_len,is_optimal,expansions,generated,"
           "peak_nodes,wall_s\n";
    for (const BenchInstanceResult& r : results) {
        out << r.config << ',' << r.instance << ',' << r.depth << ','
            << search_status_name(r.status) << ',' << r.plan.size() << ',';
        if (r.optimal_len) out << *r.optimal_len;
        out << ',';
        if (r.is_optimal) out << (*r.is_optimal ? "true" : "false");
        out << ',' << r.expansions << ',' << r.generated << ',' << r.peak_stored << ','
            << fmt("%.6f", r.wall_s) << "\n";
    }
    return out.str();
}

std::vector<BenchInstanceResult> results_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("config,instance,depth,status,", 0) != 0)
        throw IoError("results CSV: missing or unknown header");
    std::vector<BenchInstanceResult> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.push_back("");
        if (cells.size() != 11)
            throw IoError("results CSV line " + std::to_string(lineno) + ": expected 11 fields");
        BenchInstanceResult r;
        r.config = cells[0];
        r.instance = cells[1];
        r.depth = std::stoi(cells[2]);
        bool known = false;
        for (auto s : {SearchStatus::SOLVED, SearchStatus::TIMEOUT, SearchStatus::MEMOUT,
                       SearchStatus::EXHAUSTED})
            if (cells[3] == search_status_name(s)) {
                r.status = s;
                known = true;
            }
        if (!known) throw IoError("results CSV line " + std::to_string(lineno) +
                                  ": unknown status " + cells[3]);
        r.plan.assign(static_cast<size_t>(std::stoi(cells[4])), "?");  // lengths only in CSV
        if (!cells[5].empty()) r.optimal_len = std::stoi(cells[5]);
        if (!cells[6].empty()) r.is_optimal = cells[6] == "true";
        r.expansions = std::stoull(cells[7]);
        r.generated = std::stoull(cells[8]);
        r.peak_stored = std::stoull(cells[9]);
        r.wall_s = std::stod(cells[10]);
        out.push_back(std::move(r));
    }
    return out;
}

std::string rows_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "config,dataset_size,solved,optimal_known,optimal_count,optimal_percent,timeout,"
           "memout,median_expansions,mean_expansions,mean_wall_s\n";
    for (const BenchRow& r : rows) {
        out << r.label << ',' << r.dataset_size << ',' << r.solved << ',' << r.optimal_known
            << ',' << r.optimal_count << ',';
        if (r.optimal_percent) out << fmt("%.2f", *r.optimal_percent);
        out << ',' << r.timeout << ',' << r.memout << ',' << fmt("%.1f", r.median_expansions)
            << ',' << fmt("%.1f", r.mean_expansions) << ',' << fmt("%.6f", r.mean_wall_s)
            << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// rendering

std::string render_state(const CubeState& s) {
    StickerArray arr = to_stickers(s);
    auto code = [&](Face f, int row, int col) {
        return color_code(arr.facelets[sticker_index(f, row - 1, col - 1)]);
    };
    std::ostringstream out;
    for (int row = 0; row < 3; ++row) {
        out << "    ";
        for (int col = 0; col < 3; ++col) out << code(Face::U, row, col);
        out << "\n";
    }
    for (int row = 0; row < 3; ++row) {
        for (Face f : {Face::L, Face::F, Face::R, Face::B}) {
            for (int col = 0; col < 3; ++col) out << code(f, row, col);
            out << (f == Face::B ? "\n" : " ");
        }
    }
    for (int row = 0; row < 3; ++row) {
        out << "    ";
        for (int col = 0; col < 3; ++col) out << code(Face::D, row, col);
        out << "\n";
    }
    return out.str();
}

std::string render_trace(const CubeState& s, std::span<const Move> plan) {
    if (!validate_plan(s, plan, ActionSet::full18()).valid)
        throw InvalidPlan("trace plan does not solve the given state");
    std::ostringstream out;
    out << "start:\n" << render_state(s);
    CubeState cur = s;
    for (size_t i = 0; i < plan.size(); ++i) {
        cur = apply_move(cur, plan[i]);
        out << "\nafter " << (i + 1) << ". " << move_name(plan[i]) << ":\n" << render_state(cur);
    }
    return out.str();
}

}  // namespace rcplan

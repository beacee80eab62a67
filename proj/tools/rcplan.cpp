// rcplan: command-line front end — dataset generation, PDDL export/import,
// solving, validation, optimality checking, benchmarking, rendering, and
// representation conversion.
//
// Exit codes: 0 success, 1 solver/validation non-success, 2 usage or config
// errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rcplan/bench.hpp"
#include "rcplan/oracle.hpp"
#include "rcplan/pddl.hpp"
#include "rcplan/scramble.hpp"

using namespace rcplan;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
}

ActionSet parse_actions(const std::string& s) {
    if (s == "12" || s == "quarter12") return ActionSet::quarter12();
    if (s == "18" || s == "full18") return ActionSet::full18();
    throw CLI::ValidationError("--actions", "expected 12|18|quarter12|full18");
}

// state from --problem (PDDL file) or --scramble (move notation)
CubeState load_state(const std::string& problem, const std::string& scramble) {
    if (!problem.empty()) return parse_problem(slurp(problem));
    if (!scramble.empty()) return import_scramble(scramble, ActionSet::full18()).state;
    throw CLI::ValidationError("input", "need --problem or --scramble");
}

std::string plan_file_text(std::span<const Move> plan) {
    std::string out;
    for (Move m : plan) {
        std::string n = move_name(m);
        for (char& c : n) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        out += "(" + n + ")\n";
    }
    out += "; cost = " + std::to_string(plan.size()) + " (unit cost)\n";
    return out;
}

int cmd_gen(const std::string& actions, uint64_t seed, const std::string& out,
            const std::string& name) {
    Dataset ds = generate_dataset(parse_actions(actions), seed, name);
    std::string text = dataset_to_json(ds).dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else
        spit(out, text);
    std::cerr << "generated " << ds.instances.size() << " instances (" << ds.name << ")\n";
    return 0;
}

int cmd_pddl(const std::string& model, const std::string& dataset, const std::string& scramble,
             const std::string& out_dir, bool domain_only) {
    PddlVariant v = model == "m1" ? PddlVariant::M1 : PddlVariant::M2;
    std::filesystem::create_directories(out_dir);
    spit(out_dir + "/domain-" + model + ".pddl", emit_domain(v));
    int problems = 0;
    if (!domain_only) {
        if (!dataset.empty()) {
            Dataset ds = dataset_from_json(nlohmann::json::parse(slurp(dataset)));
            for (const ProblemInstance& inst : ds.instances) {
                spit(out_dir + "/problem-" + inst.id + ".pddl",
                     emit_problem(inst.state, inst.id, v));
                ++problems;
            }
        } else if (!scramble.empty()) {
            spit(out_dir + "/problem-adhoc.pddl",
                 emit_problem(load_state("", scramble), "adhoc", v));
            ++problems;
        }
    }
    std::cerr << "wrote domain + " << problems << " problem file(s) to " << out_dir << "\n";
    return 0;
}

int cmd_solve(const std::string& problem, const std::string& scramble,
              const std::string& heuristic, const std::string& search,
              const std::string& actions, double time_s, uint64_t max_nodes,
              const std::string& plan_out, const std::string& cache, bool as_json) {
    CubeState s = load_state(problem, scramble);
    ActionSet as = parse_actions(actions);
    auto hk = heuristic_kind_from_string(heuristic);
    if (!hk) throw CLI::ValidationError("--heuristic", "unknown heuristic " + heuristic);
    auto sk = search_kind_from_string(search);
    if (!sk) throw CLI::ValidationError("--search", "unknown search " + search);

    Heuristic h({*hk, as}, cache);
    SearchLimits limits;
    limits.wall_time_s = time_s;
    limits.max_stored_nodes = max_nodes;
    PlanResult r = *sk == SearchKind::ASTAR ? astar(s, std::cref(h), as, limits)
                                            : idastar(s, std::cref(h), as, limits);
    if (as_json) {
        std::cout << plan_result_to_json(r).dump(2) << "\n";
    } else if (r.status == SearchStatus::SOLVED) {
        std::cout << plan_file_text(r.plan);
    }
    std::cerr << search_status_name(r.status) << ": length=" << r.plan.size()
              << " expansions=" << r.expansions << " generated=" << r.generated
              << " peak_stored=" << r.peak_stored << " wall_s=" << r.wall_time_s << "\n";
    if (r.status != SearchStatus::SOLVED) return 1;
    if (!plan_out.empty()) spit(plan_out, plan_file_text(r.plan));
    return 0;
}

int cmd_validate(const std::string& problem, const std::string& scramble,
                 const std::string& plan_path, const std::string& actions) {
    CubeState s = load_state(problem, scramble);
    std::vector<Move> plan = parse_plan(slurp(plan_path));
    ValidationResult r = validate_plan(s, plan, parse_actions(actions));
    std::cout << (r.valid ? "VALID" : "INVALID") << ": " << r.message << "\n";
    return r.valid ? 0 : 1;
}

int cmd_optcheck(const std::string& results_path, double budget_s, const std::string& actions,
                 const std::string& cache) {
    ActionSet as = parse_actions(actions);
    std::vector<PlanRecord> records;
    std::istringstream in(slurp(results_path));
    for (std::string line; std::getline(in, line);) {
        if (line.empty()) continue;
        BenchInstanceResult r = instance_result_from_json(nlohmann::json::parse(line));
        if (r.status != SearchStatus::SOLVED) continue;
        PlanRecord rec;
        rec.id = r.config.empty() ? r.instance : r.config + "/" + r.instance;
        rec.state = import_scramble(r.scramble, ActionSet::full18()).state;
        for (const std::string& n : r.plan) rec.plan.push_back(*move_from_name(n));
        records.push_back(std::move(rec));
    }
    OptimalOracle oracle(as, cache);
    SearchLimits budget;
    budget.wall_time_s = budget_s;
    auto [reports, agg] = classify_optimality(records, oracle, budget);
    for (const OptimalityReport& rep : reports)
        std::cout << optimality_report_to_json(rep).dump() << "\n";
    std::cerr << "classified " << agg.classified << "/" << agg.total << ", optimal "
              << agg.optimal;
    if (agg.percent_of_classified) {
        char buf[32];
        std::snprintf(buf, sizeof buf, " (%.2f%%)", *agg.percent_of_classified);
        std::cerr << buf;
    } else {
        std::cerr << " (N/A)";
    }
    std::cerr << ", unknown " << agg.unknown << "\n";
    return 0;
}

int cmd_bench(const std::string& config_path) {
    BenchConfig config = bench_config_from_json(nlohmann::json::parse(slurp(config_path)));
    BenchReport report = run_bench(config);
    std::cout << report_table(report.rows);
    return 0;
}

int cmd_render(const std::string& problem, const std::string& scramble,
               const std::string& plan_path) {
    CubeState s = load_state(problem, scramble);
    if (plan_path.empty()) {
        std::cout << render_state(s);
    } else {
        std::cout << render_trace(s, parse_plan(slurp(plan_path)));
    }
    return 0;
}

int cmd_convert(const std::string& in_path, const std::string& from, const std::string& to) {
    CubeState s;
    if (from == "pddl") {
        s = parse_problem(slurp(in_path));
    } else if (from == "sticker") {
        s = from_stickers(stickers_from_json(nlohmann::json::parse(slurp(in_path))));
    } else if (from == "state") {
        s = state_from_json(nlohmann::json::parse(slurp(in_path)));
    } else if (from == "factored") {
        auto j = nlohmann::json::parse(slurp(in_path));
        FactoredState f;
        for (int i = 0; i < 20; ++i)
            f.cubies[i] = {j.at(i).at(0).get<uint8_t>(), j.at(i).at(1).get<uint8_t>()};
        s = from_factored(f);
    } else {
        throw CLI::ValidationError("--from", "expected pddl|sticker|state|factored");
    }
    if (to == "pddl") {
        std::cout << emit_problem(s, "converted");
    } else if (to == "sticker") {
        std::cout << stickers_to_json(to_stickers(s)).dump() << "\n";
    } else if (to == "state") {
        std::cout << state_to_json(s).dump() << "\n";
    } else if (to == "factored") {
        nlohmann::json j = nlohmann::json::array();
        for (auto [occ, ori] : to_factored(s).cubies) j.push_back({occ, ori});
        std::cout << j.dump() << "\n";
    } else {
        throw CLI::ValidationError("--to", "expected pddl|sticker|state|factored");
    }
    return 0;
}

int cmd_pdb(const std::string& pattern_spec, bool manual, const std::string& actions,
            const std::string& cache) {
    ActionSet as = parse_actions(actions);
    std::vector<Pattern> patterns;
    if (manual) {
        patterns = manual_patterns();
    } else if (!pattern_spec.empty()) {
        Pattern p;
        std::vector<int>* target = nullptr;
        for (char c : pattern_spec) {
            if (c == 'c') target = &p.corner_ids;
            else if (c == 'e') target = &p.edge_ids;
            else if (c == '-') continue;
            else if (std::isxdigit(static_cast<unsigned char>(c)) && target) {
                int v = c <= '9' ? c - '0' : 10 + c - 'a';
                target->push_back(v);
            } else {
                throw CLI::ValidationError("--pattern", "bad pattern spec " + pattern_spec);
            }
        }
        patterns.push_back(std::move(p));
    } else {
        throw CLI::ValidationError("pdb", "need --pattern or --manual");
    }
    for (const Pattern& p : patterns) {
        PatternDB db = build_pdb_cached(p, as, cache);
        std::cout << p.spec() << ": " << db.size() << " entries, max distance "
                  << db.max_entry() << ", cached at " << pdb_cache_path(p, as, pdb_cache_dir(cache))
                  << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rubik's Cube planning toolkit: datasets, PDDL, search, benchmarks"};
    app.require_subcommand(1);

    std::string actions = "full18", out, name, model = "m2", dataset, scramble, problem;
    std::string heuristic = "pdb-manual", search = "astar", plan_out, plan_path, cache;
    std::string results_path, config_path, from = "pddl", to = "state", in_path, pattern_spec;
    uint64_t seed = 0, max_nodes = 10'000'000;
    double time_s = 60.0, budget_s = 60.0;
    bool domain_only = false, as_json = false, manual = false;

    auto* gen = app.add_subcommand("gen", "generate a seeded 200-instance dataset");
    gen->add_option("--actions", actions, "12|18")->capture_default_str();
    gen->add_option("--seed", seed, "master seed")->capture_default_str();
    gen->add_option("--out", out, "output JSON path (default stdout)");
    gen->add_option("--name", name, "dataset name");

    auto* pddl = app.add_subcommand("pddl", "emit PDDL domain/problem files");
    pddl->add_option("--model", model, "m1|m2")->check(CLI::IsMember({"m1", "m2"}))
        ->capture_default_str();
    pddl->add_option("--dataset", dataset, "dataset JSON to export");
    pddl->add_option("--scramble", scramble, "single ad-hoc scramble");
    pddl->add_option("--out-dir", out, "output directory")->required();
    pddl->add_flag("--domain-only", domain_only, "emit only the domain file");

    auto* solve = app.add_subcommand("solve", "search for a plan");
    solve->add_option("--problem", problem, "PDDL problem file");
    solve->add_option("--scramble", scramble, "scramble notation, e.g. \"L U2 F\"");
    solve->add_option("--heuristic", heuristic, "blind|goal-count|ff|pdb-manual|pdb-systematic")
        ->capture_default_str();
    solve->add_option("--search", search, "astar|idastar")->capture_default_str();
    solve->add_option("--actions", actions, "12|18")->capture_default_str();
    solve->add_option("--time", time_s, "wall-clock limit, seconds")->capture_default_str();
    solve->add_option("--max-nodes", max_nodes, "stored-node cap")->capture_default_str();
    solve->add_option("--plan-out", plan_out, "write the plan file here");
    solve->add_option("--cache-dir", cache, "PDB cache directory");
    solve->add_flag("--json", as_json, "print the full result as JSON");

    auto* validate = app.add_subcommand("validate", "check a plan against a problem");
    validate->add_option("--problem", problem, "PDDL problem file");
    validate->add_option("--scramble", scramble, "scramble notation");
    validate->add_option("--plan", plan_path, "plan file")->required();
    validate->add_option("--actions", actions, "12|18")->capture_default_str();

    auto* optcheck = app.add_subcommand("optcheck", "classify plan optimality");
    optcheck->add_option("--results", results_path, "instances.jsonl from bench")->required();
    optcheck->add_option("--budget", budget_s, "oracle seconds per instance")
        ->capture_default_str();
    optcheck->add_option("--actions", actions, "12|18")->capture_default_str();
    optcheck->add_option("--cache-dir", cache, "PDB cache directory");

    auto* bench = app.add_subcommand("bench", "run a benchmark configuration matrix");
    bench->add_option("--config", config_path, "bench config JSON")->required();

    auto* render = app.add_subcommand("render", "print an ASCII net (or plan trace)");
    render->add_option("--problem", problem, "PDDL problem file");
    render->add_option("--scramble", scramble, "scramble notation");
    render->add_option("--plan", plan_path, "plan file to step through");

    auto* convert = app.add_subcommand("convert", "convert between representations");
    convert->add_option("--in", in_path, "input file")->required();
    convert->add_option("--from", from, "pddl|sticker|state|factored")->capture_default_str();
    convert->add_option("--to", to, "pddl|sticker|state|factored")->capture_default_str();

    auto* pdb = app.add_subcommand("pdb", "build/inspect pattern database caches");
    pdb->add_option("--pattern", pattern_spec, "pattern spec, e.g. c0123 or e45-c0");
    pdb->add_flag("--manual", manual, "build the five default patterns");
    pdb->add_option("--actions", actions, "12|18")->capture_default_str();
    pdb->add_option("--cache-dir", cache, "PDB cache directory");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_gen(actions, seed, out, name);
        if (pddl->parsed()) return cmd_pddl(model, dataset, scramble, out, domain_only);
        if (solve->parsed())
            return cmd_solve(problem, scramble, heuristic, search, actions, time_s, max_nodes,
                             plan_out, cache, as_json);
        if (validate->parsed()) return cmd_validate(problem, scramble, plan_path, actions);
        if (optcheck->parsed()) return cmd_optcheck(results_path, budget_s, actions, cache);
        if (bench->parsed()) return cmd_bench(config_path);
        if (render->parsed()) return cmd_render(problem, scramble, plan_path);
        if (convert->parsed()) return cmd_convert(in_path, from, to);
        if (pdb->parsed()) return cmd_pdb(pattern_spec, manual, actions, cache);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // --help exits 0; usage errors exit 2
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

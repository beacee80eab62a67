#include "rcplan/scramble.hpp"

#include <set>
#include <sstream>

namespace rcplan {
namespace {

std::vector<Move> draw_scramble(int n, ActionSet as, uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<Move> plan;
    plan.reserve(n);
    const auto& all = as.moves();
    for (int i = 0; i < n; ++i) {
        std::vector<Move> allowed;
        for (Move m : all)
            if (plan.empty() || m.face != plan.back().face) allowed.push_back(m);
        plan.push_back(allowed[rng.below(allowed.size())]);
    }
    return plan;
}

std::string instance_id(int n, int slot) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "n%02d-i%d", n, slot);
    return buf;
}

uint64_t derive_seed(uint64_t master, int n, int slot, int attempt) {
    SplitMix64 rng(master ^ (static_cast<uint64_t>(n) << 32) ^
                   (static_cast<uint64_t>(slot) << 16) ^ static_cast<uint64_t>(attempt));
    return rng.next();
}

}  // namespace

ProblemInstance generate_instance(int n, ActionSet action_set, uint64_t seed,
                                  bool allow_any_depth) {
    if (!allow_any_depth && (n < 1 || n > kMaxScrambleDepth))
        throw InvalidDepth("scramble depth " + std::to_string(n) + " outside 1.." +
                           std::to_string(kMaxScrambleDepth));
    if (n < 0) throw InvalidDepth("negative scramble depth");
    ProblemInstance inst;
    inst.scramble = draw_scramble(n, action_set, seed);
    inst.depth_n = n;
    inst.action_set = action_set;
    inst.state = apply_plan(CubeState::solved(), inst.scramble);
    inst.seed = seed;
    return inst;
}

Dataset generate_dataset(ActionSet action_set, uint64_t master_seed, const std::string& name) {
    constexpr int kPerDepth = 10;
    constexpr int kMaxRetries = 1000;
    Dataset ds;
    ds.name = name.empty()
                  ? (action_set.variant == ActionSetVariant::QUARTER_12 ? "d1" : "d2")
                  : name;
    ds.master_seed = master_seed;
    ds.action_set = action_set;

    struct Cmp {
        bool operator()(PackedState a, PackedState b) const {
            return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
        }
    };
    std::set<PackedState, Cmp> seen;
    for (int n = 1; n <= kMaxScrambleDepth; ++n) {
        for (int slot = 0; slot < kPerDepth; ++slot) {
            ProblemInstance inst;
            bool placed = false;
            for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
                inst = generate_instance(n, action_set, derive_seed(master_seed, n, slot, attempt));
                if (seen.insert(pack_state(inst.state)).second) {
                    placed = true;
                    break;
                }
            }
            if (!placed)
                throw GenerationExhausted("could not find a unique state for depth " +
                                          std::to_string(n) + " slot " + std::to_string(slot));
            inst.id = instance_id(n, slot);
            ds.instances.push_back(std::move(inst));
        }
    }
    return ds;
}

ProblemInstance import_scramble(const std::string& text, ActionSet action_set,
                                std::vector<std::string>* warnings) {
    ProblemInstance inst;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        auto m = move_from_name(tok);
        if (!m) throw ParseError("unknown move token '" + tok + "'");
        if (!action_set.contains(*m))
            throw ActionSetMismatch("move " + move_name(*m) + " not in action set " +
                                    action_set.name());
        if (!inst.scramble.empty() && inst.scramble.back().face == m->face && warnings)
            warnings->push_back("consecutive moves on the same face: " +
                                move_name(inst.scramble.back()) + " " + move_name(*m));
        inst.scramble.push_back(*m);
    }
    inst.depth_n = static_cast<int>(inst.scramble.size());
    inst.action_set = action_set;
    inst.state = apply_plan(CubeState::solved(), inst.scramble);
    inst.id = "imported";
    return inst;
}

std::string scramble_to_string(std::span<const Move> plan) {
    std::string s;
    for (Move m : plan) {
        if (!s.empty()) s += ' ';
        s += move_name(m);
    }
    return s;
}

nlohmann::json instance_to_json(const ProblemInstance& inst) {
    nlohmann::json j;
    j["id"] = inst.id;
    j["depth_n"] = inst.depth_n;
    nlohmann::json scr = nlohmann::json::array();
    for (Move m : inst.scramble) scr.push_back(move_name(m));
    j["scramble"] = scr;
    j["state"] = state_to_json(inst.state);
    j["seed"] = inst.seed;
    return j;
}

ProblemInstance instance_from_json(const nlohmann::json& j) {
    ProblemInstance inst;
    inst.id = j.at("id").get<std::string>();
    inst.depth_n = j.at("depth_n").get<int>();
    for (const auto& t : j.at("scramble")) {
        auto m = move_from_name(t.get<std::string>());
        if (!m) throw ParseError("unknown move in instance json: " + t.get<std::string>());
        inst.scramble.push_back(*m);
    }
    inst.state = state_from_json(j.at("state"));
    inst.seed = j.at("seed").get<uint64_t>();
    if (inst.state != apply_plan(CubeState::solved(), inst.scramble))
        throw ParseError("instance json: state does not match scramble");
    return inst;
}

nlohmann::json dataset_to_json(const Dataset& ds) {
    nlohmann::json j;
    j["name"] = ds.name;
    j["master_seed"] = ds.master_seed;
    j["action_set"] = ds.action_set.name();
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& inst : ds.instances) arr.push_back(instance_to_json(inst));
    j["instances"] = arr;
    return j;
}

Dataset dataset_from_json(const nlohmann::json& j) {
    Dataset ds;
    ds.name = j.at("name").get<std::string>();
    ds.master_seed = j.at("master_seed").get<uint64_t>();
    auto as = action_set_from_string(j.at("action_set").get<std::string>());
    if (!as) throw ParseError("dataset json: bad action_set");
    ds.action_set = *as;
    for (const auto& ij : j.at("instances")) {
        ProblemInstance inst = instance_from_json(ij);
        inst.action_set = ds.action_set;
        ds.instances.push_back(std::move(inst));
    }
    return ds;
}

}  // namespace rcplan

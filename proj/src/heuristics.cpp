#include "rcplan/heuristics.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace rcplan {

namespace {

constexpr uint32_t kCacheVersion = 1;
// bump if the canonical cubelet numbering ever changes
constexpr uint32_t kNumberingVersion = 1;

char hex_digit(int v) { return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10); }

// rank of the tracked cubies' slots as a partial permutation (Lehmer code
// over the shrinking set of free slots)
template <int N>
uint64_t rank_partial(const int* slots, int k) {
    uint64_t idx = 0;
    for (int i = 0; i < k; ++i) {
        int c = slots[i];
        for (int j = 0; j < i; ++j)
            if (slots[j] < slots[i]) --c;
        idx = idx * (N - i) + c;
    }
    return idx;
}

template <int N>
void unrank_partial(uint64_t idx, int* slots, int k) {
    int digits[12];
    for (int i = k - 1; i >= 0; --i) {
        digits[i] = static_cast<int>(idx % (N - i));
        idx /= (N - i);
    }
    bool used[N] = {};
    for (int i = 0; i < k; ++i) {
        int c = digits[i];
        for (int v = 0; v < N; ++v) {
            if (used[v]) continue;
            if (c-- == 0) {
                slots[i] = v;
                used[v] = true;
                break;
            }
        }
    }
}

uint64_t ipow(uint64_t b, int e) {
    uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

uint64_t falling(int n, int k) {
    uint64_t r = 1;
    for (int i = 0; i < k; ++i) r *= n - i;
    return r;
}

// abstract state: tracked cubies' slots and orientations
struct AbstractState {
    int cslot[8], cori[8];
    int eslot[12], eori[12];
};

uint64_t abstract_rank(const Pattern& p, const AbstractState& a) {
    int kc = static_cast<int>(p.corner_ids.size());
    int ke = static_cast<int>(p.edge_ids.size());
    uint64_t c = rank_partial<8>(a.cslot, kc);
    for (int i = 0; i < kc; ++i) c = c * 3 + a.cori[i];
    uint64_t e = rank_partial<12>(a.eslot, ke);
    for (int i = 0; i < ke; ++i) e = e * 2 + a.eori[i];
    return c * (falling(12, ke) * ipow(2, ke)) + e;
}

AbstractState abstract_unrank(const Pattern& p, uint64_t idx) {
    AbstractState a{};
    int kc = static_cast<int>(p.corner_ids.size());
    int ke = static_cast<int>(p.edge_ids.size());
    uint64_t espace = falling(12, ke) * ipow(2, ke);
    uint64_t e = idx % espace, c = idx / espace;
    for (int i = ke - 1; i >= 0; --i) {
        a.eori[i] = static_cast<int>(e % 2);
        e /= 2;
    }
    unrank_partial<12>(e, a.eslot, ke);
    for (int i = kc - 1; i >= 0; --i) {
        a.cori[i] = static_cast<int>(c % 3);
        c /= 3;
    }
    unrank_partial<8>(c, a.cslot, kc);
    return a;
}

// per-move maps src slot -> dst slot plus the twist picked up on arrival
struct MoveMaps {
    int cdst[8], cadd[8];
    int edst[12], eadd[12];
};

const MoveMaps& move_maps(Move m) {
    static const std::array<MoveMaps, kNumMoves> maps = [] {
        std::array<MoveMaps, kNumMoves> out{};
        for (int id = 0; id < kNumMoves; ++id) {
            const MoveTable& t = move_table(move_from_id(id));
            for (int d = 0; d < kNumCorners; ++d) {
                out[id].cdst[t.cp[d]] = d;
                out[id].cadd[t.cp[d]] = t.co[d];
            }
            for (int d = 0; d < kNumEdges; ++d) {
                out[id].edst[t.ep[d]] = d;
                out[id].eadd[t.ep[d]] = t.eo[d];
            }
        }
        return out;
    }();
    return maps[move_id(m)];
}

AbstractState abstract_apply(const Pattern& p, const AbstractState& a, Move m) {
    const MoveMaps& mm = move_maps(m);
    AbstractState r = a;
    for (size_t i = 0; i < p.corner_ids.size(); ++i) {
        r.cslot[i] = mm.cdst[a.cslot[i]];
        r.cori[i] = (a.cori[i] + mm.cadd[a.cslot[i]]) % 3;
    }
    for (size_t i = 0; i < p.edge_ids.size(); ++i) {
        r.eslot[i] = mm.edst[a.eslot[i]];
        r.eori[i] = a.eori[i] ^ mm.eadd[a.eslot[i]];
    }
    return r;
}

}  // namespace

std::string Pattern::spec() const {
    std::string s;
    if (!corner_ids.empty()) {
        s += 'c';
        for (int id : corner_ids) s += hex_digit(id);
    }
    if (!edge_ids.empty()) {
        if (!s.empty()) s += '-';
        s += 'e';
        for (int id : edge_ids) s += hex_digit(id);
    }
    return s;
}

uint64_t pattern_space_size(const Pattern& p) {
    int kc = static_cast<int>(p.corner_ids.size());
    int ke = static_cast<int>(p.edge_ids.size());
    return falling(8, kc) * ipow(3, kc) * falling(12, ke) * ipow(2, ke);
}

uint64_t PatternDB::abstract_index(const CubeState& s) const {
    AbstractState a{};
    for (size_t i = 0; i < pattern.corner_ids.size(); ++i) {
        int cubie = pattern.corner_ids[i];
        for (int slot = 0; slot < kNumCorners; ++slot)
            if (s.corner_perm[slot] == cubie) {
                a.cslot[i] = slot;
                a.cori[i] = s.corner_ori[slot];
                break;
            }
    }
    for (size_t i = 0; i < pattern.edge_ids.size(); ++i) {
        int cubie = pattern.edge_ids[i];
        for (int slot = 0; slot < kNumEdges; ++slot)
            if (s.edge_perm[slot] == cubie) {
                a.eslot[i] = slot;
                a.eori[i] = s.edge_ori[slot];
                break;
            }
    }
    return abstract_rank(pattern, a);
}

int PatternDB::max_entry() const {
    return *std::max_element(table.begin(), table.end());
}

PatternDB build_pdb(const Pattern& pattern, ActionSet action_set, uint64_t max_entries) {
    if (pattern.size() == 0) throw std::invalid_argument("empty pattern");
    uint64_t size = pattern_space_size(pattern);
    if (size > max_entries)
        throw MemoryCapExceeded("pattern database would need " + std::to_string(size) +
                                    " entries (cap " + std::to_string(max_entries) + ")",
                                size);

    PatternDB db;
    db.pattern = pattern;
    db.action_set = action_set;
    db.table.assign(size, 0xFF);

    AbstractState solved{};
    for (size_t i = 0; i < pattern.corner_ids.size(); ++i) solved.cslot[i] = pattern.corner_ids[i];
    for (size_t i = 0; i < pattern.edge_ids.size(); ++i) solved.eslot[i] = pattern.edge_ids[i];

    // breadth-first over the projected space; every move is its own inverse's
    // image, so forward distances from solved equal goal distances
    std::vector<uint32_t> frontier{static_cast<uint32_t>(abstract_rank(pattern, solved))};
    db.table[frontier[0]] = 0;
    const auto& moves = action_set.moves();
    for (uint8_t depth = 1; !frontier.empty(); ++depth) {
        std::vector<uint32_t> next;
        for (uint32_t idx : frontier) {
            AbstractState a = abstract_unrank(pattern, idx);
            for (Move m : moves) {
                uint64_t succ = abstract_rank(pattern, abstract_apply(pattern, a, m));
                if (db.table[succ] == 0xFF) {
                    db.table[succ] = depth;
                    next.push_back(static_cast<uint32_t>(succ));
                }
            }
        }
        frontier = std::move(next);
    }
    if (std::find(db.table.begin(), db.table.end(), 0xFF) != db.table.end())
        throw std::logic_error("unreachable abstract states in pattern " + pattern.spec());
    return db;
}

std::vector<Pattern> manual_patterns() {
    return {
        {{0, 1, 2, 3}, {}},
        {{4, 5, 6, 7}, {}},
        {{}, {0, 1, 2, 3}},
        {{}, {4, 5, 6, 7}},
        {{}, {8, 9, 10, 11}},
    };
}

std::vector<Pattern> systematic_patterns(int max_size) {
    if (max_size < 1 || max_size > 3) throw std::invalid_argument("max_size must be in 1..3");
    std::vector<Pattern> out;
    auto from_ids = [](const std::vector<int>& ids) {
        Pattern p;
        for (int id : ids)
            (id < kNumCorners ? p.corner_ids : p.edge_ids).push_back(id < kNumCorners ? id : id - kNumCorners);
        return p;
    };
    std::vector<int> ids;
    auto rec = [&](auto&& self, int start) -> void {
        if (!ids.empty()) out.push_back(from_ids(ids));
        if (static_cast<int>(ids.size()) == max_size) return;
        for (int v = start; v < 20; ++v) {
            ids.push_back(v);
            self(self, v + 1);
            ids.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

int h_blind(const CubeState& s) { return s.is_solved() ? 0 : 1; }

int h_goal_count(const CubeState& s) {
    int n = 0;
    for (int i = 0; i < kNumCorners; ++i)
        n += s.corner_perm[i] != i || s.corner_ori[i] != 0;
    for (int i = 0; i < kNumEdges; ++i)
        n += s.edge_perm[i] != i || s.edge_ori[i] != 0;
    return n;
}

int h_pdb_max(const CubeState& s, const std::vector<PatternDB>& pdbs) {
    int best = 0;
    for (const PatternDB& db : pdbs) best = std::max(best, db.lookup(s));
    return best;
}

// ---------------------------------------------------------------------------
// cache

std::string pdb_cache_dir(const std::string& override_dir) {
    if (!override_dir.empty()) return override_dir;
    if (const char* env = std::getenv("RCPLAN_CACHE_DIR"); env && *env) return env;
    return ".rcplan-cache";
}

std::string pdb_cache_path(const Pattern& p, ActionSet as, const std::string& dir) {
    return dir + "/pdb-v" + std::to_string(kCacheVersion) + "n" +
           std::to_string(kNumberingVersion) + "-" + as.name() + "-" + p.spec() + ".bin";
}

namespace {
constexpr char kMagic[4] = {'R', 'C', 'P', 'B'};
}

void save_pdb(const PatternDB& db, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + path);
    f.write(kMagic, 4);
    auto w32 = [&](uint32_t v) { f.write(reinterpret_cast<const char*>(&v), 4); };
    auto w8 = [&](uint8_t v) { f.write(reinterpret_cast<const char*>(&v), 1); };
    w32(kCacheVersion);
    w32(kNumberingVersion);
    w8(static_cast<uint8_t>(db.action_set.variant));
    w8(static_cast<uint8_t>(db.pattern.corner_ids.size()));
    w8(static_cast<uint8_t>(db.pattern.edge_ids.size()));
    for (int id : db.pattern.corner_ids) w8(static_cast<uint8_t>(id));
    for (int id : db.pattern.edge_ids) w8(static_cast<uint8_t>(id));
    uint64_t n = db.table.size();
    f.write(reinterpret_cast<const char*>(&n), 8);
    f.write(reinterpret_cast<const char*>(db.table.data()), static_cast<std::streamsize>(n));
    if (!f) throw std::runtime_error("short write to " + path);
}

std::optional<PatternDB> load_pdb(const Pattern& p, ActionSet as, const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return std::nullopt;
    char magic[4];
    f.read(magic, 4);
    if (!f || std::memcmp(magic, kMagic, 4) != 0) return std::nullopt;
    auto r32 = [&] { uint32_t v = 0; f.read(reinterpret_cast<char*>(&v), 4); return v; };
    auto r8 = [&] { uint8_t v = 0; f.read(reinterpret_cast<char*>(&v), 1); return v; };
    if (r32() != kCacheVersion || r32() != kNumberingVersion) return std::nullopt;
    if (r8() != static_cast<uint8_t>(as.variant)) return std::nullopt;
    size_t nc = r8(), ne = r8();
    if (nc != p.corner_ids.size() || ne != p.edge_ids.size()) return std::nullopt;
    for (size_t i = 0; i < nc; ++i)
        if (r8() != p.corner_ids[i]) return std::nullopt;
    for (size_t i = 0; i < ne; ++i)
        if (r8() != p.edge_ids[i]) return std::nullopt;
    uint64_t n = 0;
    f.read(reinterpret_cast<char*>(&n), 8);
    if (!f || n != pattern_space_size(p)) return std::nullopt;
    PatternDB db;
    db.pattern = p;
    db.action_set = as;
    db.table.resize(n);
    f.read(reinterpret_cast<char*>(db.table.data()), static_cast<std::streamsize>(n));
    if (!f) return std::nullopt;
    return db;
}

PatternDB build_pdb_cached(const Pattern& p, ActionSet as, const std::string& dir) {
    std::string d = pdb_cache_dir(dir);
    std::string path = pdb_cache_path(p, as, d);
    if (auto db = load_pdb(p, as, path)) return std::move(*db);
    PatternDB db = build_pdb(p, as);
    std::error_code ec;
    std::filesystem::create_directories(d, ec);
    if (!ec) {
        try {
            save_pdb(db, path);
        } catch (const std::runtime_error&) {
            // cache write failures are non-fatal
        }
    }
    return db;
}

// ---------------------------------------------------------------------------
// heuristic handle

std::string HeuristicConfig::label() const {
    switch (kind) {
        case HeuristicKind::BLIND: return "blind";
        case HeuristicKind::GOAL_COUNT: return "goal-count";
        case HeuristicKind::FF: return "ff";
        case HeuristicKind::PDB_MANUAL: return "pdb-manual";
        case HeuristicKind::PDB_SYSTEMATIC:
            return "pdb-systematic" + std::to_string(systematic_max_size);
    }
    return "?";
}

std::optional<HeuristicKind> heuristic_kind_from_string(const std::string& s) {
    if (s == "blind") return HeuristicKind::BLIND;
    if (s == "goal-count" || s == "goalcount") return HeuristicKind::GOAL_COUNT;
    if (s == "ff") return HeuristicKind::FF;
    if (s == "pdb-manual") return HeuristicKind::PDB_MANUAL;
    if (s == "pdb-systematic") return HeuristicKind::PDB_SYSTEMATIC;
    return std::nullopt;
}

Heuristic::Heuristic(const HeuristicConfig& config, const std::string& cache_dir)
    : config_(config) {
    switch (config.kind) {
        case HeuristicKind::BLIND:
        case HeuristicKind::GOAL_COUNT:
            break;
        case HeuristicKind::FF:
            task_ = std::make_shared<GroundedTask>(
                ground(config.action_set == ActionSet::quarter12() ? PddlVariant::M1
                                                                   : PddlVariant::M2));
            break;
        case HeuristicKind::PDB_MANUAL: {
            auto pdbs = std::make_shared<std::vector<PatternDB>>();
            for (const Pattern& p : manual_patterns())
                pdbs->push_back(build_pdb_cached(p, config.action_set, cache_dir));
            pdbs_ = std::move(pdbs);
            break;
        }
        case HeuristicKind::PDB_SYSTEMATIC: {
            auto pdbs = std::make_shared<std::vector<PatternDB>>();
            for (const Pattern& p : systematic_patterns(config.systematic_max_size))
                pdbs->push_back(build_pdb(p, config.action_set));
            pdbs_ = std::move(pdbs);
            break;
        }
    }
}

int Heuristic::operator()(const CubeState& s) const {
    switch (config_.kind) {
        case HeuristicKind::BLIND: return h_blind(s);
        case HeuristicKind::GOAL_COUNT: return h_goal_count(s);
        case HeuristicKind::FF: return h_ff(*task_, s);
        case HeuristicKind::PDB_MANUAL:
        case HeuristicKind::PDB_SYSTEMATIC: return h_pdb_max(s, *pdbs_);
    }
    return 0;
}

bool Heuristic::admissible() const {
    return config_.kind == HeuristicKind::BLIND || config_.kind == HeuristicKind::PDB_MANUAL ||
           config_.kind == HeuristicKind::PDB_SYSTEMATIC;
}

}  // namespace rcplan

#include "rcplan/search.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <queue>
#include <unordered_map>

namespace rcplan {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

const char* search_status_name(SearchStatus s) {
    switch (s) {
        case SearchStatus::SOLVED: return "SOLVED";
        case SearchStatus::TIMEOUT: return "TIMEOUT";
        case SearchStatus::MEMOUT: return "MEMOUT";
        case SearchStatus::EXHAUSTED: return "EXHAUSTED";
    }
    return "?";
}

nlohmann::json plan_result_to_json(const PlanResult& r) {
    nlohmann::json names = nlohmann::json::array();
    for (Move m : r.plan) names.push_back(move_name(m));
    return {{"status", search_status_name(r.status)},
            {"plan", names},
            {"plan_length", r.plan.size()},
            {"expansions", r.expansions},
            {"generated", r.generated},
            {"peak_stored", r.peak_stored},
            {"wall_time_s", r.wall_time_s},
            {"heuristic_initial", r.heuristic_initial}};
}

PlanResult astar(const CubeState& start, const HeuristicFn& h, ActionSet action_set,
                 const SearchLimits& limits) {
    auto t0 = Clock::now();
    PlanResult res;
    res.heuristic_initial = h(start);

    struct Node {
        CubeState state;
        int parent;   // index into nodes, -1 for the root
        Move via{};   // move applied at the parent
        int g;
    };
    std::vector<Node> nodes;
    nodes.push_back({start, -1, {}, 0});

    // best known g per state; entries never worsen
    std::unordered_map<PackedState, int, PackedStateHash> best_g;
    best_g.emplace(pack_state(start), 0);

    struct Entry {
        int f, g;
        uint64_t gen;
        int node;
    };
    auto worse = [](const Entry& a, const Entry& b) {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g > b.g;
        return a.gen > b.gen;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> open(worse);
    uint64_t gen_counter = 0;
    open.push({res.heuristic_initial, 0, gen_counter++, 0});

    const auto& moves = action_set.moves();
    auto finish = [&](SearchStatus st) {
        res.status = st;
        res.peak_stored = nodes.size();
        res.wall_time_s = seconds_since(t0);
        return res;
    };

    while (!open.empty()) {
        Entry e = open.top();
        open.pop();
        const Node& n = nodes[e.node];
        if (e.g > best_g[pack_state(n.state)]) continue;  // stale entry

        if (n.state.is_solved()) {
            for (int i = e.node; nodes[i].parent >= 0; i = nodes[i].parent)
                res.plan.push_back(nodes[i].via);
            std::reverse(res.plan.begin(), res.plan.end());
            return finish(SearchStatus::SOLVED);
        }

        if ((res.expansions & 0x3FF) == 0 && seconds_since(t0) > limits.wall_time_s)
            return finish(SearchStatus::TIMEOUT);
        if (limits.max_expansions && res.expansions >= limits.max_expansions)
            return finish(SearchStatus::TIMEOUT);
        if (nodes.size() + moves.size() > limits.max_stored_nodes)
            return finish(SearchStatus::MEMOUT);

        ++res.expansions;
        int parent_idx = e.node;
        for (Move m : moves) {
            CubeState succ = apply_move(nodes[parent_idx].state, m);
            ++res.generated;
            int g = e.g + 1;
            auto [it, fresh] = best_g.emplace(pack_state(succ), g);
            if (!fresh) {
                if (it->second <= g) continue;
                it->second = g;
            }
            nodes.push_back({succ, parent_idx, m, g});
            open.push({g + h(succ), g, gen_counter++, static_cast<int>(nodes.size()) - 1});
        }
    }
    return finish(SearchStatus::EXHAUSTED);
}

namespace {

struct IdaContext {
    const HeuristicFn* h;
    const std::vector<Move>* moves;
    bool full18;
    const SearchLimits* limits;
    Clock::time_point t0;
    PlanResult* res;
    std::vector<Move> path;
    bool out_of_time = false;
};

constexpr int kFound = -1;

// returns kFound, or the smallest f-value that exceeded the bound
int ida_dfs(IdaContext& c, const CubeState& s, int g, int bound) {
    int f = g + (*c.h)(s);
    if (f > bound) return f;
    if (s.is_solved()) return kFound;

    if ((c.res->expansions & 0xFFF) == 0 && seconds_since(c.t0) > c.limits->wall_time_s) {
        c.out_of_time = true;
        return bound + 1;
    }
    if (c.limits->max_expansions && c.res->expansions >= c.limits->max_expansions) {
        c.out_of_time = true;
        return bound + 1;
    }

    ++c.res->expansions;
    int min_over = std::numeric_limits<int>::max();
    size_t depth = c.path.size();
    for (Move m : *c.moves) {
        if (depth > 0) {
            Move last = c.path[depth - 1];
            if (m == inverse_move(last)) continue;
            if (m.face == last.face && c.full18) continue;  // combined moves exist
            if (opposite_face(m.face) == last.face &&
                static_cast<int>(m.face) < static_cast<int>(last.face))
                continue;  // opposite faces commute; allow one order
            if (!c.full18 && depth > 1 && m == last && c.path[depth - 2] == m)
                continue;  // three equal quarter turns = one inverse turn
        }
        ++c.res->generated;
        c.path.push_back(m);
        int t = ida_dfs(c, apply_move(s, m), g + 1, bound);
        if (t == kFound) return kFound;
        c.path.pop_back();
        if (c.out_of_time) return bound + 1;
        min_over = std::min(min_over, t);
    }
    return min_over;
}

}  // namespace

PlanResult idastar(const CubeState& start, const HeuristicFn& h, ActionSet action_set,
                   const SearchLimits& limits) {
    PlanResult res;
    IdaContext c;
    c.h = &h;
    c.moves = &action_set.moves();
    c.full18 = action_set == ActionSet::full18();
    c.limits = &limits;
    c.t0 = Clock::now();
    c.res = &res;
    res.heuristic_initial = h(start);

    int bound = res.heuristic_initial;
    for (;;) {
        int t = ida_dfs(c, start, 0, bound);
        res.peak_stored = std::max<uint64_t>(res.peak_stored, c.path.size() + 1);
        if (t == kFound) {
            res.status = SearchStatus::SOLVED;
            res.plan = c.path;
            break;
        }
        if (c.out_of_time) {
            res.status = SearchStatus::TIMEOUT;
            break;
        }
        if (t == std::numeric_limits<int>::max()) {
            res.status = SearchStatus::EXHAUSTED;
            break;
        }
        bound = t;
    }
    res.wall_time_s = seconds_since(c.t0);
    res.peak_stored = std::max<uint64_t>(res.peak_stored, c.path.size() + 1);
    return res;
}

}  // namespace rcplan

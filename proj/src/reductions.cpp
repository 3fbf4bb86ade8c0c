#include "wpw/reductions.hpp"

#include <algorithm>
#include <sstream>

namespace wpw {

PenaltyEnsemble delay_to_penalties(const Instance& inst) {
    if (inst.variant != Variant::wPwD) throw InvalidInstance("delay_to_penalties needs a wPwD instance");
    PenaltyEnsemble out;
    Instance& r = out.instance;
    r.variant = Variant::wPwTwP;
    r.n = inst.n;
    r.k = inst.k;
    r.horizon = inst.horizon;
    r.weights = inst.weights;
    int next = 0;
    for (const auto& d : inst.delays) {
        for (std::size_t i = 1; i < d.loss.size(); ++i) {
            if (d.loss[i].first <= d.loss[i - 1].first || d.loss[i].second < d.loss[i - 1].second)
                throw NonMonotoneLoss("breakpoints of delay request " + std::to_string(d.id) + " decrease");
        }
        auto& ids = out.ensembles[d.id];
        for (int t = d.arrival; t <= inst.horizon; ++t) {
            Rat pen = d.loss_at(t + 1) - d.loss_at(t);
            if (pen == Rat(0)) continue;
            r.requests.push_back({next, d.page, d.arrival, t, Penalty::finite(pen)});
            ids.push_back(next++);
        }
    }
    return out;
}

Instance drop_dominated(const Instance& inst) {
    Instance out = inst;
    out.requests.clear();
    const auto& rs = inst.requests;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        bool drop = false;
        for (std::size_t j = 0; j < rs.size() && !drop; ++j) {
            if (i == j || rs[i].page != rs[j].page) continue;
            if (rs[i].strictly_contains(rs[j])) drop = true;
            else if (j < i && rs[i].start == rs[j].start && rs[i].deadline == rs[j].deadline) drop = true;
        }
        if (!drop) out.requests.push_back(rs[i]);
    }
    return out;
}

Graph read_edge_list(std::istream& in) {
    Graph g;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        int u = 0, v = 0;
        if (!(ls >> u)) continue;
        if (!(ls >> v) || u < 1 || v < 1 || u == v) throw ParseError("bad edge line: " + line);
        if (u > v) std::swap(u, v);
        g.vertices = std::max(g.vertices, v);
        g.edges.emplace_back(u, v);
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

Instance vc_to_wpwtw(const Graph& g) {
    if (g.edges.empty()) throw EmptyGraph("graph has no edges");
    Instance inst;
    inst.variant = Variant::wPwTw;
    const int m = static_cast<int>(g.edges.size());
    const int nv = g.vertices;
    inst.n = m + 1;
    inst.k = 1;
    inst.horizon = nv + 1;
    inst.weights.assign(static_cast<std::size_t>(m + 1), Rat(1));
    int id = 0;
    for (int e = 0; e < m; ++e) {
        auto [u, v] = g.edges[static_cast<std::size_t>(e)];
        if (u < 1 || v > nv || u >= v) throw InvalidInstance("edge must satisfy 1 <= u < v <= |V|");
        inst.requests.push_back({id++, e, 0, u, Penalty::hard()});
        inst.requests.push_back({id++, e, u, v, Penalty::hard()});
        inst.requests.push_back({id++, e, v, nv + 1, Penalty::hard()});
    }
    for (int t = 0; t <= nv + 1; ++t) inst.requests.push_back({id++, m, t, t, Penalty::hard()});
    return inst;
}

int min_vertex_cover(const Graph& g) {
    int best = g.vertices;
    for (unsigned mask = 0; mask < (1u << g.vertices); ++mask) {
        bool ok = true;
        for (auto [u, v] : g.edges)
            if (!(mask >> (u - 1) & 1u) && !(mask >> (v - 1) & 1u)) {
                ok = false;
                break;
            }
        if (ok) best = std::min(best, __builtin_popcount(mask));
    }
    return best;
}

bool is_connected(const Graph& g) {
    if (g.vertices == 0) return true;
    std::vector<int> comp(static_cast<std::size_t>(g.vertices + 1));
    for (int v = 1; v <= g.vertices; ++v) comp[static_cast<std::size_t>(v)] = v;
    auto find = [&](int v) {
        while (comp[static_cast<std::size_t>(v)] != v) v = comp[static_cast<std::size_t>(v)];
        return v;
    };
    for (auto [u, v] : g.edges) comp[static_cast<std::size_t>(find(u))] = find(v);
    int root = find(1);
    for (int v = 2; v <= g.vertices; ++v)
        if (find(v) != root) return false;
    return true;
}

}  // namespace wpw

#pragma once

#include "wpw/assembly.hpp"
#include "wpw/bench.hpp"
#include "wpw/model.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

namespace wpw::testing {

inline Instance tiny(std::uint64_t seed, int n, int k, int horizon, Variant v = Variant::wPwTw, int max_length = 3) {
    GenParams gp;
    gp.kind = "random";
    gp.n = n;
    gp.k = k;
    gp.horizon = horizon;
    gp.seed = seed;
    gp.variant = v;
    gp.max_length = max_length;
    return generate(gp);
}

// Distinct deadlines, so normalizing keeps the horizon.
inline Instance tiny_normalized(std::uint64_t seed, int n, int k, int horizon, Variant v = Variant::wPwTw) {
    GenParams gp;
    gp.n = n;
    gp.k = k;
    gp.horizon = horizon;
    gp.seed = seed;
    gp.variant = v;
    gp.distinct_deadlines = true;
    return normalize_timeline(generate(gp)).instance;
}

inline Request hard(int id, int page, int s, int e) { return {id, page, s, e, Penalty::hard()}; }
inline Request soft(int id, int page, int s, int e, Rat pen) { return {id, page, s, e, Penalty::finite(pen)}; }

inline Instance make(int n, int k, int horizon, std::vector<Rat> w, std::vector<Request> reqs,
                     Variant v = Variant::wPwTw) {
    Instance inst;
    inst.variant = v;
    inst.n = n;
    inst.k = k;
    inst.horizon = horizon;
    inst.weights = std::move(w);
    inst.requests = std::move(reqs);
    return inst;
}


struct ExtensionCase {
    Rat wA{0}, wB{0};
    bool superset = true;
    bool covers = true;  // P(B,t) contains P(A,phi(t)) at every non-net time
};

// Random normalized instance, its critical times as T, and a random A.
inline ExtensionCase fuzz_extension(std::uint64_t seed) {
    std::mt19937_64 g(seed);
    int n = 2 + static_cast<int>(g() % 4);
    int k = 1 + static_cast<int>(g() % 2);
    int h = 5 + static_cast<int>(g() % 8);
    auto inst = tiny_normalized(seed * 7919 + 1, n, k, h, g() % 2 ? Variant::wPwTwP : Variant::wPwTw);
    auto kp = build_all_kp(inst);
    auto dt = build_dtable(inst, kp);
    auto crit = critical_index(inst);
    std::vector<int> T;
    std::vector<std::pair<int, TimeInterval>> stream;
    for (int t = 0; t <= inst.horizon; ++t) {
        if (crit[static_cast<std::size_t>(t)] < 0) continue;
        T.push_back(t);
        stream.emplace_back(t, interval_of(inst.requests[static_cast<std::size_t>(crit[static_cast<std::size_t>(t)])]));
    }
    auto net = build_net(stream);
    std::set<Star> A;
    int count = static_cast<int>(g() % static_cast<std::uint64_t>(2 * inst.n + 1));
    for (int i = 0; i < count; ++i)
        A.insert({static_cast<int>(g() % static_cast<std::uint64_t>(inst.n)),
                  static_cast<int>(g() % static_cast<std::uint64_t>(inst.horizon + 1))});
    auto B = extend_stars(T, net, A, dt);
    ExtensionCase c;
    for (const auto& s : A) c.wA += inst.weight(s.page);
    for (const auto& s : B) c.wB += inst.weight(s.page);
    c.superset = std::includes(B.begin(), B.end(), A.begin(), A.end());
    for (const auto& [t, phi] : net.phi) {
        auto want = pages_hit(A, dt, phi);
        auto have = pages_hit(B, dt, t);
        if (!std::includes(have.begin(), have.end(), want.begin(), want.end())) c.covers = false;
    }
    return c;
}

}  // namespace wpw::testing

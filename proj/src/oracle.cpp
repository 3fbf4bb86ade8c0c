#include "wpw/oracle.hpp"

#include "wpw/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace wpw {

namespace {

std::size_t ix(int v) { return static_cast<std::size_t>(v); }

// Common denominator so the searches run on integers.
struct Scale {
    std::int64_t L = 1;
    void add(const Rat& r) { L = std::lcm(L, r.denominator()); }
    std::int64_t of(const Rat& r) const { return r.numerator() * (L / r.denominator()); }
    Rat back(std::int64_t v) const { return Rat(v, L); }
};

Scale scale_for(const Instance& inst) {
    Scale s;
    for (const auto& w : inst.weights) s.add(w);
    for (const auto& r : inst.requests)
        if (!r.penalty.is_hard()) s.add(r.penalty.value());
    for (const auto& d : inst.delays)
        for (const auto& [t, v] : d.loss) s.add(v);
    return s;
}

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

struct Key {
    std::uint32_t S;
    std::uint64_t m;
    bool operator==(const Key&) const = default;
};
struct KeyHash {
    std::size_t operator()(const Key& k) const { return std::hash<std::uint64_t>()(k.m * 1000003ULL ^ k.S); }
};
struct Node {
    std::int64_t cost;
    Key parent;
    std::uint32_t final_set;
    std::uint32_t transient;
};

}  // namespace

OracleResult optimal_schedule(const Instance& inst, const OracleOptions& opt) {
    inst.validate();
    if (inst.n > opt.max_n || inst.k > opt.max_k || inst.horizon > opt.max_horizon)
        throw BudgetExceeded("instance outside the exact-oracle guard");
    const int R = static_cast<int>(inst.requests.size());
    const int D = static_cast<int>(inst.delays.size());
    if (R + D > 64 || inst.n > 31) throw BudgetExceeded("too many requests for the state mask");
    Scale sc = scale_for(inst);
    std::vector<std::int64_t> w(ix(inst.n));
    for (int p = 0; p < inst.n; ++p) w[ix(p)] = sc.of(inst.weight(p));
    auto wsum = [&](std::uint32_t m) {
        std::int64_t s = 0;
        for (int p = 0; p < inst.n; ++p)
            if (m >> p & 1U) s += w[ix(p)];
        return s;
    };
    std::vector<std::uint32_t> finals;
    for (std::uint32_t m = 0; m < (1U << inst.n); ++m)
        if (std::popcount(m) <= inst.k) finals.push_back(m);

    std::vector<std::unordered_map<Key, Node, KeyHash>> layers(ix(inst.horizon + 2));
    layers[0][{0, 0}] = {0, {0, 0}, 0, 0};
    for (int t = 0; t <= inst.horizon; ++t) {
        auto& cur = layers[ix(t)];
        auto& nxt = layers[ix(t + 1)];
        for (const auto& [key, node] : cur) {
            // pages with something to serve right now
            std::uint32_t need = 0;
            for (int j = 0; j < R; ++j) {
                const Request& r = inst.requests[ix(j)];
                if (r.contains_time(t) && !(key.m >> j & 1ULL)) need |= 1U << r.page;
            }
            for (int d = 0; d < D; ++d) {
                const DelayRequest& q = inst.delays[ix(d)];
                if (q.arrival <= t && !(key.m >> (R + d) & 1ULL)) need |= 1U << q.page;
            }
            for (std::uint32_t F : finals) {
                std::uint32_t base = key.S | F;
                std::uint32_t avail = need & ~base;
                bool allow_x = std::popcount(key.S & F) <= inst.k - 1;
                std::int64_t evict_cost = node.cost + wsum(key.S & ~F);
                for (std::uint32_t X = avail;; X = (X - 1) & avail) {
                    if (X == 0 || allow_x) {
                        std::uint32_t res = base | X;
                        std::int64_t c = evict_cost + wsum(X);
                        std::uint64_t m = 0;
                        bool ok = true;
                        for (int j = 0; j < R && ok; ++j) {
                            const Request& r = inst.requests[ix(j)];
                            if (!r.contains_time(t)) continue;
                            bool s = (key.m >> j & 1ULL) || (res >> r.page & 1U);
                            if (r.deadline == t) {
                                if (!s) {
                                    if (r.penalty.is_hard()) ok = false;
                                    else c += sc.of(r.penalty.value());
                                }
                            } else if (s) {
                                m |= 1ULL << j;
                            }
                        }
                        if (ok) {
                            for (int d = 0; d < D; ++d) {
                                const DelayRequest& q = inst.delays[ix(d)];
                                if (q.arrival > t) continue;
                                bool served = key.m >> (R + d) & 1ULL;
                                if (!served && (res >> q.page & 1U)) {
                                    served = true;
                                    c += sc.of(q.loss_at(t));
                                }
                                if (served) m |= 1ULL << (R + d);
                            }
                            Key nk{F, m};
                            auto it = nxt.find(nk);
                            if (it == nxt.end() || c < it->second.cost) nxt[nk] = {c, key, F, X};
                        }
                    }
                    if (X == 0) break;
                }
            }
        }
        if (static_cast<double>(nxt.size()) > opt.max_states) throw BudgetExceeded("oracle state budget exceeded");
    }
    std::int64_t best = kInf;
    Key bk{0, 0};
    for (const auto& [key, node] : layers[ix(inst.horizon + 1)]) {
        std::int64_t c = node.cost;
        for (int d = 0; d < D; ++d)
            if (!(key.m >> (R + d) & 1ULL)) c += sc.of(inst.delays[ix(d)].loss_at(inst.horizon + 1));
        if (c < best) {
            best = c;
            bk = key;
        }
    }
    if (best >= kInf) throw InfeasibleSchedule("no feasible schedule");
    std::vector<Node> path(ix(inst.horizon + 1));
    Key k = bk;
    for (int t = inst.horizon; t >= 0; --t) {
        const Node& nd = layers[ix(t + 1)].at(k);
        path[ix(t)] = nd;
        k = nd.parent;
    }
    ScheduleBuilder b;
    std::uint32_t S = 0;
    for (int t = 0; t <= inst.horizon; ++t) {
        std::uint32_t F = path[ix(t)].final_set, X = path[ix(t)].transient;
        for (int p = 0; p < inst.n; ++p)
            if ((S >> p & 1U) && !(F >> p & 1U)) b.evict(t, p);
        for (int p = 0; p < inst.n; ++p)
            if (X >> p & 1U) b.serve_transient(t, p);
        for (int p = 0; p < inst.n; ++p)
            if ((F >> p & 1U) && !(S >> p & 1U)) b.load(t, p);
        S = F;
    }
    return {b.take(), sc.back(best)};
}

Rat optimal_schedule_slow(const Instance& inst) {
    inst.validate();
    if (inst.horizon > 4 || inst.n > 3) throw BudgetExceeded("slow oracle is limited to horizon 4 and 3 pages");
    const std::uint32_t all = (1U << inst.n) - 1;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> steps(ix(inst.horizon + 1));
    std::optional<Rat> best;
    std::function<void(int, std::uint32_t, Rat)> rec = [&](int t, std::uint32_t S, Rat evicted) {
        if (best && evicted > *best) return;
        if (t > inst.horizon) {
            ScheduleBuilder b;
            std::uint32_t cur = 0;
            for (int u = 0; u <= inst.horizon; ++u) {
                auto [F, X] = steps[ix(u)];
                for (int p = 0; p < inst.n; ++p)
                    if ((cur >> p & 1U) && !(F >> p & 1U)) b.evict(u, p);
                for (int p = 0; p < inst.n; ++p)
                    if (X >> p & 1U) b.serve_transient(u, p);
                for (int p = 0; p < inst.n; ++p)
                    if ((F >> p & 1U) && !(cur >> p & 1U)) b.load(u, p);
                cur = F;
            }
            Schedule s = b.take();
            if (!check_feasibility(inst, s).feasible) return;
            Rat c = evaluate_cost(inst, s).total;
            if (!best || c < *best) best = c;
            return;
        }
        for (std::uint32_t F = 0; F <= all; ++F) {
            if (std::popcount(F) > inst.k) continue;
            std::uint32_t avail = all & ~(S | F);
            for (std::uint32_t X = avail;; X = (X - 1) & avail) {
                if (X == 0 || std::popcount(S & F) <= inst.k - 1) {
                    Rat e = evicted;
                    for (int p = 0; p < inst.n; ++p)
                        if (((S & ~F) | X) >> p & 1U) e += inst.weight(p);
                    steps[ix(t)] = {F, X};
                    rec(t + 1, F, e);
                }
                if (X == 0) break;
            }
        }
    };
    rec(0, 0, Rat(0));
    if (!best) throw InfeasibleSchedule("no feasible schedule");
    return *best;
}

IpOracleResult optimal_ip(const Instance& inst, const IpOracleOptions& opt) {
    inst.validate();
    if (inst.n > opt.max_n || inst.horizon > opt.max_horizon) throw BudgetExceeded("instance outside the IP-oracle guard");
    if (!is_normalized(inst)) throw PreconditionViolated("optimal_ip needs a normalized instance");
    const int H = inst.horizon + 1;
    const int nx = inst.n * H;
    const int nv = nx + static_cast<int>(inst.requests.size());
    if (nv > 64) throw BudgetExceeded("too many IP variables");
    Scale sc = scale_for(inst);
    std::vector<std::int64_t> cost(ix(nv), kInf);
    for (int p = 0; p < inst.n; ++p)
        for (int u = 0; u < H; ++u) cost[ix(p * H + u)] = sc.of(inst.weight(p));
    for (std::size_t j = 0; j < inst.requests.size(); ++j)
        if (!inst.requests[j].penalty.is_hard()) cost[ix(nx) + j] = sc.of(inst.requests[j].penalty.value());
    auto cover_mask = [&](std::size_t j, const TimeInterval& iv) {
        std::uint64_t m = 0;
        int p = inst.requests[j].page;
        for (int u = iv.start; u <= iv.end; ++u) m |= 1ULL << (p * H + u);
        if (!inst.requests[j].penalty.is_hard()) m |= 1ULL << (nx + static_cast<int>(j));
        return m;
    };

    std::vector<std::uint64_t> clauses;
    auto crit = critical_index(inst);
    std::vector<std::vector<std::uint64_t>> groups;
    std::function<void(std::size_t, int, std::uint64_t)> combos = [&](std::size_t g, int left, std::uint64_t acc) {
        if (left == 0) {
            clauses.push_back(acc);
            return;
        }
        if (groups.size() - g < static_cast<std::size_t>(left)) return;
        for (std::uint64_t m : groups[g]) combos(g + 1, left - 1, acc | m);
        combos(g + 1, left, acc);
    };
    for (int t = 0; t < H; ++t) {
        groups.assign(ix(inst.n), {});
        for (std::size_t j = 0; j < inst.requests.size(); ++j) {
            const Request& r = inst.requests[j];
            if (r.start <= t) groups[ix(r.page)].push_back(cover_mask(j, right_extension(interval_of(r), t)));
        }
        combos(0, inst.k + 1, 0);
        int c = crit[ix(t)];
        if (c < 0) continue;
        const Request& It = inst.requests[ix(c)];
        std::uint64_t yt = It.penalty.is_hard() ? 0 : 1ULL << (nx + c);
        groups.assign(ix(inst.n), {});
        for (std::size_t j = 0; j < inst.requests.size(); ++j) {
            const Request& r = inst.requests[j];
            if (r.page != It.page && r.deadline <= t)
                groups[ix(r.page)].push_back(cover_mask(j, double_extension(interval_of(r), interval_of(It), t)));
        }
        combos(0, inst.k, yt);
    }
    std::sort(clauses.begin(), clauses.end(), [](std::uint64_t a, std::uint64_t b) {
        return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b;
    });
    clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
    std::vector<std::uint64_t> kept;
    for (std::uint64_t c : clauses) {
        bool dom = false;
        for (std::uint64_t k : kept)
            if ((k & c) == k) {
                dom = true;
                break;
            }
        if (!dom) kept.push_back(c);
    }
    for (std::uint64_t c : kept)
        if (c == 0) throw InfeasibleSchedule("IP has an unsatisfiable constraint");

    std::int64_t best = kInf;
    std::uint64_t best_set = 0;
    double nodes = 0;
    std::function<void(std::uint64_t, std::uint64_t, std::int64_t)> dfs = [&](std::uint64_t set, std::uint64_t banned,
                                                                              std::int64_t c) {
        if (++nodes > opt.max_nodes) throw BudgetExceeded("IP-oracle node budget exceeded");
        std::uint64_t pick = 0;
        int pick_n = 65;
        std::int64_t lb = 0;
        for (std::uint64_t cl : kept) {
            if (cl & set) continue;
            std::uint64_t a = cl & ~banned;
            if (a == 0) return;
            std::int64_t cheapest = kInf;
            for (std::uint64_t b = a; b; b &= b - 1) cheapest = std::min(cheapest, cost[ix(std::countr_zero(b))]);
            lb = std::max(lb, cheapest);
            if (std::popcount(a) < pick_n) {
                pick_n = std::popcount(a);
                pick = a;
            }
        }
        if (pick == 0) {
            if (c < best) {
                best = c;
                best_set = set;
            }
            return;
        }
        if (c + lb >= best) return;
        std::vector<int> vars;
        for (std::uint64_t b = pick; b; b &= b - 1) vars.push_back(std::countr_zero(b));
        std::sort(vars.begin(), vars.end(), [&](int a, int b) { return cost[ix(a)] < cost[ix(b)]; });
        std::uint64_t ban = banned;
        for (int v : vars) {
            dfs(set | (1ULL << v), ban, c + cost[ix(v)]);
            ban |= 1ULL << v;
        }
    };
    dfs(0, 0, 0);
    IpOracleResult res;
    for (int v = 0; v < nv; ++v) {
        if (!(best_set >> v & 1ULL)) continue;
        if (v < nx) res.solution.stars.insert({v / H, v % H});
        else res.solution.penalties.insert(inst.requests[ix(v - nx)].id);
    }
    res.cost = sc.back(best);
    return res;
}

Rat optimal_compact_ip(const Instance& inst) {
    inst.validate();
    if (!is_normalized(inst)) throw PreconditionViolated("compact IP needs a normalized instance");
    const int need_total = inst.n - inst.k;
    if (need_total <= 0) return Rat(0);
    Scale sc = scale_for(inst);
    auto kp = build_all_kp(inst);
    auto crit = critical_index(inst);
    std::vector<int> times;
    std::vector<std::vector<TimeInterval>> D;
    for (int t = 0; t <= inst.horizon; ++t) {
        if (crit[ix(t)] < 0) continue;
        times.push_back(t);
        std::vector<TimeInterval> row;
        for (int p = 0; p < inst.n; ++p) row.push_back(tau_and_D(kp[ix(p)], interval_of(inst.requests[ix(crit[ix(t)])])).D);
        D.push_back(std::move(row));
    }
    std::vector<std::int64_t> w(ix(inst.n));
    for (int p = 0; p < inst.n; ++p) w[ix(p)] = sc.of(inst.weight(p));
    std::vector<std::vector<int>> stars(ix(inst.n));  // times, increasing
    std::int64_t best = kInf;
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t c) {
        if (c >= best) return;
        if (i == times.size()) {
            best = c;
            return;
        }
        int t = times[i];
        const Request& It = inst.requests[ix(crit[ix(t)])];
        std::vector<int> open;
        int have = 0;
        for (int p = 0; p < inst.n; ++p) {
            if (p == It.page) continue;
            const auto& iv = D[i][ix(p)];
            bool hit = std::any_of(stars[ix(p)].begin(), stars[ix(p)].end(), [&](int u) { return iv.contains(u); });
            if (hit) ++have;
            else open.push_back(p);
        }
        int need = need_total - have;
        if (need <= 0) {
            rec(i + 1, c);
            return;
        }
        if (!It.penalty.is_hard()) rec(i + 1, c + sc.of(It.penalty.value()));
        if (static_cast<int>(open.size()) < need) return;
        std::vector<int> pick;
        std::function<void(std::size_t, std::int64_t)> choose = [&](std::size_t s, std::int64_t cc) {
            if (static_cast<int>(pick.size()) == need) {
                for (int p : pick) stars[ix(p)].push_back(t);
                rec(i + 1, cc);
                for (int p : pick) stars[ix(p)].pop_back();
                return;
            }
            if (open.size() - s < static_cast<std::size_t>(need) - pick.size() || cc >= best) return;
            pick.push_back(open[s]);
            choose(s + 1, cc + w[ix(open[s])]);
            pick.pop_back();
            choose(s + 1, cc);
        };
        choose(0, c);
    };
    rec(0, 0);
    return sc.back(best);
}

}  // namespace wpw

#include "wpw/bench.hpp"

#include "wpw/cover.hpp"
#include "wpw/errors.hpp"
#include "wpw/rounding.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <sstream>

namespace wpw {

namespace {

std::size_t ix(int v) { return static_cast<std::size_t>(v); }

int uniform(std::mt19937_64& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }

void require(bool ok, const std::string& what) {
    if (!ok) throw BadParams(what);
}

Instance gen_random(const GenParams& gp) {
    require(gp.n >= 1 && gp.k >= 1 && gp.horizon >= 0, "random needs n >= 1, k >= 1, horizon >= 0");
    require(gp.max_weight >= 1 && gp.max_length >= 0, "random needs max_weight >= 1, max_length >= 0");
    std::mt19937_64 g(gp.seed);
    Instance inst;
    inst.variant = gp.variant;
    inst.n = gp.n;
    inst.k = gp.k;
    inst.horizon = gp.horizon;
    for (int p = 0; p < gp.n; ++p) inst.weights.push_back(Rat(uniform(g, 1, gp.max_weight)));
    int count = uniform(g, 1, gp.horizon + 1);
    if (gp.variant == Variant::wPwD) {
        for (int i = 0; i < count; ++i) {
            DelayRequest d;
            d.id = i;
            d.page = uniform(g, 0, gp.n - 1);
            d.arrival = uniform(g, 0, gp.horizon);
            int at = d.arrival, v = 0;
            int steps = uniform(g, 1, 3);
            for (int s = 0; s < steps; ++s) {
                at += uniform(g, 1, 2);
                v += uniform(g, 1, gp.max_weight);
                d.loss.emplace_back(at, Rat(v));
            }
            inst.delays.push_back(std::move(d));
        }
        return inst;
    }
    std::vector<int> deadlines;
    if (gp.distinct_deadlines) {
        std::vector<int> all(ix(gp.horizon + 1));
        for (int t = 0; t <= gp.horizon; ++t) all[ix(t)] = t;
        std::shuffle(all.begin(), all.end(), g);
        deadlines.assign(all.begin(), all.begin() + count);
    } else {
        for (int i = 0; i < count; ++i) deadlines.push_back(uniform(g, 0, gp.horizon));
    }
    std::sort(deadlines.begin(), deadlines.end());
    for (int i = 0; i < count; ++i) {
        Request r;
        r.id = i;
        r.page = uniform(g, 0, gp.n - 1);
        r.deadline = deadlines[ix(i)];
        r.start = std::max(0, r.deadline - uniform(g, 0, gp.max_length));
        if (gp.variant == Variant::wPwTwP && uniform(g, 0, 1) == 1)
            r.penalty = Penalty::finite(Rat(uniform(g, 1, 2 * gp.max_weight)));
        inst.requests.push_back(r);
    }
    return inst;
}

Instance gen_endpoints(const GenParams& gp) {
    require(gp.n >= 1 && gp.W > 0, "endpoints needs n >= 1 and W > 0");
    Instance inst;
    inst.n = gp.n + 1;
    inst.k = 1;
    inst.horizon = 2 * gp.n;
    inst.weights.push_back(gp.W);
    for (int i = 0; i < gp.n; ++i) inst.weights.push_back(Rat(1));
    int id = 0;
    for (int t = 0; t <= inst.horizon; ++t) inst.requests.push_back({id++, 0, t, t, Penalty::hard()});
    for (int i = 0; i < gp.n; ++i) inst.requests.push_back({id++, i + 1, i, gp.n + i, Penalty::hard()});
    std::sort(inst.requests.begin(), inst.requests.end(), [](const Request& a, const Request& b) {
        return std::pair(a.deadline, a.id) < std::pair(b.deadline, b.id);
    });
    return inst;
}

int gap_T(int k, int T) { return T > 0 ? T : 4 * k * k * k; }
int gap_N(int k, int N) { return N > 0 ? N : (k + 1) * k; }

Instance gen_gap(const GenParams& gp) {
    const int k = gp.k, T = gap_T(k, gp.T), N = gap_N(k, gp.N);
    require(k >= 2 && T >= 1, "gap needs k >= 2 and T >= 1");
    require(N >= (k + 1) * k, "gap needs N >= (k+1)k so the unit slots fit");
    Instance inst;
    inst.n = k + 1;
    inst.k = k;
    inst.horizon = T * k * N;
    for (int q = 0; q < k; ++q) inst.weights.push_back(Rat(k));
    inst.weights.push_back(Rat(1));
    int id = 0;
    for (int i = 0; i < T; ++i)
        for (int p = 0; p <= k; ++p) inst.requests.push_back({id++, p, i * k * N, (i + 1) * k * N, Penalty::hard()});
    return inst;
}

Instance gen_classical(const GenParams& gp) {
    require(gp.n >= 1 && gp.k >= 1 && gp.horizon >= 0 && gp.max_weight >= 1, "classical-paging needs n, k >= 1");
    std::mt19937_64 g(gp.seed);
    Instance inst;
    inst.n = gp.n;
    inst.k = gp.k;
    inst.horizon = gp.horizon;
    for (int p = 0; p < gp.n; ++p) inst.weights.push_back(Rat(uniform(g, 1, gp.max_weight)));
    for (int t = 0; t <= gp.horizon; ++t) inst.requests.push_back({t, uniform(g, 0, gp.n - 1), t, t, Penalty::hard()});
    return inst;
}

}  // namespace

Graph random_connected_graph(int vertices, std::uint64_t seed) {
    require(vertices >= 2, "vc needs at least two vertices");
    std::mt19937_64 g(seed);
    for (;;) {
        Graph gr;
        gr.vertices = vertices;
        for (int u = 1; u <= vertices; ++u)
            for (int v = u + 1; v <= vertices; ++v)
                if (uniform(g, 0, 1)) gr.edges.emplace_back(u, v);
        if (!gr.edges.empty() && is_connected(gr)) return gr;
    }
}

Instance generate(const GenParams& gp) {
    Instance inst;
    if (gp.kind == "random") inst = gen_random(gp);
    else if (gp.kind == "endpoints") inst = gen_endpoints(gp);
    else if (gp.kind == "gap") inst = gen_gap(gp);
    else if (gp.kind == "classical-paging") inst = gen_classical(gp);
    else if (gp.kind == "vc") inst = vc_to_wpwtw(gp.graph ? *gp.graph : random_connected_graph(gp.n, gp.seed));
    else throw BadParams("unknown kind " + gp.kind);
    inst.validate();
    return inst;
}

GapReport verify_gap_instance(int k, int T, int N) {
    GapReport rep;
    rep.k = k;
    rep.T = T = gap_T(k, T);
    rep.N = N = gap_N(k, N);
    GenParams gp;
    gp.kind = "gap";
    gp.k = k;
    gp.T = T;
    gp.N = N;
    Instance inst = generate(gp);

    struct Piece {
        int page, a, b;
        Rat x;
    };
    std::vector<Piece> sol;
    const Rat k2(k * k), long_x = Rat(1) - Rat(1) / k2;
    for (int q = 0; q < k; ++q) sol.push_back({q, 0, inst.horizon, long_x});
    for (int i = 0; i < T; ++i) {
        int slot = i * k * N;
        for (int p = 0; p <= k; ++p) {
            Rat x = p < k ? Rat(1) / (k2 * k2) : Rat(1) / k2;
            for (int j = 0; j < k * k; ++j, ++slot) sol.push_back({p, slot, slot + 1, x});
        }
    }

    std::vector<Rat> load(ix(inst.horizon + 2), Rat(0));
    for (const auto& pc : sol) {
        load[ix(pc.a)] += pc.x;
        load[ix(pc.b + 1)] -= pc.x;
    }
    Rat run(0);
    for (int t = 0; t <= inst.horizon; ++t) {
        run += load[ix(t)];
        if (run > Rat(k)) throw ConstructionInfeasible("packing row fails at time " + std::to_string(t));
        ++rep.packing_rows;
    }
    std::vector<std::vector<const Piece*>> by_page(ix(inst.n));
    for (const auto& pc : sol) by_page[ix(pc.page)].push_back(&pc);
    for (const auto& r : inst.requests) {
        Rat lhs(0);
        for (const Piece* pc : by_page[ix(r.page)])
            if (pc->a <= r.deadline && r.start <= pc->b) lhs += pc->x;
        if (lhs < Rat(1)) throw ConstructionInfeasible("covering row fails for request " + std::to_string(r.id));
        ++rep.covering_rows;
    }
    for (const auto& pc : sol) {
        rep.fractional_cost += inst.weight(pc.page) * pc.x;
        if (pc.page == 0) rep.per_heavy_cost += inst.weight(0) * pc.x;
    }
    // Each block E_{4i}..E_{4i+4} forces a heavy load; the first k loads are free.
    int blocks = (T - 1) / 4;
    rep.integral_lb = Rat(k) * Rat(std::max(0, blocks - k));
    rep.ratio = to_double(rep.integral_lb) / to_double(rep.fractional_cost);
    return rep;
}

Schedule endpoint_only_schedule(const Instance& inst) {
    inst.validate();
    ScheduleBuilder b;
    std::set<int> cache;
    std::vector<char> sat(inst.requests.size(), 0);
    for (int t = 0; t <= inst.horizon; ++t) {
        std::set<int> touched = cache;
        std::vector<std::size_t> due;
        for (std::size_t j = 0; j < inst.requests.size(); ++j)
            if (inst.requests[j].deadline == t && !sat[j]) due.push_back(j);
        std::sort(due.begin(), due.end(), [&](std::size_t a, std::size_t c) {
            return inst.requests[a].id < inst.requests[c].id;
        });
        for (std::size_t j : due) {
            int p = inst.requests[j].page;
            if (touched.count(p)) continue;
            if (static_cast<int>(cache.size()) >= inst.k) {
                int v = *std::min_element(cache.begin(), cache.end(), [&](int x, int y) {
                    return inst.weight(x) != inst.weight(y) ? inst.weight(x) < inst.weight(y) : x < y;
                });
                cache.erase(v);
                b.evict(t, v);
            }
            cache.insert(p);
            touched.insert(p);
            b.load(t, p);
        }
        for (std::size_t j = 0; j < inst.requests.size(); ++j)
            if (inst.requests[j].contains_time(t) && touched.count(inst.requests[j].page)) sat[j] = 1;
    }
    return b.take();
}

Rat classical_cover_cost(const Instance& inst) {
    inst.validate();
    std::vector<int> at(ix(inst.horizon + 1), -1);
    for (const auto& r : inst.requests) {
        if (r.start != r.deadline || !r.penalty.is_hard()) throw PreconditionViolated("classical paging needs point Hard requests");
        if (at[ix(r.start)] >= 0 && at[ix(r.start)] != r.page)
            throw PreconditionViolated("classical paging needs one page per time");
        at[ix(r.start)] = r.page;
    }
    CoverInstance ci;
    ci.n = inst.n;
    ci.horizon = inst.horizon;
    ci.weights = inst.weights;
    ci.requirement.assign(ix(inst.horizon + 1), 0);
    std::vector<std::size_t> gaps;
    std::vector<int> first(ix(inst.n), -1);
    for (int p = 0; p < inst.n; ++p) {
        std::vector<int> times;
        for (int t = 0; t <= inst.horizon; ++t)
            if (at[ix(t)] == p) times.push_back(t);
        int cur = 0;
        auto push = [&](int a, int b, bool gap) {
            if (a > b) return;
            if (gap) gaps.push_back(ci.tiles.size());
            ci.tiles.push_back({p, a, b});
        };
        for (std::size_t i = 0; i < times.size(); ++i) {
            push(cur, times[i] - 1, i > 0);
            push(times[i], times[i], false);
            cur = times[i] + 1;
        }
        push(cur, inst.horizon, !times.empty());
        if (!times.empty()) first[ix(p)] = times.front();
    }
    for (int t = 0; t <= inst.horizon; ++t) {
        int live = 0;
        for (int p = 0; p < inst.n; ++p)
            if (p != at[ix(t)] && first[ix(p)] >= 0 && first[ix(p)] < t) ++live;
        int room = at[ix(t)] >= 0 ? inst.k - 1 : inst.k;
        ci.requirement[ix(t)] = std::max(0, live - room);
    }
    return solve_offline_restricted(ci, gaps).weight;
}

double cost_ratio(const Rat& cost, const Rat& oracle) {
    if (oracle == Rat(0)) return cost == Rat(0) ? 1.0 : std::numeric_limits<double>::infinity();
    return to_double(cost) / to_double(oracle);
}

namespace {

std::string instance_id(const GenParams& gp, std::size_t idx) {
    std::ostringstream s;
    s << gp.kind << '-' << idx << "-s" << gp.seed;
    return s.str();
}

void run_cell(const ExperimentConfig& cfg, std::size_t idx, std::vector<ExperimentRow>& out) {
    const GenParams& gp = cfg.instances[idx];
    ExperimentRow base;
    base.instance_id = instance_id(gp, idx);
    base.kind = gp.kind;
    base.seed = gp.seed;
    Instance inst;
    try {
        inst = generate(gp);
    } catch (const std::exception& e) {
        for (const auto& a : cfg.algorithms) {
            ExperimentRow r = base;
            r.algorithm = a;
            r.error = e.what();
            out.push_back(r);
        }
        return;
    }
    base.n = inst.n;
    base.k = inst.k;
    base.T = inst.horizon;
    bool budget = false;
    if (cfg.with_oracle) {
        try {
            base.oracle_cost = optimal_schedule(inst, cfg.oracle).cost;
        } catch (const BudgetExceeded&) {
            budget = true;
        }
    }
    if (cfg.with_ip_lb && inst.variant != Variant::wPwD) {
        try {
            Normalized nz = normalize_timeline(inst);
            base.ip_lb = optimal_ip(nz.instance).cost;
        } catch (const BudgetExceeded&) {
        }
    }
    for (const auto& alg : cfg.algorithms) {
        ExperimentRow r = base;
        r.algorithm = alg;
        r.budget_exceeded = budget;
        auto t0 = std::chrono::steady_clock::now();
        try {
            Schedule s;
            if (alg == "offline") s = run_offline_pipeline(inst).schedule;
            else if (alg == "online") s = run_online_pipeline(inst, cfg.online).schedule;
            else if (alg == "online-nonoverlap") s = run_online_pipeline(inst, cfg.online, true).schedule;
            else if (alg == "endpoint-only") s = endpoint_only_schedule(inst);
            else if (alg == "oracle") s = optimal_schedule(inst, cfg.oracle).schedule;
            else if (alg != "cover-baseline") throw BadParams("unknown algorithm " + alg);
            if (alg == "cover-baseline") {
                r.cost = classical_cover_cost(inst);
                r.feasible = true;
            } else {
                r.feasible = check_feasibility(inst, s).feasible;
                if (r.feasible) r.cost = evaluate_cost(inst, s).total;
            }
        } catch (const BudgetExceeded& e) {
            r.budget_exceeded = true;
            r.error = e.what();
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        auto t1 = std::chrono::steady_clock::now();
        if (cfg.timing) r.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (r.cost && r.oracle_cost) r.ratio = cost_ratio(*r.cost, *r.oracle_cost);
        out.push_back(r);
    }
}

}  // namespace

std::vector<ExperimentRow> run_experiment_serial(const ExperimentConfig& cfg) {
    std::vector<ExperimentRow> rows;
    for (std::size_t i = 0; i < cfg.instances.size(); ++i) run_cell(cfg, i, rows);
    return rows;
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg) {
    const auto m = static_cast<std::int64_t>(cfg.instances.size());
    std::vector<std::vector<ExperimentRow>> cells(cfg.instances.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < m; ++i) run_cell(cfg, static_cast<std::size_t>(i), cells[static_cast<std::size_t>(i)]);
    std::vector<ExperimentRow> rows;
    for (auto& c : cells) rows.insert(rows.end(), c.begin(), c.end());
    return rows;
}

std::string rows_to_csv(const std::vector<ExperimentRow>& rows) {
    std::ostringstream s;
    s << "instance_id,kind,n,k,T,algorithm,seed,cost,oracle_cost,ip_lb,ratio,runtime_ms\n";
    auto rat = [](const std::optional<Rat>& r) {
        if (!r) return std::string();
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", to_double(*r));
        return std::string(buf);
    };
    for (const auto& r : rows) {
        std::string cost = r.cost ? rat(r.cost) : (r.budget_exceeded ? "budget" : (r.error.empty() ? "infeasible" : "error"));
        char ratio[64] = "";
        if (r.ratio) std::snprintf(ratio, sizeof ratio, "%.6f", *r.ratio);
        char ms[64];
        std::snprintf(ms, sizeof ms, "%.3f", r.runtime_ms);
        s << r.instance_id << ',' << r.kind << ',' << r.n << ',' << r.k << ',' << r.T << ',' << r.algorithm << ','
          << r.seed << ',' << cost << ',' << rat(r.oracle_cost) << ',' << rat(r.ip_lb) << ',' << ratio << ',' << ms
          << '\n';
    }
    return s.str();
}

}  // namespace wpw

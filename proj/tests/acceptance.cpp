#include "CLI11.hpp"
#include "testing.hpp"

#include "wpw/bench.hpp"
#include "wpw/cover.hpp"
#include "wpw/ip.hpp"
#include "wpw/lp.hpp"
#include "wpw/oracle.hpp"
#include "wpw/reductions.hpp"
#include "wpw/rounding.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace wpw;
using namespace wpw::testing;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

// Shared by criteria 1 and 2.
Instance c12_instance(int i) {
    auto seed = static_cast<std::uint64_t>(1000 + i);
    int n = 2 + i % 3;
    int k = 1 + (i / 3) % 2;
    int h = 3 + (i / 6) % 4;
    return tiny_normalized(seed, n, k, h, i % 2 ? Variant::wPwTwP : Variant::wPwTw);
}

Instance e2e_instance(int i) {
    auto seed = static_cast<std::uint64_t>(5000 + i);
    int n = 2 + i % 4;
    int k = 1 + (i / 4) % 2;
    int h = 4 + (i / 8) % 5;
    return tiny(seed, n, k, h, i % 2 ? Variant::wPwTwP : Variant::wPwTw);
}

Outcome ip_validity(int count) {
    int bad = 0, violations = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : bad, violations)
    for (int i = 0; i < count; ++i) {
        auto inst = c12_instance(i);
        auto v = check_ip_constraints(inst, schedule_to_stars(inst, optimal_schedule(inst).schedule));
        if (!v.empty()) ++bad;
        violations += static_cast<int>(v.size());
    }
    return {bad == 0, std::to_string(count - bad) + "/" + std::to_string(count) + " oracle star sets clean, " +
                          std::to_string(violations) + " violations"};
}

Outcome relaxation_ordering(int count) {
    int above = 0, errors = 0;
    double worst = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : above, errors) reduction(max : worst)
    for (int i = 0; i < count; ++i) {
        try {
            auto inst = c12_instance(i);
            Rat ip = optimal_ip(inst).cost, opt = optimal_schedule(inst).cost;
            if (ip > opt) {
                ++above;
                worst = std::max(worst, to_double(ip - opt));
            }
        } catch (const std::exception&) {
            ++errors;
        }
    }
    return {above == 0 && errors == 0, std::to_string(above) + "/" + std::to_string(count) +
                                           " instances with optimal_ip > optimal_schedule (max excess " + fmt(worst) +
                                           "), " + std::to_string(errors) + " exceptions"};
}

Outcome offline_e2e(int count) {
    int infeasible = 0, below = 0;
    double worst = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : infeasible, below) reduction(max : worst)
    for (int i = 0; i < count; ++i) {
        auto inst = e2e_instance(i);
        auto res = run_offline_pipeline(inst);
        if (!res.feasible) {
            ++infeasible;
            continue;
        }
        double r = cost_ratio(res.cost.total, optimal_schedule(inst).cost);
        if (r < 1) ++below;
        worst = std::max(worst, r);
    }
    return {infeasible == 0 && below == 0 && worst <= 50,
            std::to_string(count - infeasible) + "/" + std::to_string(count) + " feasible, " + std::to_string(below) +
                " below optimum, max ratio " + fmt(worst) + " (cap 50)"};
}

struct OnlineTotals {
    int runs = 0;
    int stream_violations = 0;
    int sparsity_breaches = 0;
    int no_candidate = 0;
    int cache_invariant = 0;
    int reentry = 0;
    int edf_overflow = 0;
};

OnlineTotals online_totals;

void record_online(const PipelineResult& r) {
#pragma omp critical(online_totals)
    {
        ++online_totals.runs;
        online_totals.stream_violations += r.conversion.stream_violations;
        online_totals.sparsity_breaches += r.sparsity_breaches;
        online_totals.no_candidate += r.conversion.no_candidate;
        online_totals.cache_invariant += r.conversion.cache_invariant;
        online_totals.reentry += r.conversion.reentry_violations;
        online_totals.edf_overflow += r.conversion.edf_overflow;
    }
}

Outcome online_e2e(int count) {
    int infeasible = 0, over = 0;
    double sum = 0, worst = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : infeasible, over, sum) reduction(max : worst)
    for (int i = 0; i < count; ++i) {
        auto inst = e2e_instance(i);
        OnlineAssembleOptions o;
        o.cover.seed = static_cast<std::uint64_t>(i + 1);
        auto res = run_online_pipeline(inst, o);
        record_online(res);
        if (!res.feasible) {
            ++infeasible;
            continue;
        }
        double r = cost_ratio(res.cost.total, optimal_schedule(inst).cost);
        double cap = 20 * std::log(inst.k + 2.0) * std::log(inst.n + 2.0);
        if (r > cap) ++over;
        sum += r;
        worst = std::max(worst, r);
    }
    double mean = sum / count;
    // The cap depends on (n, k); the loosest per-instance cap is at n = 2, k = 1.
    double cap = 20 * std::log(3.0) * std::log(4.0);
    return {infeasible == 0 && mean <= cap && over == 0,
            std::to_string(count - infeasible) + "/" + std::to_string(count) + " feasible, mean ratio " + fmt(mean) +
                ", max " + fmt(worst) + ", " + std::to_string(over) + " above 20 ln(k+2) ln(n+2)"};
}

Outcome extension(int count) {
    int heavy = 0, not_superset = 0, uncovered = 0;
    double worst = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : heavy, not_superset, uncovered) reduction(max : worst)
    for (int i = 0; i < count; ++i) {
        auto c = fuzz_extension(static_cast<std::uint64_t>(i + 1));
        if (c.wB > Rat(3) * c.wA) ++heavy;
        if (!c.superset) ++not_superset;
        if (!c.covers) ++uncovered;
        if (c.wA > Rat(0)) worst = std::max(worst, to_double(c.wB / c.wA));
    }
    return {heavy + not_superset + uncovered == 0,
            std::to_string(count) + " cases, " + std::to_string(heavy) + " over 3w(A), " + std::to_string(not_superset) +
                " not supersets, " + std::to_string(uncovered) + " coverage misses, max w(B)/w(A) " + fmt(worst)};
}

Outcome lp_bound(int count) {
    int over = 0, infeasible = 0;
    double worst = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : over, infeasible) reduction(max : worst)
    for (int i = 0; i < count; ++i) {
        int k = 1 + i % 2;
        auto inst = tiny_normalized(static_cast<std::uint64_t>(9000 + i), 4, k, 5, Variant::wPwTwP);
        LpSolver lp(inst);
        const int R = inst.n - inst.k;
        for (int t = 0; t <= inst.horizon; ++t) {
            lp.process(t);
            if (lp.critical(t) >= 0 && R > 0 && lp.constraint_lhs(t) < R - 1e-6) ++infeasible;
        }
        double opt = to_double(optimal_compact_ip(inst));
        double cap = 3 * std::log(k + 2.0) * opt;
        if (lp.fractional_cost() > cap + 1e-6) ++over;
        if (opt > 0) worst = std::max(worst, lp.fractional_cost() / opt);
    }
    return {over == 0 && infeasible == 0, std::to_string(count) + " instances, " + std::to_string(over) +
                                              " above 3 ln(k+2) OPT, " + std::to_string(infeasible) +
                                              " infeasible rows, max LP/OPT " + fmt(worst)};
}

CoverInstance random_cover(std::mt19937_64& g, int pages, int horizon, bool excl) {
    CoverInstance ci;
    ci.n = pages;
    ci.horizon = horizon;
    for (int p = 0; p < pages; ++p) {
        ci.weights.push_back(Rat(1 + static_cast<int>(g() % 5)));
        std::vector<int> b{0};
        for (int t = 1; t <= horizon; ++t)
            if (g() % 3 == 0) b.push_back(t);
        auto ts = tiles_from_boundaries(p, b, horizon);
        ci.tiles.insert(ci.tiles.end(), ts.begin(), ts.end());
    }
    int cap = excl ? pages - 1 : pages;
    for (int t = 0; t <= horizon; ++t) {
        ci.requirement.push_back(static_cast<int>(g() % static_cast<std::uint64_t>(cap + 1)));
        if (excl) ci.excluded.push_back(static_cast<int>(g() % static_cast<std::uint64_t>(pages)));
    }
    return ci;
}

Outcome cover_integrality(int count) {
    int mismatch = 0, excl_over = 0;
    double worst = 1;
#pragma omp parallel for schedule(dynamic) reduction(+ : mismatch, excl_over) reduction(max : worst)
    for (int i = 0; i < count; ++i) {
        std::mt19937_64 g(static_cast<std::uint64_t>(i + 1));
        int pages = 1 + static_cast<int>(g() % 5);
        int h = static_cast<int>(g() % 11);
        auto ci = random_cover(g, pages, h, false);
        if (solve_offline(ci).weight != solve_exhaustive(ci).weight) ++mismatch;
        if (pages >= 2) {
            auto ce = random_cover(g, pages, h, true);
            Rat a = solve_offline_excl(ce).weight, b = solve_exhaustive(ce).weight;
            if (a > Rat(2) * b) ++excl_over;
            if (b > Rat(0)) worst = std::max(worst, to_double(a / b));
        }
    }
    return {mismatch == 0 && excl_over == 0, std::to_string(count) + " instances, " + std::to_string(mismatch) +
                                                  " offline/exhaustive mismatches, " + std::to_string(excl_over) +
                                                  " exclusion covers above 2x, max excl ratio " + fmt(worst)};
}

Outcome delay_reduction(int count) {
    int mismatch = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : mismatch)
    for (int i = 0; i < count; ++i) {
        GenParams gp;
        gp.n = 2 + i % 2;
        gp.k = 1 + (i / 2) % 2;
        gp.horizon = 4 + i % 3;
        gp.seed = static_cast<std::uint64_t>(7000 + i);
        gp.variant = Variant::wPwD;
        auto inst = generate(gp);
        if (optimal_schedule(inst).cost != optimal_schedule(delay_to_penalties(inst).instance).cost) ++mismatch;
    }
    return {mismatch == 0, std::to_string(count - mismatch) + "/" + std::to_string(count) + " exact matches"};
}

std::vector<Graph> connected_graphs(int max_vertices) {
    std::vector<Graph> out;
    for (int v = 2; v <= max_vertices; ++v) {
        std::vector<std::pair<int, int>> all;
        for (int a = 1; a <= v; ++a)
            for (int b = a + 1; b <= v; ++b) all.emplace_back(a, b);
        for (std::uint32_t mask = 1; mask < (1u << all.size()); ++mask) {
            Graph g;
            g.vertices = v;
            for (std::size_t e = 0; e < all.size(); ++e)
                if (mask >> e & 1u) g.edges.push_back(all[e]);
            if (is_connected(g)) out.push_back(g);
        }
    }
    return out;
}

Outcome vc_bounds() {
    auto graphs = connected_graphs(5);
    const int count = static_cast<int>(graphs.size());
    int below = 0, above = 0;
    double worst_gap = 0;
    OracleOptions o;
    o.max_n = 16;
#pragma omp parallel for schedule(dynamic) reduction(+ : below, above) reduction(max : worst_gap)
    for (int i = 0; i < count; ++i) {
        const Graph& g = graphs[static_cast<std::size_t>(i)];
        Rat lo(static_cast<std::int64_t>(2 * g.edges.size()) + min_vertex_cover(g));
        Rat c = optimal_schedule(vc_to_wpwtw(g), o).cost;
        if (c < lo) {
            ++below;
            worst_gap = std::max(worst_gap, to_double(lo - c));
        }
        if (c > lo + Rat(1)) ++above;
    }
    return {below == 0 && above == 0, std::to_string(count) + " labelled graphs, " + std::to_string(below) +
                                          " below 2|E|+tau (max shortfall " + fmt(worst_gap) + "), " +
                                          std::to_string(above) + " above 2|E|+tau+1"};
}

Outcome gap_family() {
    try {
        auto a = verify_gap_instance(2, 0, 0);
        auto b = verify_gap_instance(3, 0, 0);
        return {b.ratio > a.ratio, "k=2 ratio " + fmt(a.ratio) + " (T=" + std::to_string(a.T) + "), k=3 ratio " +
                                       fmt(b.ratio) + " (T=" + std::to_string(b.T) + "), checks passed"};
    } catch (const std::exception& e) {
        return {false, std::string("construction failed: ") + e.what()};
    }
}

Outcome endpoints() {
    GenParams gp;
    gp.kind = "endpoints";
    gp.n = 8;
    gp.W = Rat(1000);
    auto inst = generate(gp);
    Rat strawman = evaluate_cost(inst, endpoint_only_schedule(inst)).total;
    auto off = run_offline_pipeline(inst);
    auto on = run_online_pipeline(inst);
    record_online(on);
    double r_off = to_double(off.cost.total) / to_double(strawman);
    double r_on = to_double(on.cost.total) / to_double(strawman);
    return {off.feasible && on.feasible && r_off <= 4.0 / 8 && r_on <= 4.0 / 8,
            "offline " + fmt(to_double(off.cost.total)) + ", online " + fmt(to_double(on.cost.total)) +
                ", endpoint-only " + fmt(to_double(strawman)) + ", ratios " + fmt(r_off) + " / " + fmt(r_on) +
                " (cap 0.5)"};
}

Outcome online_stream(int extra) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < extra; ++i) {
        GenParams gp;
        gp.n = 3 + i % 4;
        gp.k = 1 + i % 3;
        gp.horizon = 6 + i % 7;
        gp.seed = static_cast<std::uint64_t>(20000 + i);
        gp.variant = i % 2 ? Variant::wPwTwP : Variant::wPwTw;
        OnlineAssembleOptions o;
        o.cover.seed = gp.seed;
        record_online(run_online_pipeline(generate(gp), o));
    }
    const auto& t = online_totals;
    int trips = t.stream_violations + t.sparsity_breaches + t.no_candidate + t.cache_invariant + t.reentry + t.edf_overflow;
    return {trips == 0, std::to_string(t.runs) + " online runs, stream " + std::to_string(t.stream_violations) +
                            ", sparsity " + std::to_string(t.sparsity_breaches) + ", select_pstar failures " +
                            std::to_string(t.no_candidate) + ", cache " + std::to_string(t.cache_invariant) +
                            ", reentry " + std::to_string(t.reentry) + ", edf " + std::to_string(t.edf_overflow)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> known_fail;
    std::vector<int> only;
    app.add_option("--known-fail", known_fail, "criteria whose FAIL does not change the exit status");
    app.add_option("--only", only, "run just these criteria");
    CLI11_PARSE(app, argc, argv);

    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> all{
        {1, "ip-validity", [] { return ip_validity(200); }},
        {2, "relaxation-ordering", [] { return relaxation_ordering(200); }},
        {3, "offline-end-to-end", [] { return offline_e2e(200); }},
        {4, "online-end-to-end", [] { return online_e2e(200); }},
        {5, "extension", [] { return extension(1000); }},
        {6, "lp-bound", [] { return lp_bound(50); }},
        {7, "cover-integrality", [] { return cover_integrality(1000); }},
        {8, "delay-reduction", [] { return delay_reduction(50); }},
        {9, "vc-bounds", [] { return vc_bounds(); }},
        {10, "gap-family", [] { return gap_family(); }},
        {11, "endpoints", [] { return endpoints(); }},
        {12, "online-stream", [] { return online_stream(300); }},
    };
    std::set<int> expected(known_fail.begin(), known_fail.end());
    std::set<int> chosen(only.begin(), only.end());
    int unexpected = 0;
    for (const auto& c : all) {
        if (!chosen.empty() && !chosen.count(c.id)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string note;
        if (!o.pass && expected.count(c.id)) note = " [known]";
        else if (!o.pass) ++unexpected;
        std::printf("C%-2d %s %-20s %s (%.1fs)%s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs,
                    note.c_str());
        std::fflush(stdout);
    }
    return unexpected == 0 ? 0 : 1;
}

#include "wpw/cover.hpp"

#include "wpw/errors.hpp"
#include "wpw/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

namespace wpw {

bool CoverInstance::has_exclusions() const {
    return std::any_of(excluded.begin(), excluded.end(), [](int p) { return p >= 0; });
}

int CoverInstance::excluded_at(int t) const {
    if (excluded.empty()) return -1;
    return excluded.at(static_cast<std::size_t>(t));
}

void CoverInstance::validate() const {
    if (static_cast<int>(weights.size()) != n) throw InvalidInstance("cover weights size");
    if (static_cast<int>(requirement.size()) != horizon + 1) throw InvalidInstance("cover requirement size");
    if (!excluded.empty() && static_cast<int>(excluded.size()) != horizon + 1)
        throw InvalidInstance("cover exclusion size");
    std::vector<std::vector<int>> cover(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(horizon + 1)));
    for (const auto& tl : tiles) {
        if (tl.page < 0 || tl.page >= n || tl.start > tl.end || tl.start < 0 || tl.end > horizon)
            throw InvalidInstance("bad tile");
        for (int t = tl.start; t <= tl.end; ++t) ++cover[static_cast<std::size_t>(tl.page)][static_cast<std::size_t>(t)];
    }
    for (const auto& row : cover)
        for (int c : row)
            if (c != 1) throw InvalidInstance("tiles of a page must tile the timeline");
}

std::vector<Tile> tiles_from_boundaries(int page, const std::vector<int>& boundaries, int horizon) {
    std::vector<Tile> out;
    for (std::size_t i = 0; i < boundaries.size(); ++i) {
        int s = boundaries[i];
        int e = i + 1 < boundaries.size() ? boundaries[i + 1] - 1 : horizon;
        if (s <= e) out.push_back({page, s, e});
    }
    return out;
}

int coverage_at(const CoverInstance& ci, const std::vector<std::size_t>& selected, int t) {
    int ex = ci.excluded_at(t);
    int c = 0;
    for (std::size_t j : selected) {
        const Tile& tl = ci.tiles[j];
        if (tl.contains(t) && tl.page != ex) ++c;
    }
    return c;
}

bool cover_feasible(const CoverInstance& ci, const std::vector<std::size_t>& selected) {
    for (int t = 0; t <= ci.horizon; ++t)
        if (coverage_at(ci, selected, t) < ci.requirement[static_cast<std::size_t>(t)]) return false;
    return true;
}

Rat cover_weight(const CoverInstance& ci, const std::vector<std::size_t>& selected) {
    Rat w{0};
    for (std::size_t j : selected) w += ci.weight_of(j);
    return w;
}

namespace {

class MinCostFlow {
public:
    explicit MinCostFlow(int nodes) : g_(static_cast<std::size_t>(nodes)) {}

    std::pair<int, int> add(int u, int v, long long cap, Rat cost) {
        auto& gu = g_[static_cast<std::size_t>(u)];
        auto& gv = g_[static_cast<std::size_t>(v)];
        gu.push_back({v, cap, cost, static_cast<int>(gv.size())});
        gv.push_back({u, 0, -cost, static_cast<int>(gu.size()) - 1});
        return {u, static_cast<int>(gu.size()) - 1};
    }

    // Successive shortest paths with Bellman-Ford; returns flow sent.
    long long run(int s, int t, long long need) {
        long long sent = 0;
        const std::size_t N = g_.size();
        while (sent < need) {
            std::vector<std::optional<Rat>> dist(N);
            std::vector<std::pair<int, int>> prev(N, {-1, -1});
            std::vector<char> inq(N, 0);
            std::deque<int> q;
            dist[static_cast<std::size_t>(s)] = Rat(0);
            q.push_back(s);
            while (!q.empty()) {
                int u = q.front();
                q.pop_front();
                inq[static_cast<std::size_t>(u)] = 0;
                const auto& gu = g_[static_cast<std::size_t>(u)];
                for (std::size_t i = 0; i < gu.size(); ++i) {
                    const Arc& a = gu[i];
                    if (a.cap <= 0) continue;
                    Rat nd = *dist[static_cast<std::size_t>(u)] + a.cost;
                    auto& dv = dist[static_cast<std::size_t>(a.to)];
                    if (!dv || nd < *dv) {
                        dv = nd;
                        prev[static_cast<std::size_t>(a.to)] = {u, static_cast<int>(i)};
                        if (!inq[static_cast<std::size_t>(a.to)]) {
                            inq[static_cast<std::size_t>(a.to)] = 1;
                            q.push_back(a.to);
                        }
                    }
                }
            }
            if (!dist[static_cast<std::size_t>(t)]) break;
            long long push = need - sent;
            for (int v = t; v != s;) {
                auto [u, i] = prev[static_cast<std::size_t>(v)];
                push = std::min(push, g_[static_cast<std::size_t>(u)][static_cast<std::size_t>(i)].cap);
                v = u;
            }
            for (int v = t; v != s;) {
                auto [u, i] = prev[static_cast<std::size_t>(v)];
                Arc& a = g_[static_cast<std::size_t>(u)][static_cast<std::size_t>(i)];
                a.cap -= push;
                g_[static_cast<std::size_t>(v)][static_cast<std::size_t>(a.rev)].cap += push;
                v = u;
            }
            sent += push;
        }
        return sent;
    }

    long long cap(std::pair<int, int> arc) const {
        return g_[static_cast<std::size_t>(arc.first)][static_cast<std::size_t>(arc.second)].cap;
    }

private:
    struct Arc {
        int to;
        long long cap;
        Rat cost;
        int rev;
    };
    std::vector<std::vector<Arc>> g_;
};

// Exact exclusion-free cover using only the tiles listed in `use`.
std::vector<std::size_t> flow_cover(const CoverInstance& ci, const std::vector<std::size_t>& use,
                                    const std::vector<int>& req) {
    const int h = ci.horizon;
    for (int t = 0; t <= h; ++t) {
        int avail = 0;
        for (std::size_t j : use)
            if (ci.tiles[j].contains(t)) ++avail;
        if (avail < req[static_cast<std::size_t>(t)])
            throw InfeasibleCover("requirement exceeds available tiles at time " + std::to_string(t));
    }
    const long long inf = std::numeric_limits<int>::max();
    const int S = h + 2, T = h + 3;
    MinCostFlow f(h + 4);
    std::vector<std::pair<int, int>> arcs;
    for (std::size_t j : use) {
        const Tile& tl = ci.tiles[j];
        arcs.push_back(f.add(tl.end + 1, tl.start, 1, ci.weight_of(j)));
    }
    for (int t = 0; t <= h; ++t) f.add(t, t + 1, inf, Rat(0));
    long long need = 0;
    for (int v = 0; v <= h + 1; ++v) {
        int cur = v <= h ? req[static_cast<std::size_t>(v)] : 0;
        int prev = v > 0 ? req[static_cast<std::size_t>(v - 1)] : 0;
        int d = cur - prev;
        if (d > 0) {
            f.add(v, T, d, Rat(0));
            need += d;
        } else if (d < 0) {
            f.add(S, v, -d, Rat(0));
        }
    }
    if (f.run(S, T, need) < need) throw InfeasibleCover("no feasible cover");
    std::vector<std::size_t> sel;
    for (std::size_t i = 0; i < use.size(); ++i)
        if (f.cap(arcs[i]) == 0) sel.push_back(use[i]);
    std::sort(sel.begin(), sel.end());
    return sel;
}

BigRat to_big(const Rat& r) { return BigRat(r.numerator()) / BigRat(r.denominator()); }

struct ExclLp {
    std::vector<BigRat> z;
    BigRat value;
};

ExclLp solve_excl_lp(const CoverInstance& ci) {
    std::vector<int> times;
    for (int t = 0; t <= ci.horizon; ++t)
        if (ci.requirement[static_cast<std::size_t>(t)] > 0) times.push_back(t);
    const std::size_t nt = times.size(), nj = ci.tiles.size();
    std::vector<std::vector<BigRat>> A(nj, std::vector<BigRat>(nt + nj));
    std::vector<BigRat> b(nj), c(nt + nj);
    for (std::size_t j = 0; j < nj; ++j) {
        const Tile& tl = ci.tiles[j];
        for (std::size_t i = 0; i < nt; ++i)
            if (tl.contains(times[i]) && tl.page != ci.excluded_at(times[i])) A[j][i] = 1;
        A[j][nt + j] = -1;
        b[j] = to_big(ci.weight_of(j));
    }
    for (std::size_t i = 0; i < nt; ++i) c[i] = ci.requirement[static_cast<std::size_t>(times[i])];
    for (std::size_t j = 0; j < nj; ++j) c[nt + j] = -1;
    LpResult r = simplex_max(A, b, c);
    if (r.status == LpResult::Unbounded) throw InfeasibleCover("exclusion cover LP infeasible");
    return {r.dual, r.objective};
}

}  // namespace

CoverSolution solve_offline(const CoverInstance& ci) {
    if (ci.has_exclusions()) throw PreconditionViolated("solve_offline takes no exclusions");
    std::vector<std::size_t> all(ci.tiles.size());
    for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
    CoverSolution s;
    s.selected = flow_cover(ci, all, ci.requirement);
    s.weight = cover_weight(ci, s.selected);
    return s;
}

CoverSolution solve_offline_restricted(const CoverInstance& ci, const std::vector<std::size_t>& allowed) {
    if (ci.has_exclusions()) throw PreconditionViolated("solve_offline_restricted takes no exclusions");
    CoverSolution s;
    s.selected = flow_cover(ci, allowed, ci.requirement);
    std::sort(s.selected.begin(), s.selected.end());
    s.weight = cover_weight(ci, s.selected);
    return s;
}

CoverSolution solve_exhaustive(const CoverInstance& ci) {
    const int n = ci.n, h = ci.horizon;
    if (n > 16) throw BudgetExceeded("exhaustive cover limited to 16 pages");
    std::vector<std::vector<int>> at(static_cast<std::size_t>(h + 1), std::vector<int>(static_cast<std::size_t>(n), -1));
    for (std::size_t j = 0; j < ci.tiles.size(); ++j)
        for (int t = ci.tiles[j].start; t <= ci.tiles[j].end; ++t)
            at[static_cast<std::size_t>(t)][static_cast<std::size_t>(ci.tiles[j].page)] = static_cast<int>(j);
    const std::size_t M = std::size_t{1} << n;
    std::vector<std::optional<Rat>> cost(M);
    cost[0] = Rat(0);
    std::vector<std::vector<std::uint32_t>> parent(static_cast<std::size_t>(h + 1), std::vector<std::uint32_t>(M));
    for (int t = 0; t <= h; ++t) {
        std::uint32_t keep = 0, fresh = 0;
        for (int p = 0; p < n; ++p) {
            int cur = at[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
            if (cur < 0) continue;
            int before = t > 0 ? at[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(p)] : -1;
            if (before == cur) keep |= 1u << p;
            else fresh |= 1u << p;
        }
        int ex = ci.excluded_at(t);
        std::uint32_t count_mask = ex >= 0 ? ~(1u << ex) : ~0u;
        std::vector<std::optional<Rat>> next(M);
        for (std::uint32_t m = 0; m < M; ++m) {
            if (!cost[m]) continue;
            std::uint32_t base = m & keep;
            for (std::uint32_t sub = fresh;; sub = (sub - 1) & fresh) {
                std::uint32_t nm = base | sub;
                if (__builtin_popcount(nm & count_mask) >= ci.requirement[static_cast<std::size_t>(t)]) {
                    Rat c = *cost[m];
                    for (int p = 0; p < n; ++p)
                        if (sub >> p & 1u) c += ci.weights[static_cast<std::size_t>(p)];
                    if (!next[nm] || c < *next[nm]) {
                        next[nm] = c;
                        parent[static_cast<std::size_t>(t)][nm] = m;
                    }
                }
                if (sub == 0) break;
            }
        }
        cost = std::move(next);
    }
    std::optional<std::uint32_t> best;
    for (std::uint32_t m = 0; m < M; ++m)
        if (cost[m] && (!best || *cost[m] < *cost[*best])) best = m;
    if (!best) throw InfeasibleCover("no feasible cover");
    CoverSolution s;
    std::uint32_t m = *best;
    for (int t = h; t >= 0; --t) {
        for (int p = 0; p < n; ++p)
            if (m >> p & 1u) s.selected.push_back(static_cast<std::size_t>(at[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)]));
        m = parent[static_cast<std::size_t>(t)][m];
    }
    std::sort(s.selected.begin(), s.selected.end());
    s.selected.erase(std::unique(s.selected.begin(), s.selected.end()), s.selected.end());
    s.weight = cover_weight(ci, s.selected);
    return s;
}

double cover_lp_value(const CoverInstance& ci) {
    return solve_excl_lp(ci).value.convert_to<double>();
}

CoverSolution solve_offline_excl(const CoverInstance& ci) {
    ExclLp lp = solve_excl_lp(ci);
    const BigRat half(1, 2);
    std::vector<std::size_t> first, rest;
    for (std::size_t j = 0; j < ci.tiles.size(); ++j) {
        if (lp.z[j] >= half) first.push_back(j);
        else rest.push_back(j);
    }
    std::vector<int> residual(static_cast<std::size_t>(ci.horizon + 1), 0);
    for (int t = 0; t <= ci.horizon; ++t) {
        int r = ci.requirement[static_cast<std::size_t>(t)] - coverage_at(ci, first, t);
        residual[static_cast<std::size_t>(t)] = 2 * std::max(0, r);
    }
    std::vector<std::size_t> second = flow_cover(ci, rest, residual);
    CoverSolution s;
    s.selected = first;
    s.selected.insert(s.selected.end(), second.begin(), second.end());
    std::sort(s.selected.begin(), s.selected.end());
    s.weight = cover_weight(ci, s.selected);
    s.lp_value = lp.value.convert_to<double>();
    return s;
}

OnlineCover::OnlineCover(std::vector<Rat> weights, int cache, bool exclusions, OnlineCoverOptions opt)
    : n_(static_cast<int>(weights.size())),
      exclusions_(exclusions),
      delta_(1.0 / (cache + (exclusions ? 1 : 2))),
      scale_(opt.rounding_constant * std::log(cache + 2.0)),
      weights_(std::move(weights)),
      z_(static_cast<std::size_t>(n_), 0.0),
      theta_(static_cast<std::size_t>(n_), 0.0),
      bought_(static_cast<std::size_t>(n_), 0),
      rng_(opt.seed) {
    for (int p = 0; p < n_; ++p) fresh_tile(p);
}

void OnlineCover::fresh_tile(int page) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    auto i = static_cast<std::size_t>(page);
    z_[i] = 0;
    theta_[i] = U(rng_);
    bought_[i] = 0;
}

std::vector<int> OnlineCover::constraint(int requirement, int skip, bool with_p0) {
    std::vector<int> bought_now;
    if (requirement <= 0) return bought_now;
    std::vector<Participant> ps;
    for (int p = 0; p < n_; ++p)
        if (p != skip) ps.push_back({p, to_double(weights_[static_cast<std::size_t>(p)]), z_[static_cast<std::size_t>(p)], 0});
    if (with_p0) ps.push_back({-1, 0.0, p0_sum_, 0});
    double y = 0;
    CoveringParams prm;
    prm.requirement = requirement;
    prm.delta = delta_;
    CoveringOutcome o = covering_step(ps, y, prm);
    frac_cost_ += o.cost;
    for (const auto& q : ps) {
        if (q.id < 0) p0_sum_ = q.sum;
        else z_[static_cast<std::size_t>(q.id)] = q.sum;
    }
    int have = with_p0 ? 1 : 0;
    std::vector<int> missing;
    for (const auto& q : ps) {
        if (q.id < 0) continue;
        auto i = static_cast<std::size_t>(q.id);
        if (!bought_[i] && scale_ * z_[i] > theta_[i]) {
            bought_[i] = 1;
            int_cost_ += weights_[i];
            bought_now.push_back(q.id);
        }
        if (bought_[i]) ++have;
        else missing.push_back(q.id);
    }
    std::sort(missing.begin(), missing.end(), [&](int a, int b) {
        const Rat& wa = weights_[static_cast<std::size_t>(a)];
        const Rat& wb = weights_[static_cast<std::size_t>(b)];
        return wa != wb ? wa < wb : a < b;
    });
    for (std::size_t i = 0; have < requirement; ++i) {
        if (i >= missing.size()) throw InfeasibleCover("online repair ran out of tiles");
        bought_[static_cast<std::size_t>(missing[i])] = 1;
        int_cost_ += weights_[static_cast<std::size_t>(missing[i])];
        bought_now.push_back(missing[i]);
        ++have;
    }
    std::sort(bought_now.begin(), bought_now.end());
    return bought_now;
}

std::vector<int> OnlineCover::begin_time(int, const std::vector<int>& closed, int requirement) {
    std::vector<int> out;
    std::vector<int> cl = closed;
    std::sort(cl.begin(), cl.end());
    for (int p : cl) fresh_tile(p);
    if (exclusions_) return out;
    for (int p : cl) {
        auto b = constraint(requirement, p, true);
        out.insert(out.end(), b.begin(), b.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> OnlineCover::require(int, int requirement, int excluded) {
    if (exclusions_) return constraint(requirement, excluded, false);
    auto out = constraint(requirement, -1, false);
    p0_sum_ = 0;  // p0 was just requested; its next interval starts empty
    return out;
}

OnlineCoverRun run_online_cover(const CoverInstance& ci, int cache, OnlineCoverOptions opt) {
    ci.validate();
    OnlineCover oc(ci.weights, cache, ci.has_exclusions(), opt);
    OnlineCoverRun run;
    run.z.assign(ci.tiles.size(), 0.0);
    std::vector<std::vector<int>> at(static_cast<std::size_t>(ci.horizon + 1), std::vector<int>(static_cast<std::size_t>(ci.n), -1));
    for (std::size_t j = 0; j < ci.tiles.size(); ++j)
        for (int t = ci.tiles[j].start; t <= ci.tiles[j].end; ++t)
            at[static_cast<std::size_t>(t)][static_cast<std::size_t>(ci.tiles[j].page)] = static_cast<int>(j);
    std::vector<std::size_t> sel;
    for (int t = 0; t <= ci.horizon; ++t) {
        const auto& row = at[static_cast<std::size_t>(t)];
        std::vector<int> closed;
        if (t > 0)
            for (int p = 0; p < ci.n; ++p)
                if (row[static_cast<std::size_t>(p)] != at[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(p)]) closed.push_back(p);
        int R = ci.requirement[static_cast<std::size_t>(t)];
        auto a = oc.begin_time(t, closed, R);
        auto b = oc.require(t, R, ci.excluded_at(t));
        a.insert(a.end(), b.begin(), b.end());
        for (int p : a) sel.push_back(static_cast<std::size_t>(row[static_cast<std::size_t>(p)]));
        for (int p = 0; p < ci.n; ++p) run.z[static_cast<std::size_t>(row[static_cast<std::size_t>(p)])] = oc.z(p);
    }
    std::sort(sel.begin(), sel.end());
    sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
    run.solution.selected = sel;
    run.solution.weight = cover_weight(ci, sel);
    run.fractional_cost = oc.fractional_cost();
    return run;
}

}  // namespace wpw

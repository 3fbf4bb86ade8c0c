#include "wpw/assembly.hpp"

#include "wpw/errors.hpp"

#include <algorithm>

namespace wpw {

namespace {

std::size_t ix(int v) { return static_cast<std::size_t>(v); }

TimeInterval crit_interval(const Instance& inst, const std::vector<int>& crit, int t) {
    return interval_of(inst.requests[ix(crit[ix(t)])]);
}

bool hit_in(const std::set<Star>& S, int p, const TimeInterval& iv) {
    auto it = S.lower_bound({p, iv.start});
    return it != S.end() && it->page == p && it->time <= iv.end;
}

std::vector<std::vector<const Request*>> group_by_page(const Instance& inst) {
    std::vector<std::vector<const Request*>> g(ix(inst.n));
    for (const auto& r : inst.requests) g[ix(r.page)].push_back(&r);
    for (auto& v : g)
        std::sort(v.begin(), v.end(), [](const Request* a, const Request* b) { return a->deadline < b->deadline; });
    return g;
}

}  // namespace

std::optional<int> NetBuilder::feed(int t, const TimeInterval& critical) {
    for (std::size_t i = ivs_.size(); i-- > 0;) {
        if (critical.contains(ivs_[i])) {
            net_.phi[t] = net_.net[i];
            return net_.phi[t];
        }
    }
    net_.net.push_back(t);
    ivs_.push_back(critical);
    return std::nullopt;
}

NonNestedNet build_net(const std::vector<std::pair<int, TimeInterval>>& stream) {
    NetBuilder b;
    for (const auto& [t, iv] : stream) b.feed(t, iv);
    return b.net();
}

DTable build_dtable(const Instance& inst, const std::vector<KpPartition>& kp) {
    DTable dt;
    dt.crit_page.assign(ix(inst.horizon + 1), -1);
    dt.D.assign(ix(inst.horizon + 1), {});
    auto crit = critical_index(inst);
    for (int t = 0; t <= inst.horizon; ++t) {
        if (crit[ix(t)] < 0) continue;
        TimeInterval It = crit_interval(inst, crit, t);
        dt.crit_page[ix(t)] = inst.requests[ix(crit[ix(t)])].page;
        auto& row = dt.D[ix(t)];
        row.resize(ix(inst.n));
        for (int p = 0; p < inst.n; ++p) row[ix(p)] = tau_and_D(kp[ix(p)], It).D;
    }
    return dt;
}

std::set<int> pages_hit(const std::set<Star>& S, const DTable& dt, int t) {
    std::set<int> out;
    if (dt.crit_page[ix(t)] < 0) return out;
    const auto& row = dt.D[ix(t)];
    for (std::size_t p = 0; p < row.size(); ++p)
        if (hit_in(S, static_cast<int>(p), row[p])) out.insert(static_cast<int>(p));
    return out;
}

int demand_met(const std::set<Star>& S, const DTable& dt, int t) {
    auto P = pages_hit(S, dt, t);
    return static_cast<int>(P.size()) - static_cast<int>(P.count(dt.crit_page[ix(t)]));
}

void extend_at(int t, int phi_t, const std::set<Star>& A, std::set<Star>& B, const DTable& dt) {
    auto want = pages_hit(A, dt, phi_t);
    auto have = pages_hit(B, dt, t);
    for (int p : want)
        if (!have.count(p)) B.insert({p, t});
}

std::set<Star> extend_stars(const std::vector<int>& times, const NonNestedNet& net, const std::set<Star>& A,
                            const DTable& dt) {
    std::vector<int> order = times;
    std::sort(order.begin(), order.end());
    std::set<Star> B = A;
    for (int t : order) {
        auto it = net.phi.find(t);
        if (it != net.phi.end()) extend_at(t, it->second, A, B, dt);
    }
    return B;
}

StarSolution close_kp_tiles(const Instance& inst, const std::vector<KpPartition>& kp,
                            const std::set<Star>& triggers) {
    StarSolution sol;
    auto pages = group_by_page(inst);
    for (int p = 0; p < inst.n; ++p) {
        const auto& part = kp[ix(p)];
        for (std::size_t i = 0; i < part.boundaries.size(); ++i) {
            int a = part.tile_start(i), b = part.tile_end(i);
            auto it = triggers.lower_bound({p, a});
            if (it == triggers.end() || it->page != p || it->time >= b) continue;
            int mark = it->time;
            if (b <= inst.horizon) sol.stars.insert({p, b});
            for (const Request* r : pages[ix(p)])
                if (!r->penalty.is_hard() && r->start > mark && r->deadline < b) sol.penalties.insert(r->id);
        }
    }
    return sol;
}

StarSolution compact_to_full_dext(const Instance& inst, const std::vector<KpPartition>& kp,
                                  const std::set<Star>& stars, const std::set<int>& flags) {
    StarSolution sol = close_kp_tiles(inst, kp, stars);
    sol.stars.insert(stars.begin(), stars.end());
    sol.penalties.insert(flags.begin(), flags.end());
    return sol;
}

namespace {

std::vector<char> requested_pages(const Instance& inst) {
    std::vector<char> used(ix(inst.n), 0);
    for (const auto& r : inst.requests) used[ix(r.page)] = 1;
    return used;
}

}  // namespace

// Pages never requested sit in no (R1p) collection, so the requirement
// counts only requested pages.
CoverInstance kp_cover_instance(const Instance& inst, const std::vector<KpPartition>& kp) {
    CoverInstance ci;
    ci.n = inst.n;
    ci.horizon = inst.horizon;
    ci.weights = inst.weights;
    for (int p = 0; p < inst.n; ++p) {
        auto tl = tiles_from_boundaries(p, kp[ix(p)].boundaries, inst.horizon);
        ci.tiles.insert(ci.tiles.end(), tl.begin(), tl.end());
    }
    auto used = requested_pages(inst);
    int m = static_cast<int>(std::count(used.begin(), used.end(), 1));
    ci.requirement.assign(ix(inst.horizon + 1), std::max(0, m - inst.k));
    return ci;
}

RextResult solve_rext_offline(const Instance& inst, const std::vector<KpPartition>& kp) {
    RextResult r;
    r.cover = kp_cover_instance(inst, kp);
    if (r.cover.requirement.empty() || r.cover.requirement.front() == 0) return r;
    auto used = requested_pages(inst);
    std::vector<std::size_t> allowed;
    for (std::size_t j = 0; j < r.cover.tiles.size(); ++j)
        if (used[ix(r.cover.tiles[j].page)]) allowed.push_back(j);
    r.chosen = solve_offline_restricted(r.cover, allowed);
    std::set<Star> trig;
    for (std::size_t j : r.chosen.selected) trig.insert({r.cover.tiles[j].page, r.cover.tiles[j].start});
    r.solution = compact_to_full_dext(inst, kp, trig, {});
    return r;
}

namespace {

struct OfflineInvocation {
    NonNestedNet net;
    std::set<Star> A, B;
};

OfflineInvocation invoke_offline(const Instance& inst, const DTable& dt, const std::vector<int>& times) {
    OfflineInvocation out;
    const int R = inst.n - inst.k;
    NetBuilder nb;
    std::vector<DpBuilder> dp;
    for (int p = 0; p < inst.n; ++p) dp.emplace_back(p, inst.horizon);
    std::vector<int> order = times;
    std::sort(order.begin(), order.end());
    auto crit = critical_index(inst);
    for (int t : order) {
        if (nb.feed(t, crit_interval(inst, crit, t))) continue;
        int pt = dt.crit_page[ix(t)];
        for (int p = 0; p < inst.n; ++p)
            if (p != pt) dp[ix(p)].feed(t, dt.D[ix(t)][ix(p)]);
    }
    out.net = nb.net();
    if (out.net.net.empty()) return out;

    CoverInstance ci;
    ci.n = inst.n;
    ci.horizon = inst.horizon;
    ci.weights = inst.weights;
    for (int p = 0; p < inst.n; ++p) {
        auto tl = tiles_from_boundaries(p, dp[ix(p)].partition().boundaries, inst.horizon);
        ci.tiles.insert(ci.tiles.end(), tl.begin(), tl.end());
    }
    ci.requirement.assign(ix(inst.horizon + 1), 0);
    ci.excluded.assign(ix(inst.horizon + 1), -1);
    for (int t : out.net.net) {
        ci.requirement[ix(t)] = R;
        ci.excluded[ix(t)] = dt.crit_page[ix(t)];
    }
    CoverSolution cs = solve_offline_excl(ci);
    for (std::size_t j : cs.selected) {
        const Tile& tl = ci.tiles[j];
        out.A.insert({tl.page, tl.start});
        if (tl.end < inst.horizon) out.A.insert({tl.page, tl.end + 1});
    }
    out.B = extend_stars(order, out.net, out.A, dt);
    return out;
}

std::set<Star> unite(const std::set<Star>& a, const std::set<Star>& b) {
    std::set<Star> u = a;
    u.insert(b.begin(), b.end());
    return u;
}

}  // namespace

PagecoverResult solve_pagecover(const Instance& inst, const DTable& dt, const std::vector<int>& T) {
    PagecoverResult res;
    const int R = inst.n - inst.k;
    if (R <= 0 || T.empty()) return res;
    auto first = invoke_offline(inst, dt, T);
    res.net = first.net;
    res.A = first.A;
    res.B = first.B;
    for (int t : T) {
        if (!first.net.phi.count(t)) continue;
        int have = demand_met(res.B, dt, t);
        if (have < R) {
            res.T1.push_back(t);
            if (have < R - 1) ++res.deep_deficit;
        }
    }
    std::sort(res.T1.begin(), res.T1.end());
    if (!res.T1.empty()) {
        auto second = invoke_offline(inst, dt, res.T1);
        res.net1 = second.net;
        res.A1 = second.A;
        res.B1 = second.B;
    }
    res.stars = unite(res.B, res.B1);
    for (int t : T)
        if (demand_met(res.stars, dt, t) < R) ++res.short_times;
    return res;
}

AssembleReport assemble_offline(const Instance& inst) {
    if (!is_normalized(inst)) throw PreconditionViolated("assembly needs a normalized instance");
    AssembleReport rep;
    auto kp = build_all_kp(inst);
    RextResult rext = solve_rext_offline(inst, kp);

    LpSolver lp(inst);
    lp.run();
    rep.lp_cost = lp.fractional_cost();
    RoundedLp rl = round_penalties(lp);
    auto crit = critical_index(inst);
    std::vector<int> T;
    std::set<int> flags;
    for (int t = 0; t <= inst.horizon; ++t) {
        int c = crit[ix(t)];
        if (c < 0) continue;
        if (rl.y[ix(t)] && !inst.requests[ix(c)].penalty.is_hard()) {
            flags.insert(inst.requests[ix(c)].id);
            rep.penalized_by_lp.push_back(inst.requests[ix(c)].id);
        } else {
            T.push_back(t);
        }
    }
    DTable dt = build_dtable(inst, kp);
    PagecoverResult pc = solve_pagecover(inst, dt, T);
    rep.short_times = pc.short_times;
    rep.deep_deficit = pc.deep_deficit;
    rep.solution = compact_to_full_dext(inst, kp, pc.stars, flags);
    rep.solution.merge(rext.solution);
    return rep;
}

FixedStarStream::FixedStarStream(const Instance& inst, StarSolution sol) : inst_(inst), sol_(std::move(sol)) {}

StarStep FixedStarStream::next(int t) {
    StarStep s;
    s.t = t;
    for (const Star& st : sol_.stars)
        if (st.time == t) s.added.push_back(st);
    for (const auto& r : inst_.requests)
        if (r.deadline == t && sol_.has_penalty(r.id)) s.flagged.push_back(r.id);
    return s;
}

OnlineAssembler::Invocation::Invocation(const Instance& inst, const OnlineCoverOptions& o)
    : cover(inst.weights, inst.k, true, o) {
    for (int p = 0; p < inst.n; ++p) dp.emplace_back(p, inst.horizon);
}

namespace {
OnlineCoverOptions reseed(OnlineCoverOptions o, std::uint64_t d) {
    o.seed += d;
    return o;
}
}  // namespace

OnlineAssembler::OnlineAssembler(const Instance& inst, OnlineAssembleOptions opt)
    : inst_(inst),
      R_(inst.n - inst.k),
      crit_(critical_index(inst)),
      by_page_(group_by_page(inst)),
      mark_(ix(inst.n)),
      rcover_(inst.weights, inst.k, false, opt.cover),
      lp_(inst),
      inv0_(inst, reseed(opt.cover, 1)),
      inv1_(inst, reseed(opt.cover, 2)),
      open_span_(ix(inst.n), -1) {
    if (!is_normalized(inst)) throw PreconditionViolated("assembly needs a normalized instance");
    for (int p = 0; p < inst.n; ++p) kp_.emplace_back(p, inst.weight(p), inst.horizon);
    dt_.crit_page.assign(ix(inst.horizon + 1), -1);
    dt_.D.assign(ix(inst.horizon + 1), {});
}

void OnlineAssembler::add_star(int p, int t, bool trigger, StarStep& step) {
    if (sol_.stars.insert({p, t}).second) step.added.push_back({p, t});
    if (trigger && !mark_[ix(p)]) {
        mark_[ix(p)] = t;
        sol_.pending_future[p] = t;
        open_span_[ix(p)] = static_cast<int>(spans_.size());
        spans_.push_back({p, t, inst_.horizon + 1});
    }
}

std::vector<Star> OnlineAssembler::run_invocation(Invocation& inv, int t) {
    std::vector<Star> added;
    int pt = dt_.crit_page[ix(t)];
    TimeInterval It = crit_interval(inst_, crit_, t);
    auto phi = inv.net.feed(t, It);
    auto put = [&](int p) {
        inv.A.insert({p, t});
        if (inv.B.insert({p, t}).second) added.push_back({p, t});
    };
    if (!phi) {
        std::vector<int> closed;
        for (int p = 0; p < inst_.n; ++p) {
            if (p == pt) continue;
            bool was = inv.cover.bought(p);
            if (inv.dp[ix(p)].feed(t, dt_.D[ix(t)][ix(p)])) {
                closed.push_back(p);
                if (was) put(p);
            }
        }
        inv.cover.begin_time(t, closed, R_);
        for (int p : inv.cover.require(t, R_, pt)) put(p);
    } else {
        auto before = inv.B;
        extend_at(t, *phi, inv.A, inv.B, dt_);
        for (const Star& s : inv.B)
            if (!before.count(s)) added.push_back(s);
    }
    return added;
}

StarStep OnlineAssembler::next(int t) {
    if (t != next_t_) throw PreconditionViolated("online assembler needs consecutive times");
    ++next_t_;
    StarStep step;
    step.t = t;

    std::vector<int> closed;
    if (t >= 1) {
        for (int p = 0; p < inst_.n; ++p) {
            if (!kp_[ix(p)].advance(t, by_page_[ix(p)])) continue;
            closed.push_back(p);
            if (mark_[ix(p)]) {
                add_star(p, t, false, step);
                spans_[ix(open_span_[ix(p)])].to = t;
                mark_[ix(p)].reset();
                sol_.pending_future.erase(p);
            }
        }
    }

    if (R_ > 0) {
        auto a = rcover_.begin_time(t, closed, R_);
        auto b = rcover_.require(t, R_, -1);
        for (int p : a) add_star(p, t, true, step);
        for (int p : b) add_star(p, t, true, step);
    }

    int c = crit_[ix(t)];
    lp_.process(t);
    if (c >= 0) {
        const Request& It = inst_.requests[ix(c)];
        dt_.crit_page[ix(t)] = It.page;
        auto& row = dt_.D[ix(t)];
        row.resize(ix(inst_.n));
        for (int p = 0; p < inst_.n; ++p) row[ix(p)] = tau_and_D(kp_[ix(p)].partition(), interval_of(It)).D;

        bool flagged = false;
        if (lp_.y(t) > 0.5 && !It.penalty.is_hard()) {
            flagged = sol_.penalties.insert(It.id).second;
            if (flagged) step.flagged.push_back(It.id);
        } else if (R_ > 0) {
            auto s0 = run_invocation(inv0_, t);
            for (const Star& s : s0) add_star(s.page, s.time, true, step);
            int have = demand_met(inv0_.B, dt_, t);
            if (have < R_) {
                if (inv0_.net.net().phi.count(t)) {
                    if (have < R_ - 1) ++deep_;
                    auto s1 = run_invocation(inv1_, t);
                    for (const Star& s : s1) add_star(s.page, s.time, true, step);
                }
                std::set<Star> u = inv0_.B;
                u.insert(inv1_.B.begin(), inv1_.B.end());
                if (demand_met(u, dt_, t) < R_) ++short_;
            }
        }
        if (!flagged && !It.penalty.is_hard() && !sol_.has_penalty(It.id)) {
            const auto& m = mark_[ix(It.page)];
            if (m && *m < It.start) {
                sol_.penalties.insert(It.id);
                step.flagged.push_back(It.id);
            }
        }
    }
    for (int p = 0; p < inst_.n; ++p)
        if (mark_[ix(p)]) step.pending_pages.insert(p);
    return step;
}

int OnlineAssembler::sparsity_breaches() const {
    int bad = 0;
    for (const auto& sp : spans_) {
        for (const Request* r : by_page_[ix(sp.page)]) {
            if (r->deadline >= sp.to || sol_.has_penalty(r->id)) continue;
            int lo = std::max(sp.from, r->start), hi = std::min(sp.to - 1, r->deadline);
            for (int t = lo; t <= hi; ++t) {
                if (!sol_.hits(sp.page, {r->start, t})) {
                    ++bad;
                    break;
                }
            }
        }
    }
    return bad;
}

}  // namespace wpw

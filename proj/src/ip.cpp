#include "wpw/ip.hpp"

#include <algorithm>
#include <functional>

namespace wpw {

TimeInterval right_extension(const TimeInterval& I, int t) {
    if (t < I.start) throw PreconditionViolated("right_extension needs s(I) <= t");
    return {I.start, std::max(t, I.end)};
}

TimeInterval double_extension(const TimeInterval& I, const TimeInterval& critical, int t) {
    if (I.end > t) throw PreconditionViolated("double_extension needs e(I) <= t");
    return {std::min(critical.start, I.start), t};
}

bool StarSolution::hits(int page, const TimeInterval& iv) const {
    auto it = stars.lower_bound(Star{page, iv.start});
    return it != stars.end() && it->page == page && it->time <= iv.end;
}

Rat StarSolution::star_cost(const Instance& inst) const {
    Rat c{0};
    for (const auto& s : stars) c += inst.weight(s.page);
    return c;
}

Rat StarSolution::penalty_cost(const Instance& inst) const {
    Rat c{0};
    for (const auto& r : inst.requests)
        if (penalties.count(r.id) && !r.penalty.is_hard()) c += r.penalty.value();
    return c;
}

void StarSolution::merge(const StarSolution& o) {
    stars.insert(o.stars.begin(), o.stars.end());
    penalties.insert(o.penalties.begin(), o.penalties.end());
    for (const auto& [p, t] : o.pending_future) {
        auto it = pending_future.find(p);
        if (it == pending_future.end() || t < it->second) pending_future[p] = t;
    }
}

std::size_t KpPartition::tile_of(int t) const {
    auto it = std::upper_bound(boundaries.begin(), boundaries.end(), t);
    return static_cast<std::size_t>(it - boundaries.begin()) - 1;
}

int KpPartition::tile_end(std::size_t i) const {
    return i + 1 < boundaries.size() ? boundaries[i + 1] : horizon + 1;
}

bool KpBuilder::advance(int t, const std::vector<const Request*>& page_requests) {
    int tstar = part_.boundaries.back();
    if (t <= tstar) return false;
    Rat total{0};
    bool exceeded = false;
    for (const Request* r : page_requests) {
        if (r->start < tstar || r->deadline > t) continue;
        if (r->penalty.is_hard()) {
            exceeded = true;
            break;
        }
        total += r->penalty.value();
    }
    if (!exceeded && total <= weight_) return false;
    part_.boundaries.push_back(t);
    return true;
}

KpPartition build_kp(int page, const Rat& weight, int horizon, const std::vector<Request>& requests) {
    std::vector<const Request*> mine;
    for (const auto& r : requests)
        if (r.page == page) mine.push_back(&r);
    KpBuilder b(page, weight, horizon);
    for (int t = 1; t <= horizon; ++t) b.advance(t, mine);
    return b.partition();
}

std::vector<KpPartition> build_all_kp(const Instance& inst) {
    std::vector<KpPartition> out;
    for (int p = 0; p < inst.n; ++p) out.push_back(build_kp(p, inst.weight(p), inst.horizon, inst.requests));
    return out;
}

TauD tau_and_D(const KpPartition& kp, const TimeInterval& critical) {
    TauD r;
    for (std::size_t i = 1; i < kp.boundaries.size(); ++i) {
        if (kp.boundaries[i] < critical.start) {
            r.tau = kp.boundaries[i];
            r.prior = true;
        }
    }
    r.D = {r.tau, critical.end};
    return r;
}

std::size_t DpPartition::tile_of(int t) const {
    auto it = std::upper_bound(boundaries.begin(), boundaries.end(), t);
    return static_cast<std::size_t>(it - boundaries.begin()) - 1;
}

int DpPartition::tile_end(std::size_t i) const {
    return i + 1 < boundaries.size() ? boundaries[i + 1] : horizon;
}

bool DpBuilder::feed(int t, const TimeInterval& D) {
    if (D.start < last_start_) throw NestedInput("D interval at " + std::to_string(t) + " starts before its predecessor");
    last_start_ = D.start;
    int tstar = part_.boundaries.back();
    if (t <= tstar) return false;
    if (D.start < tstar) return false;  // t* lies in the interior of D
    part_.boundaries.push_back(t);
    return true;
}

DpPartition build_dp(int page, int horizon, const std::vector<std::pair<int, TimeInterval>>& stream) {
    DpBuilder b(page, horizon);
    for (const auto& [t, D] : stream) b.feed(t, D);
    return b.partition();
}

StarSolution schedule_to_stars(const Instance& inst, const Schedule& sched) {
    StarSolution sol;
    for (const auto& e : sched.events) sol.stars.insert({e.page, e.time});
    FeasReport f = check_feasibility(inst, sched);
    for (std::size_t j = 0; j < inst.requests.size(); ++j)
        if (!f.served[j] && !inst.requests[j].penalty.is_hard()) sol.penalties.insert(inst.requests[j].id);
    return sol;
}

namespace {

// Elementary symmetric polynomial e_r of the counts.
double esym(const std::vector<double>& c, int r) {
    if (r < 0) return 0;
    std::vector<double> e(static_cast<std::size_t>(r + 1), 0.0);
    e[0] = 1;
    for (double x : c)
        for (int j = r; j >= 1; --j) e[static_cast<std::size_t>(j)] += e[static_cast<std::size_t>(j - 1)] * x;
    return e[static_cast<std::size_t>(r)];
}

// Emits every collection picking `size` pages from `groups` and one entry each.
void enumerate(const std::vector<std::vector<int>>& groups, int size, int time, char kind,
               std::vector<Violation>& out) {
    std::vector<int> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t g) {
        if (static_cast<int>(chosen.size()) == size) {
            out.push_back({time, kind, chosen});
            return;
        }
        if (groups.size() - g < static_cast<std::size_t>(size) - chosen.size()) return;
        for (int id : groups[g]) {
            chosen.push_back(id);
            rec(g + 1);
            chosen.pop_back();
        }
        rec(g + 1);
    };
    rec(0);
}

struct ByPage {
    std::vector<std::vector<const Request*>> reqs;
    explicit ByPage(const Instance& inst) : reqs(static_cast<std::size_t>(inst.n)) {
        for (const auto& r : inst.requests) reqs[static_cast<std::size_t>(r.page)].push_back(&r);
    }
};

bool y_covers(const StarSolution& sol, const Request& r) {
    return !r.penalty.is_hard() && sol.has_penalty(r.id);
}

std::vector<Violation> check_time(const Instance& inst, const ByPage& bp, const std::vector<int>& crit,
                                  const StarSolution& sol, int t, const IpCheckOptions& opt) {
    std::vector<Violation> out;
    if (opt.check_r) {
        std::vector<std::vector<int>> groups;
        for (int p = 0; p < inst.n; ++p) {
            std::vector<int> unc;
            for (const Request* r : bp.reqs[static_cast<std::size_t>(p)]) {
                if (r->start > t) continue;
                if (y_covers(sol, *r) || sol.hits(p, right_extension(interval_of(*r), t))) continue;
                unc.push_back(r->id);
            }
            if (!unc.empty()) groups.push_back(std::move(unc));
        }
        if (static_cast<int>(groups.size()) >= inst.k + 1) enumerate(groups, inst.k + 1, t, 'R', out);
    }
    int ci = crit[static_cast<std::size_t>(t)];
    if (opt.check_d && ci >= 0) {
        const Request& It = inst.requests[static_cast<std::size_t>(ci)];
        if (!y_covers(sol, It)) {
            std::vector<std::vector<int>> groups;
            for (int p = 0; p < inst.n; ++p) {
                if (p == It.page) continue;
                std::vector<int> unc;
                for (const Request* r : bp.reqs[static_cast<std::size_t>(p)]) {
                    if (r->deadline > t) continue;
                    if (y_covers(sol, *r) || sol.hits(p, double_extension(interval_of(*r), interval_of(It), t)))
                        continue;
                    unc.push_back(r->id);
                }
                if (!unc.empty()) groups.push_back(std::move(unc));
            }
            if (static_cast<int>(groups.size()) >= inst.k) enumerate(groups, inst.k, t, 'D', out);
        }
    }
    return out;
}

}  // namespace

double count_ip_collections(const Instance& inst) {
    ByPage bp(inst);
    auto crit = critical_index(inst);
    double total = 0;
    for (int t = 0; t <= inst.horizon; ++t) {
        std::vector<double> cr, cd;
        int pt = crit[static_cast<std::size_t>(t)] >= 0 ? inst.requests[static_cast<std::size_t>(crit[static_cast<std::size_t>(t)])].page : -1;
        for (int p = 0; p < inst.n; ++p) {
            double a = 0, b = 0;
            for (const Request* r : bp.reqs[static_cast<std::size_t>(p)]) {
                if (r->start <= t) a += 1;
                if (r->deadline <= t) b += 1;
            }
            cr.push_back(a);
            if (p != pt) cd.push_back(b);
        }
        total += esym(cr, inst.k + 1);
        if (pt >= 0) total += esym(cd, inst.k);
    }
    return total;
}

std::vector<Violation> check_ip_constraints(const Instance& inst, const StarSolution& sol,
                                            const IpCheckOptions& opt) {
    if (count_ip_collections(inst) > opt.budget)
        throw EnumerationBudgetExceeded("too many candidate collections");
    ByPage bp(inst);
    auto crit = critical_index(inst);
    std::vector<std::vector<Violation>> per_t(static_cast<std::size_t>(inst.horizon + 1));
    if (opt.parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t <= inst.horizon; ++t)
            per_t[static_cast<std::size_t>(t)] = check_time(inst, bp, crit, sol, t, opt);
    } else {
        for (int t = 0; t <= inst.horizon; ++t)
            per_t[static_cast<std::size_t>(t)] = check_time(inst, bp, crit, sol, t, opt);
    }
    std::vector<Violation> out;
    for (auto& v : per_t) out.insert(out.end(), v.begin(), v.end());
    return out;
}

}  // namespace wpw

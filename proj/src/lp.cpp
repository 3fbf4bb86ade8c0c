#include "wpw/lp.hpp"

#include <algorithm>

namespace wpw {

LpSolver::LpSolver(const Instance& inst)
    : inst_(inst),
      delta_(1.0 / (inst.k + 1)),
      crit_(critical_index(inst)),
      by_page_(static_cast<std::size_t>(inst.n)),
      x_(static_cast<std::size_t>(inst.n), std::vector<double>(static_cast<std::size_t>(inst.horizon + 1), 0.0)),
      y_(static_cast<std::size_t>(inst.horizon + 1), 0.0),
      D_(static_cast<std::size_t>(inst.horizon + 1), std::vector<TimeInterval>(static_cast<std::size_t>(inst.n))) {
    for (const auto& r : inst.requests) by_page_[static_cast<std::size_t>(r.page)].push_back(&r);
    for (int p = 0; p < inst.n; ++p) kp_.emplace_back(p, inst.weight(p), inst.horizon);
}

double LpSolver::interval_sum(int p, const TimeInterval& iv) const {
    double s = 0;
    const auto& row = x_[static_cast<std::size_t>(p)];
    for (int t = std::max(0, iv.start); t <= iv.end; ++t) s += row[static_cast<std::size_t>(t)];
    return s;
}

double LpSolver::constraint_lhs(int t) const {
    int ci = crit_[static_cast<std::size_t>(t)];
    if (ci < 0) return 0;
    int pt = inst_.requests[static_cast<std::size_t>(ci)].page;
    double lhs = (inst_.n - inst_.k) * y_[static_cast<std::size_t>(t)];
    for (int p = 0; p < inst_.n; ++p)
        if (p != pt) lhs += std::min(1.0, interval_sum(p, D(p, t)));
    return lhs;
}

void LpSolver::process(int t) {
    if (t != next_t_) throw PreconditionViolated("LpSolver::process out of order");
    ++next_t_;
    if (t >= 1)
        for (int p = 0; p < inst_.n; ++p) kp_[static_cast<std::size_t>(p)].advance(t, by_page_[static_cast<std::size_t>(p)]);
    LpStepTrace tr;
    tr.t = t;
    int ci = crit_[static_cast<std::size_t>(t)];
    if (ci >= 0) {
        const Request& It = inst_.requests[static_cast<std::size_t>(ci)];
        std::vector<Participant> ps;
        for (int p = 0; p < inst_.n; ++p) {
            TimeInterval d = tau_and_D(kp_[static_cast<std::size_t>(p)].partition(), interval_of(It)).D;
            D_[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)] = d;
            if (p == It.page) continue;
            ps.push_back({p, to_double(inst_.weight(p)), interval_sum(p, d), 0});
        }
        CoveringParams prm;
        prm.requirement = inst_.n - inst_.k;
        prm.delta = delta_;
        prm.k = inst_.k;
        if (!It.penalty.is_hard()) prm.loss = to_double(It.penalty.value());
        double& y = y_[static_cast<std::size_t>(t)];
        CoveringOutcome o = covering_step(ps, y, prm);
        cost_ += o.cost;
        tr.tau_total = o.tau;
        for (const auto& q : ps) {
            if (q.raised <= 0) continue;
            x_[static_cast<std::size_t>(q.id)][static_cast<std::size_t>(t)] += q.raised;
            tr.raised.emplace_back(q.id, x_[static_cast<std::size_t>(q.id)][static_cast<std::size_t>(t)]);
        }
        tr.y = y;
    }
    trace_.push_back(std::move(tr));
}

void LpSolver::run() {
    while (next_t_ <= inst_.horizon) process(next_t_);
}

RoundedLp round_penalties(const LpSolver& lp) {
    const Instance& inst = lp.instance();
    RoundedLp r;
    r.x.assign(static_cast<std::size_t>(inst.n), std::vector<double>(static_cast<std::size_t>(inst.horizon + 1), 0.0));
    r.y.assign(static_cast<std::size_t>(inst.horizon + 1), 0);
    for (int t = 0; t < lp.processed(); ++t) {
        for (int p = 0; p < inst.n; ++p) {
            double v = std::min(1.0, 2.0 * lp.x(p, t));
            r.x[static_cast<std::size_t>(p)][static_cast<std::size_t>(t)] = v;
            r.cost += to_double(inst.weight(p)) * v;
        }
        r.y[static_cast<std::size_t>(t)] = lp.y(t) > 0.5 ? 1 : 0;
        int ci = lp.critical(t);
        if (r.y[static_cast<std::size_t>(t)] && ci >= 0)
            r.cost += to_double(inst.requests[static_cast<std::size_t>(ci)].penalty.value());
    }
    return r;
}

double rounded_lhs(const LpSolver& lp, const RoundedLp& r, int t) {
    const Instance& inst = lp.instance();
    int ci = lp.critical(t);
    if (ci < 0) return 0;
    int pt = inst.requests[static_cast<std::size_t>(ci)].page;
    double lhs = (inst.n - inst.k) * static_cast<double>(r.y[static_cast<std::size_t>(t)]);
    for (int p = 0; p < inst.n; ++p) {
        if (p == pt) continue;
        const TimeInterval& d = lp.D(p, t);
        double s = 0;
        for (int u = d.start; u <= d.end; ++u) s += r.x[static_cast<std::size_t>(p)][static_cast<std::size_t>(u)];
        lhs += std::min(1.0, s);
    }
    return lhs;
}

}  // namespace wpw

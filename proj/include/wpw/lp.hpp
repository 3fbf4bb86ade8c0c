#pragma once

#include "wpw/covering.hpp"
#include "wpw/ip.hpp"
#include "wpw/model.hpp"

#include <vector>

namespace wpw {

struct LpStepTrace {
    int t = 0;
    std::vector<std::pair<int, double>> raised;  // (page, x_{p,t})
    double y = 0;
    double tau_total = 0;
};

// Online fractional solver for the compact double-extension LP. Processes
// times in order; builds the K_p tiles itself so only the past is used.
class LpSolver {
public:
    explicit LpSolver(const Instance& inst);

    void process(int t);
    void run();

    int processed() const { return next_t_; }
    double delta() const { return delta_; }
    double x(int p, int t) const { return x_[static_cast<std::size_t>(p)][static_cast<std::size_t>(t)]; }
    double y(int t) const { return y_[static_cast<std::size_t>(t)]; }
    double interval_sum(int p, const TimeInterval& iv) const;
    // D^p_t as used at time t (meaningless for p = p_t).
    const TimeInterval& D(int p, int t) const {
        return D_[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
    }
    int critical(int t) const { return crit_[static_cast<std::size_t>(t)]; }
    double constraint_lhs(int t) const;
    double fractional_cost() const { return cost_; }
    const std::vector<LpStepTrace>& trace() const { return trace_; }
    const KpPartition& kp(int p) const { return kp_[static_cast<std::size_t>(p)].partition(); }
    const Instance& instance() const { return inst_; }

private:
    const Instance& inst_;
    double delta_;
    std::vector<int> crit_;
    std::vector<std::vector<const Request*>> by_page_;
    std::vector<KpBuilder> kp_;
    std::vector<std::vector<double>> x_;
    std::vector<double> y_;
    std::vector<std::vector<TimeInterval>> D_;
    std::vector<LpStepTrace> trace_;
    double cost_ = 0;
    int next_t_ = 0;
};

struct RoundedLp {
    std::vector<std::vector<double>> x;  // min(1, 2 x)
    std::vector<char> y;                 // y > 1/2
    double cost = 0;
};

RoundedLp round_penalties(const LpSolver& lp);
double rounded_lhs(const LpSolver& lp, const RoundedLp& r, int t);

}  // namespace wpw

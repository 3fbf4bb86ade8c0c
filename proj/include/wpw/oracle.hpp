#pragma once

#include "wpw/ip.hpp"
#include "wpw/model.hpp"

namespace wpw {

struct OracleOptions {
    int max_n = 6;
    int max_k = 3;
    int max_horizon = 10;
    double max_states = 4e6;  // per layer
};

struct OracleResult {
    Schedule schedule;
    Rat cost{0};
};

// Exact optimum by dynamic programming over (cache set, satisfied active
// requests). Throws BudgetExceeded outside the guards.
OracleResult optimal_schedule(const Instance& inst, const OracleOptions& opt = {});

// Enumerates every per-step (final set, transient set) sequence and prices
// each schedule with evaluate_cost. horizon <= 4, n <= 3.
Rat optimal_schedule_slow(const Instance& inst);

struct IpOracleOptions {
    int max_n = 4;
    int max_horizon = 6;
    double max_nodes = 5e7;
};

struct IpOracleResult {
    StarSolution solution;
    Rat cost{0};
};

// Exact optimum of the star/penalty IP on a normalized instance, by branch
// and bound over its clauses.
IpOracleResult optimal_ip(const Instance& inst, const IpOracleOptions& opt = {});

// Exact optimum of the compact form: for each critical t, either y_t = 1 or
// n - k pages p != p_t own a star in D^p_t.
Rat optimal_compact_ip(const Instance& inst);

}  // namespace wpw

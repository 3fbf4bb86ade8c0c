#pragma once

#include <optional>
#include <vector>

namespace wpw {

// One variable per participant: `sum` is its current interval total, and
// only the present-time variable is raised, at rate (sum + delta) / weight.
struct Participant {
    int id = 0;
    double weight = 0;
    double sum = 0;
    double raised = 0;
};

struct CoveringParams {
    double requirement = 0;
    double delta = 0.5;
    int k = 1;                    // cache size in the y rate
    std::optional<double> loss;   // L_t; nullopt means no y variable
    double tolerance = 1e-9;      // on the virtual clock, relative
};

struct CoveringOutcome {
    bool raised = false;
    double tau = 0;
    double cost = 0;
    double y_before = 0;
    double y_after = 0;
};

double covering_lhs(const std::vector<Participant>& ps, double requirement, double y);

// Runs the continuous multiplicative process until
// sum_i min(1, sum_i) + R y >= R. Throws InfeasibleCover when nothing can
// rise and NumericalStall when the event search fails.
CoveringOutcome covering_step(std::vector<Participant>& ps, double& y, const CoveringParams& prm);

}  // namespace wpw

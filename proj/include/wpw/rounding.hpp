#pragma once

#include "wpw/assembly.hpp"
#include "wpw/model.hpp"

#include <set>
#include <vector>

namespace wpw {

struct WeightedPage {
    int page = 0;
    Rat weight{0};
};

// First page of Z (by weight, then id) with
// w(U_{<= 2 w(p)}) <= 2 w(Z_{<= w(p)}). Throws NoCandidate otherwise.
int select_pstar(const std::vector<WeightedPage>& Z, const std::vector<WeightedPage>& U);

struct ConversionReport {
    int steps_gated = 0;        // times entering the full-cache branch
    int pstar_calls = 0;
    int no_candidate = 0;       // select_pstar failures (block skipped)
    int empty_z = 0;
    int transient_serves = 0;
    int edf_overflow = 0;       // EDF prefix above 6 w(p_dagger)
    int cache_invariant = 0;    // C(t+1) not inside C(t) + {p_t}
    int reentry_violations = 0; // persistent reload without a fresh request
    int stream_violations = 0;  // stars or flags revealed out of time
    int reverse_cancelled = 0;  // transient pairs removed by reverse delete
    int reverse_kept = 0;
};

Instance filter_penalized(const Instance& inst, const std::set<int>& penalized);
Instance harden(const Instance& inst);

// Non-overlapping per-page requests; throws OverlappingRequests otherwise.
Schedule convert_online_nonoverlap(const Instance& inst, StarStream& stream, ConversionReport* rep = nullptr);
Schedule convert_online(const Instance& inst, StarStream& stream, ConversionReport* rep = nullptr);
// Expects a drop_dominated instance and a full star set.
Schedule convert_offline(const Instance& inst, const StarSolution& stars, ConversionReport* rep = nullptr);

struct PipelineResult {
    Schedule schedule;  // original time axis
    CostReport cost;
    bool feasible = false;
    ConversionReport conversion;
    StarSolution stars;  // normalized time axis
    double lp_cost = 0;
    int short_times = 0;
    int deep_deficit = 0;
    int sparsity_breaches = 0;
};

PipelineResult run_offline_pipeline(const Instance& inst);
// With nonoverlap set the conversion is the disjoint-window variant.
PipelineResult run_online_pipeline(const Instance& inst, OnlineAssembleOptions opt = {}, bool nonoverlap = false);

}  // namespace wpw

#pragma once

#include "wpw/assembly.hpp"
#include "wpw/model.hpp"
#include "wpw/oracle.hpp"
#include "wpw/reductions.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wpw {

struct GenParams {
    std::string kind = "random";  // random, endpoints, gap, vc, classical-paging
    int n = 4;
    int k = 2;
    int horizon = 8;
    std::uint64_t seed = 1;
    Variant variant = Variant::wPwTw;  // random kind
    bool distinct_deadlines = false;   // random kind
    int max_weight = 4;
    int max_length = 3;                // random kind, window length bound
    Rat W{1000};                       // endpoints heavy weight
    int T = 0;                         // gap: number of intervals (0 = 4k^3)
    int N = 0;                         // gap: spacing (0 = smallest valid)
    std::optional<Graph> graph;        // vc; random connected graph on n vertices otherwise
};

// Deterministic in (params, seed). Throws BadParams.
Instance generate(const GenParams& gp);
Graph random_connected_graph(int vertices, std::uint64_t seed);

struct GapReport {
    int k = 0, T = 0, N = 0;
    Rat fractional_cost{0};
    Rat per_heavy_cost{0};
    Rat integral_lb{0};
    double ratio = 0;  // integral_lb / fractional_cost
    int covering_rows = 0;
    int packing_rows = 0;
};

// Builds the explicit fractional solution on the gap family and checks
// its covering and packing constraints. Throws ConstructionInfeasible.
GapReport verify_gap_instance(int k, int T, int N);

// Serves every request at its deadline only, evicting the cheapest
// resident page when the cache is full.
Schedule endpoint_only_schedule(const Instance& inst);

// Classical weighted paging (zero-length Hard windows) as interval cover
// over inter-request gaps, solved exactly by min-cost flow.
Rat classical_cover_cost(const Instance& inst);

struct ExperimentConfig {
    std::vector<GenParams> instances;
    std::vector<std::string> algorithms{"offline", "online"};
    OracleOptions oracle;
    bool with_oracle = true;
    bool with_ip_lb = true;
    bool timing = true;  // false writes runtime_ms = 0 for byte-stable output
    OnlineAssembleOptions online;
};

struct ExperimentRow {
    std::string instance_id;
    std::string kind;
    int n = 0, k = 0, T = 0;
    std::string algorithm;
    std::uint64_t seed = 0;
    std::optional<Rat> cost;
    std::optional<Rat> oracle_cost;
    std::optional<Rat> ip_lb;
    std::optional<double> ratio;
    double runtime_ms = 0;
    bool feasible = false;
    bool budget_exceeded = false;
    std::string error;
};

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg);         // OpenMP across instances
std::vector<ExperimentRow> run_experiment_serial(const ExperimentConfig& cfg);  // reference
std::string rows_to_csv(const std::vector<ExperimentRow>& rows);

// ratio convention: 0/0 = 1, positive/0 = infinity
double cost_ratio(const Rat& cost, const Rat& oracle);

}  // namespace wpw

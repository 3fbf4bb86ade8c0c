#pragma once

#include "wpw/covering.hpp"
#include "wpw/rational.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace wpw {

struct Tile {
    int page = 0;
    int start = 0;
    int end = 0;  // inclusive
    bool contains(int t) const { return start <= t && t <= end; }
};

struct CoverInstance {
    int n = 0;
    int horizon = 0;
    std::vector<Rat> weights;
    std::vector<Tile> tiles;
    std::vector<int> requirement;  // per time, size horizon + 1
    std::vector<int> excluded;     // per time page or -1; empty when unused

    bool has_exclusions() const;
    int excluded_at(int t) const;
    void validate() const;  // tiles of each page tile [0, horizon]
    Rat weight_of(std::size_t tile) const { return weights.at(static_cast<std::size_t>(tiles[tile].page)); }
};

struct CoverSolution {
    std::vector<std::size_t> selected;  // tile indices, sorted
    Rat weight{0};
    std::optional<double> lp_value;
};

// Inclusive tiles [b_i, b_{i+1} - 1], the last one ending at horizon.
std::vector<Tile> tiles_from_boundaries(int page, const std::vector<int>& boundaries, int horizon);

int coverage_at(const CoverInstance& ci, const std::vector<std::size_t>& selected, int t);
bool cover_feasible(const CoverInstance& ci, const std::vector<std::size_t>& selected);
Rat cover_weight(const CoverInstance& ci, const std::vector<std::size_t>& selected);

// Exact optimum by min-cost flow on the time axis; no exclusions.
CoverSolution solve_offline(const CoverInstance& ci);

// Same, using only the listed tiles.
CoverSolution solve_offline_restricted(const CoverInstance& ci, const std::vector<std::size_t>& allowed);

// Exact optimum by dynamic programming over selected-tile masks; honours
// exclusions. Exponential in n.
CoverSolution solve_exhaustive(const CoverInstance& ci);

// LP optimum with exclusions, rounded: tiles with z >= 1/2, then an exact
// exclusion-free cover of twice the residual requirement.
CoverSolution solve_offline_excl(const CoverInstance& ci);

// Exact optimum of the fractional relaxation, as a double.
double cover_lp_value(const CoverInstance& ci);

struct OnlineCoverOptions {
    double rounding_constant = 3.0;
    std::uint64_t seed = 1;
};

// Online tiled cover through the weighted-paging view. Without exclusions
// a zero-weight page p0 is requested between real steps, so the real
// constraint becomes "R tiles covering t" rather than "R tiles other than
// the one just requested".
class OnlineCover {
public:
    OnlineCover(std::vector<Rat> weights, int cache, bool exclusions, OnlineCoverOptions opt = {});

    // Pages in `closed` had a tile end at t - 1; fresh tiles start at t.
    // Returns pages whose (new) current tile was bought by this call.
    std::vector<int> begin_time(int t, const std::vector<int>& closed, int requirement);
    // Enforces R tiles over current tiles, skipping `excluded` (or -1).
    std::vector<int> require(int t, int requirement, int excluded);

    double z(int page) const { return z_[static_cast<std::size_t>(page)]; }
    bool bought(int page) const { return bought_[static_cast<std::size_t>(page)] != 0; }
    double fractional_cost() const { return frac_cost_; }
    Rat integral_cost() const { return int_cost_; }
    int n() const { return n_; }

private:
    std::vector<int> constraint(int requirement, int skip, bool with_p0);
    void fresh_tile(int page);

    int n_;
    bool exclusions_;
    double delta_;
    double scale_;
    std::vector<Rat> weights_;
    std::vector<double> z_;
    std::vector<double> theta_;
    std::vector<char> bought_;
    double p0_sum_ = 0;
    double frac_cost_ = 0;
    Rat int_cost_{0};
    std::mt19937_64 rng_;
};

// Runs OnlineCover over a whole tiled instance and reports the bought tiles.
struct OnlineCoverRun {
    CoverSolution solution;
    double fractional_cost = 0;
    std::vector<double> z;  // final fractional value per tile
};
OnlineCoverRun run_online_cover(const CoverInstance& ci, int cache, OnlineCoverOptions opt = {});

}  // namespace wpw

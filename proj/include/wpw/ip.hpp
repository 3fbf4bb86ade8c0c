#pragma once

#include "wpw/model.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace wpw {

struct TimeInterval {
    int start = 0;
    int end = 0;

    bool contains(int t) const { return start <= t && t <= end; }
    bool contains(const TimeInterval& o) const { return start <= o.start && o.end <= end; }
    bool operator==(const TimeInterval&) const = default;
};

inline TimeInterval interval_of(const Request& r) { return {r.start, r.deadline}; }

TimeInterval right_extension(const TimeInterval& I, int t);
TimeInterval double_extension(const TimeInterval& I, const TimeInterval& critical, int t);

struct Star {
    int page = 0;
    int time = 0;
    auto operator<=>(const Star&) const = default;
};

struct StarSolution {
    std::set<Star> stars;
    // page -> time the promise was made; the promised star lies strictly
    // after the current time and hits every open request of the page.
    std::map<int, int> pending_future;
    std::set<int> penalties;  // req ids with y = 1

    bool hits(int page, const TimeInterval& iv) const;
    bool has_penalty(int req_id) const { return penalties.count(req_id) != 0; }
    Rat star_cost(const Instance& inst) const;
    Rat penalty_cost(const Instance& inst) const;
    Rat cost(const Instance& inst) const { return star_cost(inst) + penalty_cost(inst); }
    void merge(const StarSolution& o);
};

// Half-open tiles [b_i, b_{i+1}); the last tile runs to the horizon.
struct KpPartition {
    int page = 0;
    int horizon = 0;
    std::vector<int> boundaries{0};

    std::size_t tile_of(int t) const;
    int tile_start(std::size_t i) const { return boundaries[i]; }
    // Exclusive end; horizon + 1 for the open last tile.
    int tile_end(std::size_t i) const;
};

class KpBuilder {
public:
    KpBuilder(int page, Rat weight, int horizon) : page_(page), weight_(weight) {
        part_.page = page;
        part_.horizon = horizon;
    }
    // Processes time t >= 1 against the page's requests with deadline <= t.
    // Returns true when a tile [t*, t) closes.
    bool advance(int t, const std::vector<const Request*>& page_requests);
    const KpPartition& partition() const { return part_; }
    int open_start() const { return part_.boundaries.back(); }

private:
    int page_;
    Rat weight_;
    KpPartition part_;
};

KpPartition build_kp(int page, const Rat& weight, int horizon, const std::vector<Request>& requests);
std::vector<KpPartition> build_all_kp(const Instance& inst);

struct TauD {
    int tau = 0;
    TimeInterval D;
    bool prior = false;  // false when no tile ends before s(I_t) and tau fell back to 0
};

// Uses only boundaries already present in kp, so it is valid online.
TauD tau_and_D(const KpPartition& kp, const TimeInterval& critical);

// Closed tiles [b_i, b_{i+1}] sharing endpoints; the last runs to the horizon.
struct DpPartition {
    int page = 0;
    int horizon = 0;
    std::vector<int> boundaries{0};

    // Tile used for coverage at t: the one with b_i <= t < b_{i+1}.
    std::size_t tile_of(int t) const;
    int tile_start(std::size_t i) const { return boundaries[i]; }
    int tile_end(std::size_t i) const;  // closed end; horizon for the last tile
};

class DpBuilder {
public:
    DpBuilder(int page, int horizon) {
        part_.page = page;
        part_.horizon = horizon;
    }
    // Returns true when tile [t*, t] is added.
    bool feed(int t, const TimeInterval& D);
    const DpPartition& partition() const { return part_; }

private:
    DpPartition part_;
    int last_start_ = -1;
};

DpPartition build_dp(int page, int horizon, const std::vector<std::pair<int, TimeInterval>>& stream);

StarSolution schedule_to_stars(const Instance& inst, const Schedule& sched);

struct Violation {
    int time = 0;
    char kind = 'R';  // 'R' or 'D'
    std::vector<int> collection;
};

struct IpCheckOptions {
    double budget = 1e6;
    bool parallel = false;
    bool check_r = true;
    bool check_d = true;
};

// Enumerates every (R1p) and (D1p) constraint. A request counts as
// covered by y_I = 1 only when its penalty is finite.
std::vector<Violation> check_ip_constraints(const Instance& inst, const StarSolution& sol,
                                            const IpCheckOptions& opt = {});

// Number of candidate collections, for the budget guard.
double count_ip_collections(const Instance& inst);

}  // namespace wpw

#pragma once

#include "wpw/errors.hpp"
#include "wpw/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace wpw {

enum class Variant { wPwTw, wPwTwP, wPwD };

std::string to_string(Variant v);
Variant parse_variant(const std::string& s);

class Penalty {
public:
    static Penalty hard() { return Penalty(); }
    static Penalty finite(Rat v);

    bool is_hard() const { return hard_; }
    const Rat& value() const;

    bool operator==(const Penalty& o) const {
        return hard_ == o.hard_ && (hard_ || value_ == o.value_);
    }

private:
    bool hard_ = true;
    Rat value_{0};
};

struct Request {
    int id = 0;
    int page = 0;
    int start = 0;
    int deadline = 0;
    Penalty penalty;

    bool contains_time(int t) const { return start <= t && t <= deadline; }
    bool contains(const Request& o) const { return start <= o.start && o.deadline <= deadline; }
    bool strictly_contains(const Request& o) const {
        return contains(o) && (start < o.start || o.deadline < deadline);
    }
    bool overlaps(const Request& o) const { return start <= o.deadline && o.start <= deadline; }
};

// Step function over integer time: value of the last breakpoint at or
// before t, zero before the first breakpoint.
struct DelayRequest {
    int id = 0;
    int page = 0;
    int arrival = 0;
    std::vector<std::pair<int, Rat>> loss;

    Rat loss_at(int t) const;
};

struct Instance {
    Variant variant = Variant::wPwTw;
    int n = 0;
    int k = 1;
    int horizon = 0;
    std::vector<Rat> weights;
    std::vector<Request> requests;
    std::vector<DelayRequest> delays;

    void validate() const;
    const Rat& weight(int p) const { return weights.at(static_cast<std::size_t>(p)); }
};

enum class Action { Load, Evict };

struct ScheduleEvent {
    int time = 0;
    int seq = 0;
    Action action = Action::Load;
    int page = 0;

    bool operator==(const ScheduleEvent&) const = default;
};

struct Schedule {
    std::vector<ScheduleEvent> events;
    bool operator==(const Schedule&) const = default;
};

// Appends events while numbering seq within each timestep.
class ScheduleBuilder {
public:
    void load(int t, int page) { push(t, Action::Load, page); }
    void evict(int t, int page) { push(t, Action::Evict, page); }
    void serve_transient(int t, int page) {
        load(t, page);
        evict(t, page);
    }
    const Schedule& schedule() const { return sched_; }
    Schedule take() { return std::move(sched_); }

private:
    void push(int t, Action a, int page);
    Schedule sched_;
    int last_time_ = -1;
    int next_seq_ = 0;
};

struct Residency {
    int n = 0;
    int horizon = 0;
    // during[t][p]: p is in the cache at some point of timestep t.
    std::vector<std::vector<char>> during;
    // after[t][p]: p is in the cache once all events of t have run.
    std::vector<std::vector<char>> after;

    bool resident(int t, int p) const {
        return during[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)] != 0;
    }
};

Residency replay(const Instance& inst, const Schedule& sched);

struct FeasReport {
    bool feasible = true;
    std::vector<std::optional<int>> served;        // per request index
    std::vector<std::optional<int>> delay_served;  // per delay request index
    std::vector<int> unserved_hard;                // req ids
};

FeasReport check_feasibility(const Instance& inst, const Schedule& sched);

struct CostReport {
    Rat eviction_cost{0};
    Rat penalty_cost{0};
    Rat delay_cost{0};
    Rat total{0};
    std::map<int, std::optional<int>> served;
    std::set<int> unserved;
};

// Unserved finite penalties are charged; an unserved Hard request throws
// InfeasibleSchedule. A delay request never served pays F(horizon + 1).
CostReport evaluate_cost(const Instance& inst, const Schedule& sched);

struct TimeMap {
    std::vector<int> base;   // original t -> first normalized time
    std::vector<int> width;  // original t -> number of normalized times
    std::vector<int> orig;   // normalized u -> original time

    int to_norm(int t) const { return base.at(static_cast<std::size_t>(t)); }
    int to_orig(int u) const { return orig.at(static_cast<std::size_t>(u)); }
    Schedule forward(const Schedule& s) const;
    Schedule back(const Schedule& s) const;
};

struct Normalized {
    Instance instance;
    TimeMap map;
};

Normalized normalize_timeline(const Instance& inst);
bool is_normalized(const Instance& inst);

// Index of the request with deadline t in a normalized instance, or -1.
std::vector<int> critical_index(const Instance& inst);

}  // namespace wpw

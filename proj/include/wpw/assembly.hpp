#pragma once

#include "wpw/cover.hpp"
#include "wpw/ip.hpp"
#include "wpw/lp.hpp"
#include "wpw/model.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace wpw {

struct NonNestedNet {
    std::vector<int> net;
    std::map<int, int> phi;  // non-net time -> rightmost net time nested inside
};

class NetBuilder {
public:
    // Returns nullopt when t joins the net, else phi(t).
    std::optional<int> feed(int t, const TimeInterval& critical);
    const NonNestedNet& net() const { return net_; }

private:
    NonNestedNet net_;
    std::vector<TimeInterval> ivs_;
};

NonNestedNet build_net(const std::vector<std::pair<int, TimeInterval>>& stream);

// D^p_t for every page at every critical time.
struct DTable {
    std::vector<int> crit_page;                   // -1 where no critical request
    std::vector<std::vector<TimeInterval>> D;     // [t][p]
};

DTable build_dtable(const Instance& inst, const std::vector<KpPartition>& kp);
std::set<int> pages_hit(const std::set<Star>& S, const DTable& dt, int t);
int demand_met(const std::set<Star>& S, const DTable& dt, int t);  // |P(S,t) \ {p_t}|

// One step of the extension procedure at a non-net time.
void extend_at(int t, int phi_t, const std::set<Star>& A, std::set<Star>& B, const DTable& dt);
std::set<Star> extend_stars(const std::vector<int>& times, const NonNestedNet& net, const std::set<Star>& A,
                            const DTable& dt);

// Adds, for each K_p tile holding a trigger, the star at the tile's right
// end (when it lies inside the horizon) and flags the finite requests that
// start after the first trigger and end before the tile does.
StarSolution close_kp_tiles(const Instance& inst, const std::vector<KpPartition>& kp,
                            const std::set<Star>& triggers);

StarSolution compact_to_full_dext(const Instance& inst, const std::vector<KpPartition>& kp,
                                  const std::set<Star>& stars, const std::set<int>& flags);

struct RextResult {
    StarSolution solution;
    CoverInstance cover;
    CoverSolution chosen;
};

CoverInstance kp_cover_instance(const Instance& inst, const std::vector<KpPartition>& kp);
RextResult solve_rext_offline(const Instance& inst, const std::vector<KpPartition>& kp);

struct PagecoverResult {
    std::set<Star> stars;  // B* united with B1*
    NonNestedNet net, net1;
    std::vector<int> T1;
    std::set<Star> A, B, A1, B1;
    int short_times = 0;   // times still below the requirement
    int deep_deficit = 0;  // times more than one below after the first pass
};

// Offline two-invocation scheme over the given times (those with y = 0).
PagecoverResult solve_pagecover(const Instance& inst, const DTable& dt, const std::vector<int>& T);

struct AssembleReport {
    StarSolution solution;
    double lp_cost = 0;
    int short_times = 0;
    int deep_deficit = 0;
    std::vector<int> penalized_by_lp;  // req ids with rounded y = 1
};

AssembleReport assemble_offline(const Instance& inst);

// What the online assembler exposes after time t.
struct StarStep {
    int t = 0;
    std::vector<Star> added;
    std::set<int> pending_pages;
    std::vector<int> flagged;  // req ids whose y became 1 at t
};

class StarStream {
public:
    virtual ~StarStream() = default;
    virtual StarStep next(int t) = 0;
};

// Stars of a fixed solution revealed at their own times, with penalty
// flags revealed at request deadlines. No pending stars.
class FixedStarStream : public StarStream {
public:
    FixedStarStream(const Instance& inst, StarSolution sol);
    StarStep next(int t) override;

private:
    const Instance& inst_;
    StarSolution sol_;
};

struct OnlineAssembleOptions {
    OnlineCoverOptions cover;
};

class OnlineAssembler : public StarStream {
public:
    explicit OnlineAssembler(const Instance& inst, OnlineAssembleOptions opt = {});
    StarStep next(int t) override;

    const StarSolution& solution() const { return sol_; }
    int short_times() const { return short_; }
    int deep_deficit() const { return deep_; }
    // Post-hoc check of the sparsity promise; returns the number of breaches.
    int sparsity_breaches() const;
    double lp_cost() const { return lp_.fractional_cost(); }

private:
    struct Invocation {
        NetBuilder net;
        std::vector<DpBuilder> dp;
        OnlineCover cover;
        std::set<Star> A, B;
        Invocation(const Instance& inst, const OnlineCoverOptions& o);
    };
    std::vector<Star> run_invocation(Invocation& inv, int t);
    void add_star(int p, int t, bool trigger, StarStep& step);

    const Instance& inst_;
    int R_;
    std::vector<int> crit_;
    std::vector<std::vector<const Request*>> by_page_;
    std::vector<KpBuilder> kp_;
    std::vector<std::optional<int>> mark_;
    OnlineCover rcover_;
    LpSolver lp_;
    Invocation inv0_, inv1_;
    DTable dt_;
    StarSolution sol_;
    int short_ = 0;
    int deep_ = 0;
    struct PendingSpan {
        int page;
        int from;
        int to;  // exclusive; horizon + 1 when never resolved
    };
    std::vector<PendingSpan> spans_;
    std::vector<int> open_span_;
    int next_t_ = 0;
};

}  // namespace wpw

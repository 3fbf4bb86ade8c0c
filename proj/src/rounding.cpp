#include "wpw/rounding.hpp"

#include "wpw/errors.hpp"
#include "wpw/reductions.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace wpw {

namespace {

std::size_t ix(int v) { return static_cast<std::size_t>(v); }

enum class Mode { NonOverlap, General, Offline };

struct Tagged {
    ScheduleEvent ev;
    bool serve1 = false;
};

// What the converter knows about the star solution so far.
struct StarView {
    std::set<Star> stars;
    std::set<int> pending;

    bool hit_any(int p, const TimeInterval& iv) const {
        if (pending.count(p)) return true;
        auto it = stars.lower_bound({p, iv.start});
        return it != stars.end() && it->page == p && it->time <= iv.end;
    }
    bool hit_upto(int p, const TimeInterval& iv, int t) const {
        return hit_any_closed(p, {iv.start, std::min(iv.end, t)});
    }
    bool hit_any_closed(int p, const TimeInterval& iv) const {
        if (iv.end < iv.start) return false;
        auto it = stars.lower_bound({p, iv.start});
        return it != stars.end() && it->page == p && it->time <= iv.end;
    }
};

class Engine {
public:
    Engine(const Instance& inst, Mode mode, ConversionReport& rep)
        : inst_(inst), mode_(mode), rep_(rep), crit_(critical_index(inst)) {
        by_page_.resize(ix(inst.n));
        for (std::size_t j = 0; j < inst.requests.size(); ++j) {
            by_page_[ix(inst.requests[j].page)].push_back(j);
            id_to_idx_[inst.requests[j].id] = j;
        }
        sat_.assign(inst.requests.size(), 0);
        removed_.assign(inst.requests.size(), 0);
        last_evict_.assign(ix(inst.n), -1);
    }

    StarView view;

    void remove(int req_id) {
        auto it = id_to_idx_.find(req_id);
        if (it != id_to_idx_.end()) removed_[it->second] = 1;
    }

    void step(int t);
    std::vector<Tagged>& events() { return events_; }

private:
    bool satisfied(std::size_t j) const {
        int p = inst_.requests[j].page;
        return sat_[j] || cache_.count(p) || touched_.count(p);
    }
    Rat w(int p) const { return inst_.weight(p); }
    void emit(int t, Action a, int p, bool serve1) { events_.push_back({{t, 0, a, p}, serve1}); }
    void evict(int t, int p) {
        if (!cache_.erase(p)) return;
        touched_.insert(p);  // resident during t until now
        emit(t, Action::Evict, p, false);
        last_evict_[ix(p)] = t;
    }
    void serve(int t, int p, bool serve1) {
        if (cache_.count(p) || touched_.count(p)) return;
        if (static_cast<int>(cache_.size()) >= inst_.k) throw PreconditionViolated("transient service on a full cache");
        emit(t, Action::Load, p, serve1);
        emit(t, Action::Evict, p, serve1);
        touched_.insert(p);
        ++rep_.transient_serves;
    }
    std::optional<std::size_t> previous_request(int p, int t) const;
    // Penalized requests are gone once flagged, so they dominate nothing.
    bool dominating(std::size_t a) const {
        for (std::size_t b : by_page_[ix(inst_.requests[a].page)])
            if (b != a && !removed_[b] && inst_.requests[a].strictly_contains(inst_.requests[b])) return true;
        return false;
    }

    const Instance& inst_;
    Mode mode_;
    ConversionReport& rep_;
    std::vector<int> crit_;
    std::vector<std::vector<std::size_t>> by_page_;
    std::map<int, std::size_t> id_to_idx_;
    std::vector<char> sat_, removed_;
    std::vector<int> last_evict_;
    std::set<int> cache_;
    std::set<int> touched_;
    std::vector<Tagged> events_;
};

std::optional<std::size_t> Engine::previous_request(int p, int t) const {
    std::optional<std::size_t> best;
    for (std::size_t j : by_page_[ix(p)]) {
        const Request& r = inst_.requests[j];
        if (removed_[j] || r.deadline >= t) continue;
        if (mode_ == Mode::General && dominating(j)) continue;
        if (!best || r.deadline > inst_.requests[*best].deadline) best = j;
    }
    return best;
}

void Engine::step(int t) {
    touched_.clear();
    const std::set<int> start = cache_;
    int c = crit_[ix(t)];
    if (c >= 0 && !removed_[ix(c)]) {
        const Request& It = inst_.requests[ix(c)];
        const int pt = It.page;
        if (static_cast<int>(cache_.size()) >= inst_.k && !satisfied(ix(c))) {
            ++rep_.steps_gated;
            int pmin = *std::min_element(cache_.begin(), cache_.end(), [&](int a, int b) {
                return w(a) != w(b) ? w(a) < w(b) : a < b;
            });
            evict(t, pmin);
            if (w(pt) <= 2 * w(pmin)) {
                std::vector<WeightedPage> Z;
                for (int p : start) {
                    auto j = previous_request(p, t);
                    if (!j) continue;
                    TimeInterval d = double_extension(interval_of(inst_.requests[*j]), interval_of(It), t);
                    if (view.hit_upto(p, d, t)) Z.push_back({p, w(p)});
                }
                // one unsatisfied active request per page, earliest deadline
                std::map<int, std::size_t> U;
                for (std::size_t j = 0; j < inst_.requests.size(); ++j) {
                    const Request& r = inst_.requests[j];
                    if (removed_[j] || !r.contains_time(t) || satisfied(j)) continue;
                    auto it = U.find(r.page);
                    if (it == U.end()) U[r.page] = j;
                    else {
                        const Request& o = inst_.requests[it->second];
                        if (std::pair(r.deadline, r.id) < std::pair(o.deadline, o.id)) it->second = j;
                    }
                }
                std::vector<std::size_t> Uo, Uhit;
                for (const auto& [p, j] : U) {
                    if (view.hit_any(p, interval_of(inst_.requests[j]))) Uhit.push_back(j);
                    else Uo.push_back(j);
                }
                if (mode_ != Mode::General) {
                    for (std::size_t j : Uhit) serve(t, inst_.requests[j].page, true);
                } else if (std::find(Uo.begin(), Uo.end(), ix(c)) == Uo.end()) {
                    std::vector<std::size_t> rest;
                    for (std::size_t j : Uhit) {
                        const Request& r = inst_.requests[j];
                        if (view.hit_upto(r.page, interval_of(r), t)) serve(t, r.page, true);
                        else rest.push_back(j);
                    }
                    if (Z.empty()) {
                        ++rep_.empty_z;
                    } else {
                        auto dag = *std::min_element(Z.begin(), Z.end(), [](const WeightedPage& a, const WeightedPage& b) {
                            return a.weight != b.weight ? a.weight < b.weight : a.page < b.page;
                        });
                        evict(t, dag.page);
                        std::vector<std::size_t> cand;
                        for (std::size_t j : rest)
                            if (w(inst_.requests[j].page) <= 2 * dag.weight) cand.push_back(j);
                        std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
                            const Request& ra = inst_.requests[a];
                            const Request& rb = inst_.requests[b];
                            return std::pair(ra.deadline, ra.id) < std::pair(rb.deadline, rb.id);
                        });
                        Rat total{0};
                        for (std::size_t j : cand) {
                            Rat nw = total + w(inst_.requests[j].page);
                            if (nw > 4 * dag.weight) break;
                            total = nw;
                            serve(t, inst_.requests[j].page, false);
                        }
                        if (total > 6 * dag.weight) ++rep_.edf_overflow;
                    }
                }
                std::vector<WeightedPage> Uw;
                for (std::size_t j : Uo) Uw.push_back({inst_.requests[j].page, w(inst_.requests[j].page)});
                ++rep_.pstar_calls;
                try {
                    int ps = select_pstar(Z, Uw);
                    for (const auto& z : Z)
                        if (z.weight <= w(ps)) evict(t, z.page);
                    for (const auto& u : Uw)
                        if (u.weight <= 2 * w(ps)) serve(t, u.page, false);
                } catch (const NoCandidate&) {
                    ++rep_.no_candidate;
                }
            }
        }
        if (!satisfied(ix(c))) {
            if (static_cast<int>(cache_.size()) >= inst_.k) throw PreconditionViolated("retain on a full cache");
            bool fresh = false;
            for (std::size_t j : by_page_[ix(pt)]) {
                const Request& r = inst_.requests[j];
                if (r.start > last_evict_[ix(pt)] && r.deadline <= t) fresh = true;
            }
            if (!fresh) ++rep_.reentry_violations;
            cache_.insert(pt);
            emit(t, Action::Load, pt, false);
        }
        for (int p : cache_)
            if (!start.count(p) && p != pt) ++rep_.cache_invariant;
    }
    for (std::size_t j = 0; j < inst_.requests.size(); ++j)
        if (inst_.requests[j].contains_time(t) && satisfied(j)) sat_[j] = 1;
}

Schedule finish(const std::vector<Tagged>& evs) {
    ScheduleBuilder b;
    for (const auto& e : evs) {
        if (e.ev.action == Action::Load) b.load(e.ev.time, e.ev.page);
        else b.evict(e.ev.time, e.ev.page);
    }
    return b.take();
}

Schedule run_stream(const Instance& inst, StarStream& stream, Mode mode, ConversionReport* rep) {
    ConversionReport local;
    ConversionReport& r = rep ? *rep : local;
    Engine eng(inst, mode, r);
    std::map<int, int> deadline_of;
    for (const auto& q : inst.requests) deadline_of[q.id] = q.deadline;
    for (int t = 0; t <= inst.horizon; ++t) {
        StarStep s = stream.next(t);
        for (const Star& st : s.added) {
            if (st.time != t) ++r.stream_violations;
            eng.view.stars.insert(st);
        }
        eng.view.pending = s.pending_pages;
        for (int id : s.flagged) {
            auto it = deadline_of.find(id);
            if (it != deadline_of.end() && it->second != t) ++r.stream_violations;
            eng.remove(id);
        }
        eng.step(t);
    }
    return finish(eng.events());
}

}  // namespace

int select_pstar(const std::vector<WeightedPage>& Z, const std::vector<WeightedPage>& U) {
    std::vector<WeightedPage> order = Z;
    std::sort(order.begin(), order.end(), [](const WeightedPage& a, const WeightedPage& b) {
        return a.weight != b.weight ? a.weight < b.weight : a.page < b.page;
    });
    for (const auto& c : order) {
        Rat lhs{0}, rhs{0};
        for (const auto& u : U)
            if (u.weight <= 2 * c.weight) lhs += u.weight;
        for (const auto& z : Z)
            if (z.weight <= c.weight) rhs += z.weight;
        if (lhs <= 2 * rhs) return c.page;
    }
    throw NoCandidate("no page satisfies the selection inequality");
}

Instance filter_penalized(const Instance& inst, const std::set<int>& penalized) {
    Instance out = inst;
    out.requests.clear();
    for (const auto& r : inst.requests)
        if (!penalized.count(r.id)) out.requests.push_back(r);
    return out;
}

Instance harden(const Instance& inst) {
    Instance out = inst;
    out.variant = Variant::wPwTw;
    for (auto& r : out.requests) r.penalty = Penalty::hard();
    return out;
}

Schedule convert_online_nonoverlap(const Instance& inst, StarStream& stream, ConversionReport* rep) {
    for (std::size_t a = 0; a < inst.requests.size(); ++a)
        for (std::size_t b = a + 1; b < inst.requests.size(); ++b)
            if (inst.requests[a].page == inst.requests[b].page && inst.requests[a].overlaps(inst.requests[b]))
                throw OverlappingRequests("requests " + std::to_string(inst.requests[a].id) + " and " +
                                          std::to_string(inst.requests[b].id) + " overlap");
    return run_stream(inst, stream, Mode::NonOverlap, rep);
}

Schedule convert_online(const Instance& inst, StarStream& stream, ConversionReport* rep) {
    return run_stream(inst, stream, Mode::General, rep);
}

Schedule convert_offline(const Instance& inst, const StarSolution& stars, ConversionReport* rep) {
    ConversionReport local;
    ConversionReport& r = rep ? *rep : local;
    Engine eng(inst, Mode::Offline, r);
    eng.view.stars = stars.stars;
    for (int t = 0; t <= inst.horizon; ++t) eng.step(t);
    auto& evs = eng.events();

    // reverse delete over the serve1 transients
    std::vector<std::set<int>> T(ix(inst.n));
    for (const auto& e : evs)
        if (e.serve1 && e.ev.action == Action::Load) T[ix(e.ev.page)].insert(e.ev.time);
    std::vector<Tagged> others;
    for (const auto& e : evs)
        if (!e.serve1) others.push_back(e);
    Residency base = replay(inst, finish(others));
    std::vector<std::set<int>> keep(ix(inst.n));
    for (int p = 0; p < inst.n; ++p) {
        const auto& Tp = T[ix(p)];
        if (Tp.empty()) continue;
        std::vector<const Request*> sat;
        for (const auto& q : inst.requests) {
            if (q.page != p) continue;
            bool own = false;
            for (int u = q.start; u <= q.deadline && !own; ++u) own = base.resident(u, p);
            auto it = Tp.lower_bound(q.start);
            if (!own && it != Tp.end() && *it <= q.deadline) sat.push_back(&q);
        }
        std::sort(sat.begin(), sat.end(), [](const Request* a, const Request* b) {
            return std::pair(a->deadline, a->id) < std::pair(b->deadline, b->id);
        });
        int last_end = -1;
        for (const Request* q : sat) {
            if (q->start <= last_end) continue;
            last_end = q->deadline;
            for (int x : {q->start, q->deadline}) {
                auto hi = Tp.lower_bound(x);
                if (hi != Tp.end()) keep[ix(p)].insert(*hi);
                auto lo = Tp.upper_bound(x);
                if (lo != Tp.begin()) keep[ix(p)].insert(*std::prev(lo));
            }
        }
    }
    std::vector<Tagged> out;
    for (const auto& e : evs) {
        if (e.serve1 && !keep[ix(e.ev.page)].count(e.ev.time)) {
            if (e.ev.action == Action::Load) ++r.reverse_cancelled;
            continue;
        }
        if (e.serve1 && e.ev.action == Action::Load) ++r.reverse_kept;
        out.push_back(e);
    }
    return finish(out);
}

namespace {

struct Prepared {
    Instance working;  // normalized interval instance with penalties, requested pages only
    TimeMap map;
    std::vector<int> page_of;  // working page -> original page
};

// Pages that are never requested play no role; dropping them keeps the
// covers from paying for them.
Prepared prepare(const Instance& inst) {
    Instance base = inst;
    if (inst.variant == Variant::wPwD) base = delay_to_penalties(inst).instance;
    std::vector<int> id(ix(base.n), -1);
    Prepared pr;
    for (const auto& r : base.requests) id[ix(r.page)] = 0;
    if (base.requests.empty()) id[0] = 0;
    Instance packed = base;
    packed.weights.clear();
    for (int p = 0; p < base.n; ++p) {
        if (id[ix(p)] < 0) continue;
        id[ix(p)] = static_cast<int>(pr.page_of.size());
        pr.page_of.push_back(p);
        packed.weights.push_back(base.weight(p));
    }
    packed.n = static_cast<int>(pr.page_of.size());
    for (auto& r : packed.requests) r.page = id[ix(r.page)];
    Normalized nz = normalize_timeline(packed);
    pr.working = std::move(nz.instance);
    pr.map = std::move(nz.map);
    return pr;
}

Schedule restore(const Prepared& pr, const Schedule& s) {
    Schedule out = pr.map.back(s);
    for (auto& e : out.events) e.page = pr.page_of[ix(e.page)];
    return out;
}

void finalize(const Instance& original, PipelineResult& res) {
    FeasReport f = check_feasibility(original, res.schedule);
    res.feasible = f.feasible;
    if (res.feasible) res.cost = evaluate_cost(original, res.schedule);
}

}  // namespace

PipelineResult run_offline_pipeline(const Instance& inst) {
    inst.validate();
    PipelineResult res;
    Prepared pr = prepare(inst);
    AssembleReport ar = assemble_offline(pr.working);
    res.stars = ar.solution;
    res.lp_cost = ar.lp_cost;
    res.short_times = ar.short_times;
    res.deep_deficit = ar.deep_deficit;
    Instance work = drop_dominated(harden(filter_penalized(pr.working, ar.solution.penalties)));
    Schedule s = convert_offline(work, ar.solution, &res.conversion);
    res.schedule = restore(pr, s);
    finalize(inst, res);
    return res;
}

PipelineResult run_online_pipeline(const Instance& inst, OnlineAssembleOptions opt, bool nonoverlap) {
    inst.validate();
    PipelineResult res;
    Prepared pr = prepare(inst);
    OnlineAssembler asmb(pr.working, opt);
    Schedule s = nonoverlap ? convert_online_nonoverlap(pr.working, asmb, &res.conversion)
                            : convert_online(pr.working, asmb, &res.conversion);
    res.stars = asmb.solution();
    res.lp_cost = asmb.lp_cost();
    res.short_times = asmb.short_times();
    res.deep_deficit = asmb.deep_deficit();
    res.sparsity_breaches = asmb.sparsity_breaches();
    res.schedule = restore(pr, s);
    finalize(inst, res);
    return res;
}

}  // namespace wpw

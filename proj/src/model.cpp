#include "wpw/model.hpp"

#include <algorithm>
#include <numeric>

namespace wpw {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::wPwTw: return "wPwTw";
        case Variant::wPwTwP: return "wPwTwP";
        case Variant::wPwD: return "wPwD";
    }
    return "?";
}

Variant parse_variant(const std::string& s) {
    if (s == "wPwTw") return Variant::wPwTw;
    if (s == "wPwTwP") return Variant::wPwTwP;
    if (s == "wPwD") return Variant::wPwD;
    throw ParseError("unknown variant '" + s + "'");
}

Penalty Penalty::finite(Rat v) {
    if (v < 0) throw InvalidInstance("negative penalty");
    Penalty p;
    p.hard_ = false;
    p.value_ = v;
    return p;
}

const Rat& Penalty::value() const {
    if (hard_) throw std::logic_error("value() of a Hard penalty");
    return value_;
}

Rat DelayRequest::loss_at(int t) const {
    Rat v{0};
    for (const auto& [bt, bv] : loss) {
        if (bt > t) break;
        v = bv;
    }
    return v;
}

void Instance::validate() const {
    if (n < 1) throw InvalidInstance("n must be positive");
    if (k < 1) throw InvalidInstance("k must be positive");
    if (horizon < 0) throw InvalidInstance("negative horizon");
    if (weights.size() != static_cast<std::size_t>(n)) throw InvalidInstance("weights size != n");
    for (const auto& w : weights)
        if (w <= 0) throw InvalidInstance("weights must be positive");
    std::set<int> ids;
    for (const auto& r : requests) {
        if (variant == Variant::wPwD) throw InvalidInstance("interval request in a wPwD instance");
        if (r.page < 0 || r.page >= n) throw InvalidInstance("request page out of range");
        if (r.start < 0 || r.start > r.deadline || r.deadline > horizon)
            throw InvalidInstance("request " + std::to_string(r.id) + " has a bad window");
        if (variant == Variant::wPwTw && !r.penalty.is_hard())
            throw InvalidInstance("finite penalty in a wPwTw instance");
        if (!ids.insert(r.id).second) throw InvalidInstance("duplicate request id");
    }
    for (const auto& d : delays) {
        if (variant != Variant::wPwD) throw InvalidInstance("delay request outside wPwD");
        if (d.page < 0 || d.page >= n) throw InvalidInstance("request page out of range");
        if (d.arrival < 0 || d.arrival > horizon) throw InvalidInstance("arrival out of range");
        if (!ids.insert(d.id).second) throw InvalidInstance("duplicate request id");
        for (std::size_t i = 0; i < d.loss.size(); ++i) {
            if (d.loss[i].first < d.arrival) throw InvalidInstance("breakpoint before arrival");
            if (i > 0 && d.loss[i].first <= d.loss[i - 1].first)
                throw InvalidInstance("breakpoint times must increase");
            Rat prev = i > 0 ? d.loss[i - 1].second : Rat(0);
            if (d.loss[i].second < prev) throw NonMonotoneLoss("loss decreases at request " + std::to_string(d.id));
        }
        if (!d.loss.empty() && d.loss.front().first == d.arrival && d.loss.front().second != Rat(0))
            throw InvalidInstance("loss must vanish at arrival");
    }
}

void ScheduleBuilder::push(int t, Action a, int page) {
    if (t < last_time_) throw std::logic_error("ScheduleBuilder: time went backwards");
    if (t != last_time_) {
        last_time_ = t;
        next_seq_ = 0;
    }
    sched_.events.push_back({t, next_seq_++, a, page});
}

Residency replay(const Instance& inst, const Schedule& sched) {
    Residency res;
    res.n = inst.n;
    res.horizon = inst.horizon;
    auto T = static_cast<std::size_t>(inst.horizon + 1);
    res.during.assign(T, std::vector<char>(static_cast<std::size_t>(inst.n), 0));
    res.after.assign(T, std::vector<char>(static_cast<std::size_t>(inst.n), 0));

    std::vector<char> cache(static_cast<std::size_t>(inst.n), 0);
    int size = 0;
    std::size_t i = 0;
    const auto& ev = sched.events;
    for (int t = 0; t <= inst.horizon; ++t) {
        auto& during = res.during[static_cast<std::size_t>(t)];
        during = cache;
        int expect_seq = 0;
        for (; i < ev.size() && ev[i].time == t; ++i) {
            const auto& e = ev[i];
            if (e.seq != expect_seq++) throw MalformedSchedule(i, "sequence numbers must run 0,1,2,...");
            if (e.page < 0 || e.page >= inst.n) throw MalformedSchedule(i, "page out of range");
            auto p = static_cast<std::size_t>(e.page);
            if (e.action == Action::Load) {
                if (cache[p]) throw MalformedSchedule(i, "load of a resident page");
                cache[p] = 1;
                during[p] = 1;
                if (++size > inst.k) throw MalformedSchedule(i, "capacity exceeded");
            } else {
                if (!cache[p]) throw MalformedSchedule(i, "evict of an absent page");
                cache[p] = 0;
                --size;
            }
        }
        if (i < ev.size() && ev[i].time < t) throw MalformedSchedule(i, "events out of order");
        res.after[static_cast<std::size_t>(t)] = cache;
    }
    if (i < ev.size()) throw MalformedSchedule(i, "event time outside [0, horizon] or out of order");
    return res;
}

FeasReport check_feasibility(const Instance& inst, const Schedule& sched) {
    Residency res = replay(inst, sched);
    FeasReport rep;
    rep.served.resize(inst.requests.size());
    for (std::size_t j = 0; j < inst.requests.size(); ++j) {
        const auto& r = inst.requests[j];
        for (int t = r.start; t <= r.deadline; ++t)
            if (res.resident(t, r.page)) {
                rep.served[j] = t;
                break;
            }
        if (!rep.served[j] && r.penalty.is_hard()) {
            rep.feasible = false;
            rep.unserved_hard.push_back(r.id);
        }
    }
    rep.delay_served.resize(inst.delays.size());
    for (std::size_t j = 0; j < inst.delays.size(); ++j) {
        const auto& d = inst.delays[j];
        for (int t = d.arrival; t <= inst.horizon; ++t)
            if (res.resident(t, d.page)) {
                rep.delay_served[j] = t;
                break;
            }
    }
    return rep;
}

CostReport evaluate_cost(const Instance& inst, const Schedule& sched) {
    FeasReport feas = check_feasibility(inst, sched);
    if (!feas.feasible)
        throw InfeasibleSchedule("hard request " + std::to_string(feas.unserved_hard.front()) + " unserved");
    CostReport c;
    for (const auto& e : sched.events)
        if (e.action == Action::Evict) c.eviction_cost += inst.weight(e.page);
    for (std::size_t j = 0; j < inst.requests.size(); ++j) {
        const auto& r = inst.requests[j];
        c.served[r.id] = feas.served[j];
        if (!feas.served[j]) {
            c.unserved.insert(r.id);
            c.penalty_cost += r.penalty.value();
        }
    }
    for (std::size_t j = 0; j < inst.delays.size(); ++j) {
        const auto& d = inst.delays[j];
        c.served[d.id] = feas.delay_served[j];
        if (feas.delay_served[j]) {
            c.delay_cost += d.loss_at(*feas.delay_served[j]);
        } else {
            c.unserved.insert(d.id);
            c.delay_cost += d.loss_at(inst.horizon + 1);
        }
    }
    c.total = c.eviction_cost + c.penalty_cost + c.delay_cost;
    return c;
}

Schedule TimeMap::forward(const Schedule& s) const {
    ScheduleBuilder b;
    for (const auto& e : s.events) {
        if (e.action == Action::Load) b.load(to_norm(e.time), e.page);
        else b.evict(to_norm(e.time), e.page);
    }
    return b.take();
}

Schedule TimeMap::back(const Schedule& s) const {
    ScheduleBuilder b;
    for (const auto& e : s.events) {
        if (e.action == Action::Load) b.load(to_orig(e.time), e.page);
        else b.evict(to_orig(e.time), e.page);
    }
    return b.take();
}

Normalized normalize_timeline(const Instance& inst) {
    if (inst.variant == Variant::wPwD) throw PreconditionViolated("normalize_timeline needs interval requests");
    Normalized out;
    auto T = static_cast<std::size_t>(inst.horizon + 1);
    std::vector<std::vector<std::size_t>> by_deadline(T);
    for (std::size_t j = 0; j < inst.requests.size(); ++j)
        by_deadline[static_cast<std::size_t>(inst.requests[j].deadline)].push_back(j);
    TimeMap& m = out.map;
    m.base.resize(T);
    m.width.resize(T);
    int next = 0;
    for (std::size_t t = 0; t < T; ++t) {
        m.base[t] = next;
        m.width[t] = std::max<int>(1, static_cast<int>(by_deadline[t].size()));
        for (int i = 0; i < m.width[t]; ++i) m.orig.push_back(static_cast<int>(t));
        next += m.width[t];
    }
    out.instance = inst;
    out.instance.horizon = next - 1;
    for (std::size_t t = 0; t < T; ++t) {
        auto& group = by_deadline[t];
        std::sort(group.begin(), group.end(), [&](std::size_t a, std::size_t b) {
            const auto& ra = inst.requests[a];
            const auto& rb = inst.requests[b];
            return std::pair(ra.start, ra.id) < std::pair(rb.start, rb.id);
        });
        for (std::size_t i = 0; i < group.size(); ++i) {
            auto& r = out.instance.requests[group[i]];
            r.start = m.base[static_cast<std::size_t>(r.start)];
            r.deadline = m.base[t] + static_cast<int>(i);
        }
    }
    return out;
}

bool is_normalized(const Instance& inst) {
    std::set<int> seen;
    for (const auto& r : inst.requests)
        if (!seen.insert(r.deadline).second) return false;
    return true;
}

std::vector<int> critical_index(const Instance& inst) {
    std::vector<int> idx(static_cast<std::size_t>(inst.horizon + 1), -1);
    for (std::size_t j = 0; j < inst.requests.size(); ++j) {
        auto& slot = idx[static_cast<std::size_t>(inst.requests[j].deadline)];
        if (slot != -1) throw PreconditionViolated("instance is not normalized");
        slot = static_cast<int>(j);
    }
    return idx;
}

}  // namespace wpw

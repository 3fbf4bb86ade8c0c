#include "wpw/io.hpp"

#include "wpw/errors.hpp"

#include "json.hpp"

#include <istream>
#include <ostream>
#include <string>

namespace wpw {

using nlohmann::json;

namespace {

json rat_json(const Rat& r) {
    if (r.denominator() == 1) return r.numerator();
    return to_string(r);
}

Rat json_rat(const json& j) {
    try {
        if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
        if (j.is_number()) return rat_from_double(j.get<double>());
        if (j.is_string()) return parse_rat(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad rational: ") + e.what());
    }
    throw ParseError("expected a number, got " + j.dump());
}

template <class F>
void for_each_record(std::istream& in, F&& f) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
        try {
            f(j);
        } catch (const json::exception& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
}

}  // namespace

void write_instance(std::ostream& out, const Instance& inst) {
    json h;
    h["n"] = inst.n;
    h["k"] = inst.k;
    h["horizon"] = inst.horizon;
    h["variant"] = to_string(inst.variant);
    h["weights"] = json::array();
    for (const auto& w : inst.weights) h["weights"].push_back(rat_json(w));
    out << h.dump() << '\n';
    for (const auto& r : inst.requests) {
        json j{{"req", r.id}, {"page", r.page}, {"start", r.start}, {"deadline", r.deadline}};
        j["penalty"] = r.penalty.is_hard() ? json("hard") : rat_json(r.penalty.value());
        out << j.dump() << '\n';
    }
    for (const auto& d : inst.delays) {
        json j{{"req", d.id}, {"page", d.page}, {"arrival", d.arrival}};
        j["loss"] = json::array();
        for (const auto& [t, v] : d.loss) j["loss"].push_back(json::array({t, rat_json(v)}));
        out << j.dump() << '\n';
    }
}

Instance read_instance(std::istream& in) {
    Instance inst;
    bool header = false;
    for_each_record(in, [&](const json& j) {
        if (!header) {
            inst.n = j.at("n").get<int>();
            inst.k = j.at("k").get<int>();
            inst.horizon = j.at("horizon").get<int>();
            inst.variant = parse_variant(j.value("variant", std::string("wPwTw")));
            for (const auto& w : j.at("weights")) inst.weights.push_back(json_rat(w));
            header = true;
            return;
        }
        if (j.contains("arrival")) {
            DelayRequest d;
            d.id = j.at("req").get<int>();
            d.page = j.at("page").get<int>();
            d.arrival = j.at("arrival").get<int>();
            for (const auto& bp : j.at("loss")) d.loss.emplace_back(bp.at(0).get<int>(), json_rat(bp.at(1)));
            inst.delays.push_back(std::move(d));
            return;
        }
        Request r;
        r.id = j.at("req").get<int>();
        r.page = j.at("page").get<int>();
        r.start = j.at("start").get<int>();
        r.deadline = j.at("deadline").get<int>();
        const json& pen = j.contains("penalty") ? j.at("penalty") : json("hard");
        r.penalty = pen.is_string() && pen.get<std::string>() == "hard" ? Penalty::hard() : Penalty::finite(json_rat(pen));
        inst.requests.push_back(r);
    });
    if (!header) throw ParseError("missing instance header");
    return inst;
}

void write_schedule(std::ostream& out, const Schedule& s) {
    for (const auto& e : s.events) {
        json j{{"t", e.time}, {"seq", e.seq}, {"action", e.action == Action::Load ? "load" : "evict"}, {"page", e.page}};
        out << j.dump() << '\n';
    }
}

Schedule read_schedule(std::istream& in) {
    Schedule s;
    for_each_record(in, [&](const json& j) {
        ScheduleEvent e;
        e.time = j.at("t").get<int>();
        e.seq = j.value("seq", 0);
        std::string a = j.at("action").get<std::string>();
        if (a == "load") e.action = Action::Load;
        else if (a == "evict") e.action = Action::Evict;
        else throw ParseError("unknown action " + a);
        e.page = j.at("page").get<int>();
        s.events.push_back(e);
    });
    return s;
}

void write_stars(std::ostream& out, const StarSolution& s) {
    for (const auto& st : s.stars) out << json{{"page", st.page}, {"time", st.time}}.dump() << '\n';
    for (int id : s.penalties) out << json{{"req", id}, {"y", 1}}.dump() << '\n';
}

StarSolution read_stars(std::istream& in) {
    StarSolution s;
    for_each_record(in, [&](const json& j) {
        if (j.contains("req")) {
            if (j.value("y", 1) == 1) s.penalties.insert(j.at("req").get<int>());
        } else {
            s.stars.insert({j.at("page").get<int>(), j.at("time").get<int>()});
        }
    });
    return s;
}

void write_violations(std::ostream& out, const std::vector<Violation>& v) {
    for (const auto& x : v) {
        json j{{"time", x.time}, {"kind", x.kind == 'R' ? "R1" : "D1"}, {"collection", x.collection}};
        out << j.dump() << '\n';
    }
}

void write_lp_trace(std::ostream& out, const std::vector<LpStepTrace>& trace) {
    for (const auto& s : trace) {
        json j{{"t", s.t}, {"y_t", s.y}, {"tau_total", s.tau_total}};
        j["raised"] = json::array();
        for (const auto& [p, x] : s.raised) j["raised"].push_back({{"page", p}, {"x", x}});
        out << j.dump() << '\n';
    }
}

void write_cover(std::ostream& out, const CoverInstance& ci) {
    json h{{"n", ci.n}, {"horizon", ci.horizon}, {"requirement", ci.requirement}};
    h["weights"] = json::array();
    for (const auto& w : ci.weights) h["weights"].push_back(rat_json(w));
    if (ci.has_exclusions()) h["excluded"] = ci.excluded;
    out << h.dump() << '\n';
    for (const auto& t : ci.tiles) out << json{{"tile", t.page}, {"start", t.start}, {"end", t.end}}.dump() << '\n';
}

CoverInstance read_cover(std::istream& in) {
    CoverInstance ci;
    bool header = false;
    for_each_record(in, [&](const json& j) {
        if (!header) {
            ci.n = j.at("n").get<int>();
            ci.horizon = j.at("horizon").get<int>();
            ci.requirement = j.at("requirement").get<std::vector<int>>();
            for (const auto& w : j.at("weights")) ci.weights.push_back(json_rat(w));
            if (j.contains("excluded")) ci.excluded = j.at("excluded").get<std::vector<int>>();
            header = true;
            return;
        }
        ci.tiles.push_back({j.at("tile").get<int>(), j.at("start").get<int>(), j.at("end").get<int>()});
    });
    if (!header) throw ParseError("missing cover header");
    ci.validate();
    return ci;
}

}  // namespace wpw

#include "CLI11.hpp"

#include "wpw/bench.hpp"
#include "wpw/errors.hpp"
#include "wpw/io.hpp"
#include "wpw/ip.hpp"
#include "wpw/lp.hpp"
#include "wpw/oracle.hpp"
#include "wpw/reductions.hpp"
#include "wpw/rounding.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace wpw;

namespace {

constexpr int kOk = 0;
constexpr int kInfeasible = 2;
constexpr int kBudget = 3;

struct Common {
    std::string kind = "random";
    std::uint64_t seed = 1;
    int k = 2;
    int n = 4;
    int horizon = 8;
    std::string variant = "wPwTw";
    double W = 1000;
    int T = 0;
    int N = 0;
    std::string graph;
    std::string in;
    std::string out;
    std::string algorithm = "offline";
    double oracle_budget = 4e6;
    double rounding_constant = 3.0;
    std::string trace_lp;
    std::string stars;
    std::string schedule;
    int seeds = 10;
    std::vector<std::string> algorithms{"offline", "online"};
};

std::ostream& output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot write " + path);
    return file;
}

Instance load_instance(const std::string& path) {
    if (path.empty() || path == "-") return read_instance(std::cin);
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    return read_instance(f);
}

GenParams gen_params(const Common& c) {
    GenParams gp;
    gp.kind = c.kind;
    gp.seed = c.seed;
    gp.k = c.k;
    gp.n = c.n;
    gp.horizon = c.horizon;
    gp.variant = parse_variant(c.variant);
    gp.W = rat_from_double(c.W);
    gp.T = c.T;
    gp.N = c.N;
    if (!c.graph.empty()) {
        std::ifstream f(c.graph);
        if (!f) throw std::runtime_error("cannot read " + c.graph);
        gp.graph = read_edge_list(f);
    }
    return gp;
}

void add_gen_flags(CLI::App* app, Common& c) {
    app->add_option("--kind", c.kind, "random, endpoints, gap, vc, classical-paging");
    app->add_option("--seed", c.seed);
    app->add_option("--k", c.k);
    app->add_option("--n", c.n);
    app->add_option("--horizon", c.horizon);
    app->add_option("--variant", c.variant, "wPwTw, wPwTwP, wPwD");
    app->add_option("--W", c.W, "endpoints heavy weight");
    app->add_option("--T", c.T, "gap interval count");
    app->add_option("--N", c.N, "gap spacing");
    app->add_option("--graph", c.graph, "edge list for vc");
}

int cmd_gen(const Common& c) {
    Instance inst = generate(gen_params(c));
    std::ofstream f;
    write_instance(output(c.out, f), inst);
    return kOk;
}

int cmd_solve(const Common& c) {
    Instance inst = load_instance(c.in);
    OnlineAssembleOptions oo;
    oo.cover.rounding_constant = c.rounding_constant;
    oo.cover.seed = c.seed;
    OracleOptions orc;
    orc.max_states = c.oracle_budget;
    Schedule s;
    if (c.algorithm == "offline") s = run_offline_pipeline(inst).schedule;
    else if (c.algorithm == "online") s = run_online_pipeline(inst, oo).schedule;
    else if (c.algorithm == "online-nonoverlap") s = run_online_pipeline(inst, oo, true).schedule;
    else if (c.algorithm == "oracle") s = optimal_schedule(inst, orc).schedule;
    else if (c.algorithm == "endpoint-only") s = endpoint_only_schedule(inst);
    else throw BadParams("unknown algorithm " + c.algorithm);
    if (!c.trace_lp.empty()) {
        Instance work = inst.variant == Variant::wPwD ? delay_to_penalties(inst).instance : inst;
        Normalized nz = normalize_timeline(work);
        LpSolver lp(nz.instance);
        lp.run();
        std::ofstream tf(c.trace_lp);
        write_lp_trace(tf, lp.trace());
    }
    std::ofstream f;
    write_schedule(output(c.out, f), s);
    FeasReport fr = check_feasibility(inst, s);
    if (!fr.feasible) {
        std::cerr << "schedule infeasible\n";
        return kInfeasible;
    }
    std::cerr << "cost " << to_string(evaluate_cost(inst, s).total) << '\n';
    return kOk;
}

int cmd_simulate(const Common& c) {
    Instance inst = load_instance(c.in);
    std::ifstream sf(c.schedule);
    if (!sf) throw std::runtime_error("cannot read " + c.schedule);
    Schedule s = read_schedule(sf);
    FeasReport fr = check_feasibility(inst, s);
    if (!fr.feasible) {
        std::cout << "feasible false\n";
        return kInfeasible;
    }
    CostReport cr = evaluate_cost(inst, s);
    std::cout << "feasible true\neviction " << to_string(cr.eviction_cost) << "\npenalty " << to_string(cr.penalty_cost)
              << "\ndelay " << to_string(cr.delay_cost) << "\ntotal " << to_string(cr.total) << '\n';
    return kOk;
}

int cmd_verify(const Common& c) {
    if (c.kind == "gap" && c.in.empty()) {
        GapReport g = verify_gap_instance(c.k, c.T, c.N);
        std::cout << "k " << g.k << " T " << g.T << " N " << g.N << "\nfractional " << to_string(g.fractional_cost)
                  << "\nper_heavy " << to_string(g.per_heavy_cost) << "\nintegral_lb " << to_string(g.integral_lb)
                  << "\nratio " << g.ratio << '\n';
        return kOk;
    }
    Instance inst = load_instance(c.in);
    Normalized nz = normalize_timeline(inst);
    StarSolution sol;
    if (!c.stars.empty()) {
        std::ifstream sf(c.stars);
        if (!sf) throw std::runtime_error("cannot read " + c.stars);
        sol = read_stars(sf);
    } else {
        OracleOptions orc;
        orc.max_states = c.oracle_budget;
        sol = schedule_to_stars(nz.instance, nz.map.forward(optimal_schedule(inst, orc).schedule));
    }
    auto v = check_ip_constraints(nz.instance, sol);
    std::ofstream f;
    write_violations(output(c.out, f), v);
    std::cerr << v.size() << " violations\n";
    return v.empty() ? kOk : kInfeasible;
}

int cmd_bench(const Common& c) {
    ExperimentConfig cfg;
    cfg.algorithms = c.algorithms;
    cfg.oracle.max_states = c.oracle_budget;
    cfg.online.cover.rounding_constant = c.rounding_constant;
    GenParams gp = gen_params(c);
    for (int i = 0; i < c.seeds; ++i) {
        gp.seed = c.seed + static_cast<std::uint64_t>(i);
        cfg.instances.push_back(gp);
    }
    auto rows = run_experiment(cfg);
    std::ofstream f;
    output(c.out, f) << rows_to_csv(rows);
    bool infeasible = false, budget = false;
    for (const auto& r : rows) {
        if (!r.error.empty() && !r.budget_exceeded) infeasible = true;
        if (r.error.empty() && !r.feasible) infeasible = true;
        if (r.budget_exceeded) budget = true;
    }
    return infeasible ? kInfeasible : (budget ? kBudget : kOk);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

// Bar chart of the mean ratio per (kind, algorithm) as a standalone SVG.
int cmd_plot(const Common& c) {
    std::ifstream in(c.in);
    if (!in) throw std::runtime_error("cannot read " + c.in);
    std::string line;
    std::getline(in, line);
    std::map<std::string, std::pair<double, int>> acc;
    while (std::getline(in, line)) {
        auto f = split_csv(line);
        if (f.size() < 12 || f[10].empty()) continue;
        auto& a = acc[f[1] + "/" + f[5]];
        a.first += std::stod(f[10]);
        a.second += 1;
    }
    const int bar = 28, gap = 12, left = 220, width = 480;
    double top = 1.0;
    for (const auto& [key, v] : acc) top = std::max(top, v.first / v.second);
    std::ofstream f;
    std::ostream& o = output(c.out, f);
    int height = static_cast<int>(acc.size()) * (bar + gap) + 40;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << left + width + 80 << "\" height=\"" << height << "\">\n";
    o << "<text x=\"10\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">mean cost / oracle</text>\n";
    int y = 30;
    for (const auto& [key, v] : acc) {
        double m = v.first / v.second;
        int w = static_cast<int>(width * m / top);
        o << "<text x=\"10\" y=\"" << y + bar * 2 / 3 << "\" font-family=\"sans-serif\" font-size=\"12\">" << key
          << "</text>\n";
        o << "<rect x=\"" << left << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << bar
          << "\" fill=\"steelblue\"/>\n";
        o << "<text x=\"" << left + w + 6 << "\" y=\"" << y + bar * 2 / 3
          << "\" font-family=\"sans-serif\" font-size=\"12\">" << m << "</text>\n";
        y += bar + gap;
    }
    o << "</svg>\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted paging with time windows"};
    app.require_subcommand(1);
    Common c;

    auto* gen = app.add_subcommand("gen", "generate an instance");
    add_gen_flags(gen, c);
    gen->add_option("--out", c.out);

    auto* solve = app.add_subcommand("solve", "compute a schedule");
    solve->add_option("--in", c.in, "instance file (default stdin)");
    solve->add_option("--algorithm", c.algorithm, "offline, online, online-nonoverlap, oracle, endpoint-only");
    solve->add_option("--seed", c.seed);
    solve->add_option("--rounding-constant", c.rounding_constant);
    solve->add_option("--oracle-budget", c.oracle_budget);
    solve->add_option("--trace-lp", c.trace_lp, "write the fractional solver trace here");
    solve->add_option("--out", c.out);

    auto* sim = app.add_subcommand("simulate", "replay a schedule and price it");
    sim->add_option("--in", c.in);
    sim->add_option("--schedule", c.schedule)->required();

    auto* verify = app.add_subcommand("verify", "check IP constraints or the gap construction");
    verify->add_option("--in", c.in);
    verify->add_option("--stars", c.stars, "star solution; oracle schedule when omitted");
    verify->add_option("--kind", c.kind);
    verify->add_option("--k", c.k);
    verify->add_option("--T", c.T);
    verify->add_option("--N", c.N);
    verify->add_option("--oracle-budget", c.oracle_budget);
    verify->add_option("--out", c.out);

    auto* bench = app.add_subcommand("bench", "run an experiment grid and write CSV");
    add_gen_flags(bench, c);
    bench->add_option("--seeds", c.seeds, "number of consecutive seeds");
    bench->add_option("--algorithm", c.algorithms, "algorithms to run");
    bench->add_option("--oracle-budget", c.oracle_budget);
    bench->add_option("--rounding-constant", c.rounding_constant);
    bench->add_option("--out", c.out);

    auto* plot = app.add_subcommand("plot", "SVG bar chart from a bench CSV");
    plot->add_option("--in", c.in)->required();
    plot->add_option("--out", c.out);

    CLI11_PARSE(app, argc, argv);
    try {
        if (*gen) return cmd_gen(c);
        if (*solve) return cmd_solve(c);
        if (*sim) return cmd_simulate(c);
        if (*verify) return cmd_verify(c);
        if (*bench) return cmd_bench(c);
        if (*plot) return cmd_plot(c);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kBudget;
    } catch (const InfeasibleSchedule& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kOk;
}

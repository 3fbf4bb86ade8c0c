#pragma once

#include "wpw/model.hpp"

#include <istream>
#include <map>
#include <utility>
#include <vector>

namespace wpw {

struct PenaltyEnsemble {
    Instance instance;                         // wPwTwP
    std::map<int, std::vector<int>> ensembles;  // delay id -> req ids
};

// One interval [a, t'] per t' in [a, horizon] with penalty F(t'+1) - F(t');
// zero penalties are dropped.
PenaltyEnsemble delay_to_penalties(const Instance& inst);

// Removes requests that strictly contain another request of the same page,
// and exact duplicates beyond the first.
Instance drop_dominated(const Instance& inst);

struct Graph {
    int vertices = 0;                         // labeled 1..vertices
    std::vector<std::pair<int, int>> edges;  // u < v
};

Graph read_edge_list(std::istream& in);
Instance vc_to_wpwtw(const Graph& g);
int min_vertex_cover(const Graph& g);
bool is_connected(const Graph& g);

}  // namespace wpw

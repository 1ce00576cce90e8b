#include "routequbo/network.hpp"

namespace routequbo {

namespace {

struct EdgeSpec {
  const char* from;
  const char* to;
  long long latency;
};

NetworkProblem build(const std::vector<std::string>& nodes,
                     const std::vector<EdgeSpec>& edges, long long capacity) {
  NetworkProblem p;
  p.nodes = nodes;
  for (const auto& e : edges) {
    Edge edge;
    edge.from = p.node_index(e.from);
    edge.to = p.node_index(e.to);
    edge.latency = e.latency;
    edge.capacity = capacity;
    edge.cost = e.latency;  // the diagrams label only latency
    p.edges.push_back(edge);
  }
  return p;
}

// Single multicast: one source S, four sinks, two edge-disjoint trees with
// latency <= 20. 15 nodes, 23 directed edges.
NetworkProblem make_problem_a() {
  NetworkProblem p = build(
      {"S", "A", "B", "C", "D", "F", "G", "H", "I", "J", "K", "L", "M", "N", "O"},
      {
          // spare links
          {"A", "D", 1},
          {"K", "F", 2},
          {"L", "N", 1},
          // links used by the first reference tree
          {"S", "D", 5},
          {"D", "I", 2},
          {"D", "F", 2},
          {"F", "B", 3},
          {"B", "C", 4},
          {"B", "H", 2},
          {"H", "K", 2},
          {"K", "M", 3},
          {"N", "O", 1},
          {"K", "N", 5},
          // links used by the second reference tree
          {"G", "J", 1},
          {"J", "I", 2},
          {"J", "M", 1},
          {"H", "L", 2},
          {"L", "O", 5},
          {"S", "A", 2},
          {"A", "F", 4},
          {"F", "G", 3},
          {"G", "H", 1},
          {"H", "C", 2},
      },
      /*capacity=*/1);
  Commodity k;
  k.key = "k1";
  k.sources = {p.node_index("S")};
  k.sinks = {p.node_index("C"), p.node_index("I"), p.node_index("M"),
             p.node_index("O")};
  k.demand = 1;
  p.commodities.push_back(std::move(k));
  p.t_max = 20;
  p.disjointness_mode = DisjointnessMode::kEdge;
  p.validate();
  return p;
}

// Two simultaneous multicasts on a non-planar graph: node-disjoint tree
// pairs with latency <= 10. 17 nodes, 28 directed edges. Edge capacities
// are 2: any backup route set must funnel both commodities through E->J,
// so unit capacity would make the instance infeasible.
NetworkProblem make_problem_b() {
  NetworkProblem p = build(
      {"A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K", "L", "M", "N",
       "O", "P", "Q"},
      {
          // first solution, commodity 1
          {"C", "A", 1},
          {"G", "C", 5},
          {"L", "M", 1},
          {"L", "O", 4},
          {"G", "L", 5},
          // first solution, commodity 2
          {"I", "F", 1},
          {"F", "B", 4},
          {"I", "L", 2},
          {"L", "P", 5},
          // second solution, commodity 1
          {"G", "K", 5},
          {"K", "O", 3},
          {"G", "D", 4},
          {"D", "A", 3},
          {"D", "E", 2},
          {"E", "J", 2},
          {"J", "M", 2},
          // second solution, commodity 2
          {"I", "E", 3},
          {"E", "B", 2},
          {"J", "N", 1},
          {"N", "Q", 2},
          {"Q", "P", 2},
          // spare links
          {"Q", "L", 3},
          {"N", "M", 4},
          {"F", "E", 1},
          {"H", "D", 4},
          {"C", "D", 3},
          {"K", "H", 1},
          {"H", "E", 3},
      },
      /*capacity=*/2);
  Commodity k1;
  k1.key = "k1";
  k1.sources = {p.node_index("G")};
  k1.sinks = {p.node_index("A"), p.node_index("M"), p.node_index("O")};
  k1.demand = 1;
  Commodity k2;
  k2.key = "k2";
  k2.sources = {p.node_index("I")};
  k2.sinks = {p.node_index("B"), p.node_index("P")};
  k2.demand = 1;
  p.commodities.push_back(std::move(k1));
  p.commodities.push_back(std::move(k2));
  p.t_max = 10;
  p.disjointness_mode = DisjointnessMode::kNode;
  p.validate();
  return p;
}

}  // namespace

NetworkProblem toy_problem(ToyProblem which) {
  return which == ToyProblem::kA ? make_problem_a() : make_problem_b();
}

}  // namespace routequbo

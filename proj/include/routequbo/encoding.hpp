#pragma once

#include <array>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "routequbo/network.hpp"
#include "routequbo/qubo.hpp"

namespace routequbo {

/// Per-category constraint weights used to compose penalty groups.
struct PenaltyWeights {
  std::map<std::string, double> lambdas;

  /// structural 8, resource 4, objective 1. Structural constraints carry the
  /// highest weight so that one objective unit can never pay for a violated
  /// flow, tree, product or disjointness constraint on small instances.
  static PenaltyWeights defaults();
  double get(const std::string& category) const;
  void set(const std::string& category, double lambda);
};

enum class RoleKind {
  kNodeUse,            // x: node is in a tree
  kEdgeRoute,          // time-oriented e[i,k,(a,b)]
  kEdgeSinkRoute,      // path-oriented e[i,k,t,(a,b)]
  kEdgeCommodityUnion, // path-oriented e[i,k,(a,b)]
  kEdgeSolutionUnion,  // e[i,(a,b)]
  kEdgeTree,           // spectrum e[s,c,(a,b)]
  kTimeBit,            // t bits, capped expansion per node
  kProductBit,         // xi bits, e * t products
  kSrgUse,             // risk-group indicator per solution
  kColourChoice,       // delta[s,c,k]
  kSinkCover,          // zeta[s,c,k,t]
  kSlack,              // inequality slack bits
};

std::string to_string(RoleKind kind);
RoleKind role_kind_from_string(const std::string& text);

/// One allocated binary variable and what it means. Variables eliminated by
/// constant substitution keep their role but carry no compiled id.
struct VarRole {
  RoleKind kind;
  int i = -1;      // solution index
  int k = -1;      // commodity index
  int sink = -1;   // sink node (path routes, zeta targets)
  int src = -1;    // source node index into Encoding::sources (spectrum)
  int chan = -1;   // colour / super-channel index (spectrum)
  int node = -1;
  int edge = -1;
  int bit = -1;
  long long coeff = 0;   // expansion coefficient for t/xi/slack bits
  int srg = -1;          // risk-group index
  std::string group;     // owning penalty group (slack bits)
  int compiled = -1;     // compiled variable id, -1 when fixed
  int fixed_value = -1;  // 0/1 when substituted out
};

struct PenaltyGroupInfo {
  std::string name;
  std::string category;
  double lambda = 1.0;
};

struct SuperChannel {
  int start = 0;
  int width = 1;
};

/// Bidirectional map between semantic variable roles and compiled QUBO
/// indices, with enough instance context to decode offline.
struct Encoding {
  std::string formulation;  // time | path | rwa | rsa
  VarRegistry registry;     // compiled (non-fixed) variables
  std::vector<VarRole> roles;
  std::vector<PenaltyGroupInfo> groups;
  std::map<std::string, double> weights;

  std::vector<std::string> node_names;
  std::vector<std::pair<int, int>> edge_endpoints;
  std::vector<std::string> commodity_keys;
  std::vector<std::vector<int>> commodity_sinks;
  std::vector<std::string> srg_ids;
  std::vector<int> sources;            // spectrum: tree roots
  std::vector<SuperChannel> channels;  // spectrum: colour / channel catalog

  std::size_t allocated() const { return roles.size(); }
  std::size_t compiled() const { return registry.size(); }
  long long count_allocated(RoleKind kind) const;
  long long count_fixed() const;
  /// Bit value of a role under a compiled assignment.
  int role_bit(const VarRole& role, std::span<const std::uint8_t> x) const;

  std::string to_json_string() const;
  static Encoding from_json_string(const std::string& text);
};

/// A compiled instance: the solver-facing QUBO, the hard-constraint part
/// (everything except the objective), the unweighted per-group QUBOs for
/// diagnostics and the role map.
struct EncodeResult {
  Qubo qubo;
  Qubo hard;
  std::map<std::string, Qubo> group_terms;
  Encoding encoding;
};

struct CommodityRoutes {
  std::set<int> edges;
  std::set<int> nodes;
  std::map<int, std::set<int>> per_sink_edges;  // path encodings only
};

struct RouteSolution {
  std::vector<CommodityRoutes> commodities;
};

struct RouteSetPair {
  std::string formulation;
  std::array<RouteSolution, 2> solutions;
};

struct SpectrumTree {
  std::set<int> edges;
  std::set<int> nodes;
};

struct SpectrumRoutes {
  std::string formulation;
  std::vector<int> sources;
  std::vector<SuperChannel> channels;
  // indexed [source][channel]
  std::vector<std::vector<SpectrumTree>> trees;
  std::vector<std::vector<std::set<int>>> assigned;  // commodities with delta on
};

/// Inverse of the role map for the pair formulations; selects roles with
/// bit = 1 and performs no validity judgment.
RouteSetPair decode_pair(const Encoding& enc, std::span<const std::uint8_t> x);

/// Inverse of the role map for the colouring formulations.
SpectrumRoutes decode_spectrum(const Encoding& enc, std::span<const std::uint8_t> x);

}  // namespace routequbo

#include "routequbo/encoding.hpp"

#include <algorithm>

#include "json.hpp"

namespace routequbo {

using nlohmann::json;

PenaltyWeights PenaltyWeights::defaults() {
  PenaltyWeights w;
  w.lambdas = {{"structural", 8.0}, {"resource", 4.0}, {"objective", 1.0}};
  return w;
}

double PenaltyWeights::get(const std::string& category) const {
  auto it = lambdas.find(category);
  if (it == lambdas.end()) {
    throw QuboError("no penalty weight for category: " + category);
  }
  return it->second;
}

void PenaltyWeights::set(const std::string& category, double lambda) {
  if (lambda <= 0.0) {
    throw QuboError("penalty weight must be positive: " + category);
  }
  lambdas[category] = lambda;
}

std::string to_string(RoleKind kind) {
  switch (kind) {
    case RoleKind::kNodeUse: return "node_use";
    case RoleKind::kEdgeRoute: return "edge_route";
    case RoleKind::kEdgeSinkRoute: return "edge_sink_route";
    case RoleKind::kEdgeCommodityUnion: return "edge_commodity_union";
    case RoleKind::kEdgeSolutionUnion: return "edge_solution_union";
    case RoleKind::kEdgeTree: return "edge_tree";
    case RoleKind::kTimeBit: return "time_bit";
    case RoleKind::kProductBit: return "product_bit";
    case RoleKind::kSrgUse: return "srg_use";
    case RoleKind::kColourChoice: return "colour_choice";
    case RoleKind::kSinkCover: return "sink_cover";
    case RoleKind::kSlack: return "slack";
  }
  return "slack";
}

RoleKind role_kind_from_string(const std::string& text) {
  static const std::map<std::string, RoleKind> table = {
      {"node_use", RoleKind::kNodeUse},
      {"edge_route", RoleKind::kEdgeRoute},
      {"edge_sink_route", RoleKind::kEdgeSinkRoute},
      {"edge_commodity_union", RoleKind::kEdgeCommodityUnion},
      {"edge_solution_union", RoleKind::kEdgeSolutionUnion},
      {"edge_tree", RoleKind::kEdgeTree},
      {"time_bit", RoleKind::kTimeBit},
      {"product_bit", RoleKind::kProductBit},
      {"srg_use", RoleKind::kSrgUse},
      {"colour_choice", RoleKind::kColourChoice},
      {"sink_cover", RoleKind::kSinkCover},
      {"slack", RoleKind::kSlack},
  };
  auto it = table.find(text);
  if (it == table.end()) throw QuboError("unknown role kind: " + text);
  return it->second;
}

long long Encoding::count_allocated(RoleKind kind) const {
  return std::count_if(roles.begin(), roles.end(),
                       [kind](const VarRole& r) { return r.kind == kind; });
}

long long Encoding::count_fixed() const {
  return std::count_if(roles.begin(), roles.end(),
                       [](const VarRole& r) { return r.fixed_value >= 0; });
}

int Encoding::role_bit(const VarRole& role, std::span<const std::uint8_t> x) const {
  if (role.fixed_value >= 0) return role.fixed_value;
  if (role.compiled < 0 || static_cast<std::size_t>(role.compiled) >= x.size()) {
    throw QuboError("assignment length does not match the encoding");
  }
  return x[static_cast<std::size_t>(role.compiled)];
}

std::string Encoding::to_json_string() const {
  json j;
  j["formulation"] = formulation;
  j["compiled"] = compiled();
  j["weights"] = weights;
  auto& roles_json = j["roles"] = json::array();
  for (const auto& r : roles) {
    json rj;
    rj["kind"] = to_string(r.kind);
    if (r.i >= 0) rj["i"] = r.i;
    if (r.k >= 0) rj["k"] = r.k;
    if (r.sink >= 0) rj["sink"] = r.sink;
    if (r.src >= 0) rj["src"] = r.src;
    if (r.chan >= 0) rj["chan"] = r.chan;
    if (r.node >= 0) rj["node"] = r.node;
    if (r.edge >= 0) rj["edge"] = r.edge;
    if (r.bit >= 0) rj["bit"] = r.bit;
    if (r.coeff != 0) rj["coeff"] = r.coeff;
    if (r.srg >= 0) rj["srg"] = r.srg;
    if (!r.group.empty()) rj["g"] = r.group;
    if (r.compiled >= 0) rj["q"] = r.compiled;
    if (r.fixed_value >= 0) rj["fixed"] = r.fixed_value;
    roles_json.push_back(std::move(rj));
  }
  auto& groups_json = j["groups"] = json::array();
  for (const auto& g : groups) {
    groups_json.push_back({{"name", g.name}, {"category", g.category}, {"lambda", g.lambda}});
  }
  j["nodes"] = node_names;
  auto& edges_json = j["edges"] = json::array();
  for (const auto& [from, to] : edge_endpoints) edges_json.push_back({from, to});
  j["commodities"] = commodity_keys;
  j["commodity_sinks"] = commodity_sinks;
  j["srgs"] = srg_ids;
  j["sources"] = sources;
  auto& chans = j["channels"] = json::array();
  for (const auto& c : channels) chans.push_back({c.start, c.width});
  return j.dump(2);
}

Encoding Encoding::from_json_string(const std::string& text) {
  json j = json::parse(text);
  Encoding enc;
  enc.formulation = j.at("formulation").get<std::string>();
  if (j.contains("weights")) {
    enc.weights = j.at("weights").get<std::map<std::string, double>>();
  }
  for (const auto& rj : j.at("roles")) {
    VarRole r;
    r.kind = role_kind_from_string(rj.at("kind").get<std::string>());
    r.i = rj.value("i", -1);
    r.k = rj.value("k", -1);
    r.sink = rj.value("sink", -1);
    r.src = rj.value("src", -1);
    r.chan = rj.value("chan", -1);
    r.node = rj.value("node", -1);
    r.edge = rj.value("edge", -1);
    r.bit = rj.value("bit", -1);
    r.coeff = rj.value("coeff", 0LL);
    r.srg = rj.value("srg", -1);
    r.group = rj.value("g", std::string());
    r.compiled = rj.value("q", -1);
    r.fixed_value = rj.value("fixed", -1);
    enc.roles.push_back(std::move(r));
  }
  for (const auto& gj : j.at("groups")) {
    enc.groups.push_back({gj.at("name").get<std::string>(),
                          gj.at("category").get<std::string>(),
                          gj.at("lambda").get<double>()});
  }
  enc.node_names = j.at("nodes").get<std::vector<std::string>>();
  for (const auto& e : j.at("edges")) {
    enc.edge_endpoints.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  }
  enc.commodity_keys = j.at("commodities").get<std::vector<std::string>>();
  enc.commodity_sinks = j.at("commodity_sinks").get<std::vector<std::vector<int>>>();
  enc.srg_ids = j.at("srgs").get<std::vector<std::string>>();
  enc.sources = j.at("sources").get<std::vector<int>>();
  for (const auto& c : j.at("channels")) {
    enc.channels.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
  }
  // rebuild registry labels so compiled ids keep stable names
  std::vector<const VarRole*> compiled(j.at("compiled").get<std::size_t>(), nullptr);
  for (const auto& r : enc.roles) {
    if (r.compiled >= 0) compiled[static_cast<std::size_t>(r.compiled)] = &r;
  }
  for (std::size_t q = 0; q < compiled.size(); ++q) {
    enc.registry.add(compiled[q] ? to_string(compiled[q]->kind) + "#" + std::to_string(q)
                                 : "var#" + std::to_string(q));
  }
  return enc;
}

RouteSetPair decode_pair(const Encoding& enc, std::span<const std::uint8_t> x) {
  RouteSetPair out;
  out.formulation = enc.formulation;
  for (auto& sol : out.solutions) {
    sol.commodities.resize(enc.commodity_keys.size());
  }
  for (const auto& role : enc.roles) {
    switch (role.kind) {
      case RoleKind::kNodeUse:
        if (role.i >= 0 && enc.role_bit(role, x)) {
          out.solutions[role.i].commodities[role.k].nodes.insert(role.node);
        }
        break;
      case RoleKind::kEdgeRoute:
        if (enc.role_bit(role, x)) {
          out.solutions[role.i].commodities[role.k].edges.insert(role.edge);
        }
        break;
      case RoleKind::kEdgeSinkRoute:
        if (enc.role_bit(role, x)) {
          auto& routes = out.solutions[role.i].commodities[role.k];
          routes.per_sink_edges[role.sink].insert(role.edge);
          routes.edges.insert(role.edge);
        }
        break;
      default:
        break;
    }
  }
  return out;
}

SpectrumRoutes decode_spectrum(const Encoding& enc, std::span<const std::uint8_t> x) {
  SpectrumRoutes out;
  out.formulation = enc.formulation;
  out.sources = enc.sources;
  out.channels = enc.channels;
  std::size_t num_sources = enc.sources.size();
  std::size_t num_channels = enc.channels.size();
  out.trees.assign(num_sources, std::vector<SpectrumTree>(num_channels));
  out.assigned.assign(num_sources, std::vector<std::set<int>>(num_channels));
  for (const auto& role : enc.roles) {
    switch (role.kind) {
      case RoleKind::kNodeUse:
        if (role.src >= 0 && enc.role_bit(role, x)) {
          out.trees[role.src][role.chan].nodes.insert(role.node);
        }
        break;
      case RoleKind::kEdgeTree:
        if (enc.role_bit(role, x)) {
          out.trees[role.src][role.chan].edges.insert(role.edge);
        }
        break;
      case RoleKind::kColourChoice:
        if (enc.role_bit(role, x)) {
          out.assigned[role.src][role.chan].insert(role.k);
        }
        break;
      default:
        break;
    }
  }
  return out;
}

}  // namespace routequbo

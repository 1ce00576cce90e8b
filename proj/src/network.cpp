#include "routequbo/network.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace routequbo {

using nlohmann::json;

int SpectrumSpec::width_for(const std::string& commodity_key) const {
  auto it = demand_widths.find(commodity_key);
  return it == demand_widths.end() ? 1 : it->second;
}

int NetworkProblem::node_index(const std::string& id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] == id) return static_cast<int>(i);
  }
  throw ProblemError("unknown node id: " + id);
}

int NetworkProblem::find_edge(int from, int to) const {
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].from == from && edges[e].to == to) return static_cast<int>(e);
  }
  return -1;
}

bool NetworkProblem::is_terminal(int commodity, int node) const {
  const Commodity& k = commodities.at(commodity);
  return std::find(k.sources.begin(), k.sources.end(), node) != k.sources.end() ||
         std::find(k.sinks.begin(), k.sinks.end(), node) != k.sinks.end();
}

bool NetworkProblem::is_terminal_any(int node) const {
  for (std::size_t k = 0; k < commodities.size(); ++k) {
    if (is_terminal(static_cast<int>(k), node)) return true;
  }
  return false;
}

long long NetworkProblem::total_demand() const {
  long long total = 0;
  for (const auto& k : commodities) total += k.demand;
  return total;
}

std::vector<int> NetworkProblem::source_union() const {
  std::set<int> seen;
  for (const auto& k : commodities) seen.insert(k.sources.begin(), k.sources.end());
  return {seen.begin(), seen.end()};
}

void NetworkProblem::validate() const {
  std::set<std::string> node_ids;
  for (const auto& id : nodes) {
    if (!node_ids.insert(id).second) {
      throw ProblemError("duplicate node id: " + id);
    }
  }
  std::set<std::pair<int, int>> seen_edges;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& edge = edges[e];
    if (edge.from < 0 || edge.from >= static_cast<int>(nodes.size()) ||
        edge.to < 0 || edge.to >= static_cast<int>(nodes.size())) {
      throw ProblemError("edge " + std::to_string(e) + " references an unknown node");
    }
    if (edge.from == edge.to) {
      throw ProblemError("edge " + std::to_string(e) + " is a self loop");
    }
    if (!seen_edges.insert({edge.from, edge.to}).second) {
      throw ProblemError("parallel edge " + nodes[edge.from] + "->" + nodes[edge.to]);
    }
    if (edge.latency < 0 || edge.capacity < 0 || edge.cost < 0) {
      throw ProblemError("edge " + nodes[edge.from] + "->" + nodes[edge.to] +
                         " has a negative weight");
    }
  }
  if (t_max <= 0) throw ProblemError("t_max must be positive");
  if (cost_threshold && *cost_threshold < 0) {
    throw ProblemError("cost_threshold must be non-negative");
  }
  std::set<std::string> keys;
  for (const auto& k : commodities) {
    if (!keys.insert(k.key).second) {
      throw ProblemError("duplicate commodity key: " + k.key);
    }
    if (k.sources.empty()) {
      throw ProblemError("commodity " + k.key + ": sources must be nonempty");
    }
    if (k.sinks.empty()) {
      throw ProblemError("commodity " + k.key + ": sinks must be nonempty");
    }
    if (k.demand <= 0) {
      throw ProblemError("commodity " + k.key + ": demand must be positive");
    }
    for (int s : k.sources) {
      if (std::find(k.sinks.begin(), k.sinks.end(), s) != k.sinks.end()) {
        throw ProblemError("commodity " + k.key + ": node " + nodes.at(s) +
                           " is both a source and a sink");
      }
    }
  }
  std::set<std::string> srg_ids;
  for (const auto& g : srgs) {
    if (!srg_ids.insert(g.id).second) {
      throw ProblemError("duplicate srg id: " + g.id);
    }
    if (g.nodes.empty() && g.edges.empty()) {
      throw ProblemError("srg " + g.id + " is empty");
    }
  }
  if (spectrum) {
    const SpectrumSpec& spec = *spectrum;
    if (spec.mode == SpectrumMode::kRwa) {
      if (spec.num_colours < 1) throw ProblemError("spectrum.colours must be >= 1");
    } else {
      if (spec.num_slots < 1) throw ProblemError("spectrum.slots must be >= 1");
      if (spec.max_width < 1 || spec.max_width > spec.num_slots) {
        throw ProblemError("spectrum.max_width must lie in [1, slots]");
      }
      for (const auto& [key, width] : spec.demand_widths) {
        if (!keys.count(key)) {
          throw ProblemError("spectrum.demand_widths references unknown commodity " + key);
        }
        if (width < 1 || width > spec.max_width) {
          throw ProblemError("commodity " + key + ": demand width " +
                             std::to_string(width) + " exceeds max_width");
        }
      }
    }
  }
}

std::string to_string(DisjointnessMode mode) {
  switch (mode) {
    case DisjointnessMode::kEdge: return "edge";
    case DisjointnessMode::kNode: return "node";
    case DisjointnessMode::kSrgExplicit: return "srg-explicit";
  }
  return "edge";
}

DisjointnessMode disjointness_mode_from_string(const std::string& text) {
  if (text == "edge") return DisjointnessMode::kEdge;
  if (text == "node") return DisjointnessMode::kNode;
  if (text == "srg-explicit") return DisjointnessMode::kSrgExplicit;
  throw ProblemError("unknown disjointness_mode: " + text);
}

namespace {

int lookup_node(const NetworkProblem& p, const std::string& id,
                const std::string& context) {
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    if (p.nodes[i] == id) return static_cast<int>(i);
  }
  throw ProblemError(context + ": unknown node " + id);
}

int lookup_edge_ref(const NetworkProblem& p, const std::string& ref,
                    const std::string& context) {
  auto sep = ref.find("->");
  if (sep == std::string::npos) {
    throw ProblemError(context + ": edge reference '" + ref +
                       "' is not of the form from->to");
  }
  int from = lookup_node(p, ref.substr(0, sep), context);
  int to = lookup_node(p, ref.substr(sep + 2), context);
  int e = p.find_edge(from, to);
  if (e < 0) throw ProblemError(context + ": unknown edge " + ref);
  return e;
}

}  // namespace

NetworkProblem problem_from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw ProblemError(std::string("problem file is not valid JSON: ") + ex.what());
  }
  NetworkProblem p;
  try {
    for (const auto& n : j.at("nodes")) p.nodes.push_back(n.get<std::string>());
    for (const auto& e : j.at("edges")) {
      Edge edge;
      edge.from = lookup_node(p, e.at("from").get<std::string>(), "edges");
      edge.to = lookup_node(p, e.at("to").get<std::string>(), "edges");
      edge.latency = e.at("latency").get<long long>();
      edge.capacity = e.at("capacity").get<long long>();
      edge.cost = e.at("cost").get<long long>();
      p.edges.push_back(edge);
    }
    for (const auto& c : j.at("commodities")) {
      Commodity k;
      k.key = c.at("key").get<std::string>();
      for (const auto& s : c.at("sources")) {
        k.sources.push_back(lookup_node(p, s.get<std::string>(), "commodity " + k.key));
      }
      for (const auto& s : c.at("sinks")) {
        k.sinks.push_back(lookup_node(p, s.get<std::string>(), "commodity " + k.key));
      }
      k.demand = c.at("demand").get<long long>();
      p.commodities.push_back(std::move(k));
    }
    if (j.contains("srgs")) {
      for (const auto& g : j.at("srgs")) {
        SharedRiskGroup srg;
        srg.id = g.at("id").get<std::string>();
        if (g.contains("nodes")) {
          for (const auto& n : g.at("nodes")) {
            srg.nodes.push_back(lookup_node(p, n.get<std::string>(), "srg " + srg.id));
          }
        }
        if (g.contains("edges")) {
          for (const auto& e : g.at("edges")) {
            srg.edges.push_back(lookup_edge_ref(p, e.get<std::string>(), "srg " + srg.id));
          }
        }
        p.srgs.push_back(std::move(srg));
      }
    }
    p.t_max = j.at("t_max").get<long long>();
    if (j.contains("cost_threshold") && !j.at("cost_threshold").is_null()) {
      p.cost_threshold = j.at("cost_threshold").get<long long>();
    }
    p.disjointness_mode =
        disjointness_mode_from_string(j.at("disjointness_mode").get<std::string>());
    if (j.contains("spectrum") && !j.at("spectrum").is_null()) {
      const auto& s = j.at("spectrum");
      SpectrumSpec spec;
      std::string mode = s.at("mode").get<std::string>();
      if (mode == "rwa") {
        spec.mode = SpectrumMode::kRwa;
        spec.num_colours = s.at("colours").get<int>();
      } else if (mode == "rsa") {
        spec.mode = SpectrumMode::kRsa;
        spec.num_slots = s.at("slots").get<int>();
        spec.max_width = s.at("max_width").get<int>();
        if (s.contains("demand_widths")) {
          for (const auto& [key, w] : s.at("demand_widths").items()) {
            spec.demand_widths[key] = w.get<int>();
          }
        }
      } else {
        throw ProblemError("spectrum.mode must be rwa or rsa");
      }
      p.spectrum = spec;
    }
  } catch (const json::exception& ex) {
    throw ProblemError(std::string("problem file is malformed: ") + ex.what());
  }
  p.validate();
  return p;
}

std::string problem_to_json_string(const NetworkProblem& p) {
  json j;
  j["nodes"] = p.nodes;
  auto& edges = j["edges"] = json::array();
  for (const auto& e : p.edges) {
    edges.push_back({{"from", p.nodes[e.from]},
                     {"to", p.nodes[e.to]},
                     {"latency", e.latency},
                     {"capacity", e.capacity},
                     {"cost", e.cost}});
  }
  auto& commodities = j["commodities"] = json::array();
  for (const auto& k : p.commodities) {
    json c;
    c["key"] = k.key;
    c["sources"] = json::array();
    for (int s : k.sources) c["sources"].push_back(p.nodes[s]);
    c["sinks"] = json::array();
    for (int s : k.sinks) c["sinks"].push_back(p.nodes[s]);
    c["demand"] = k.demand;
    commodities.push_back(std::move(c));
  }
  if (!p.srgs.empty()) {
    auto& srgs = j["srgs"] = json::array();
    for (const auto& g : p.srgs) {
      json s;
      s["id"] = g.id;
      if (!g.nodes.empty()) {
        s["nodes"] = json::array();
        for (int n : g.nodes) s["nodes"].push_back(p.nodes[n]);
      }
      if (!g.edges.empty()) {
        s["edges"] = json::array();
        for (int e : g.edges) {
          s["edges"].push_back(p.nodes[p.edges[e].from] + "->" + p.nodes[p.edges[e].to]);
        }
      }
      srgs.push_back(std::move(s));
    }
  }
  j["t_max"] = p.t_max;
  if (p.cost_threshold) j["cost_threshold"] = *p.cost_threshold;
  j["disjointness_mode"] = to_string(p.disjointness_mode);
  if (p.spectrum) {
    json s;
    if (p.spectrum->mode == SpectrumMode::kRwa) {
      s["mode"] = "rwa";
      s["colours"] = p.spectrum->num_colours;
    } else {
      s["mode"] = "rsa";
      s["slots"] = p.spectrum->num_slots;
      s["max_width"] = p.spectrum->max_width;
      if (!p.spectrum->demand_widths.empty()) {
        s["demand_widths"] = p.spectrum->demand_widths;
      }
    }
    j["spectrum"] = std::move(s);
  }
  return j.dump(2);
}

NetworkProblem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ProblemError("cannot open problem file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return problem_from_json_string(buf.str());
}

void save_problem(const NetworkProblem& problem, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ProblemError("cannot write problem file: " + path.string());
  out << problem_to_json_string(problem) << "\n";
}

std::vector<SharedRiskGroup> derive_srgs(const NetworkProblem& problem) {
  std::vector<SharedRiskGroup> out;
  switch (problem.disjointness_mode) {
    case DisjointnessMode::kEdge:
      for (std::size_t e = 0; e < problem.edges.size(); ++e) {
        SharedRiskGroup g;
        g.id = "edge:" + problem.nodes[problem.edges[e].from] + "->" +
               problem.nodes[problem.edges[e].to];
        g.edges.push_back(static_cast<int>(e));
        out.push_back(std::move(g));
      }
      break;
    case DisjointnessMode::kNode:
      // Terminals are excluded: both solutions necessarily contain every
      // source and sink, so those nodes cannot be disjointness-constrained.
      for (std::size_t n = 0; n < problem.nodes.size(); ++n) {
        if (problem.is_terminal_any(static_cast<int>(n))) continue;
        SharedRiskGroup g;
        g.id = "node:" + problem.nodes[n];
        g.nodes.push_back(static_cast<int>(n));
        for (std::size_t e = 0; e < problem.edges.size(); ++e) {
          if (problem.edges[e].from == static_cast<int>(n) ||
              problem.edges[e].to == static_cast<int>(n)) {
            g.edges.push_back(static_cast<int>(e));
          }
        }
        out.push_back(std::move(g));
      }
      break;
    case DisjointnessMode::kSrgExplicit:
      out = problem.srgs;
      break;
  }
  return out;
}

}  // namespace routequbo

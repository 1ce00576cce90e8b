#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace routequbo {

class ProblemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  int from = -1;
  int to = -1;
  long long latency = 0;
  long long capacity = 0;
  long long cost = 0;
};

struct Commodity {
  std::string key;
  std::vector<int> sources;
  std::vector<int> sinks;
  long long demand = 1;
};

struct SharedRiskGroup {
  std::string id;
  std::vector<int> nodes;
  std::vector<int> edges;
};

enum class DisjointnessMode { kEdge, kNode, kSrgExplicit };

enum class SpectrumMode { kRwa, kRsa };

struct SpectrumSpec {
  SpectrumMode mode = SpectrumMode::kRwa;
  int num_colours = 1;            // RWA
  int num_slots = 1;              // RSA
  int max_width = 1;              // RSA
  std::map<std::string, int> demand_widths;  // RSA, commodity key -> slots

  int width_for(const std::string& commodity_key) const;
};

/// Directed network, demands, risk groups and global thresholds.
/// Immutable after load; all operations on it are pure.
struct NetworkProblem {
  std::vector<std::string> nodes;
  std::vector<Edge> edges;
  std::vector<Commodity> commodities;
  std::vector<SharedRiskGroup> srgs;  // explicit groups, used in srg-explicit mode
  long long t_max = 1;
  std::optional<long long> cost_threshold;
  DisjointnessMode disjointness_mode = DisjointnessMode::kEdge;
  std::optional<SpectrumSpec> spectrum;
  static constexpr int kNumSolutions = 2;

  int node_index(const std::string& id) const;  // throws on unknown id
  int find_edge(int from, int to) const;        // -1 when absent
  bool is_terminal(int commodity, int node) const;
  bool is_terminal_any(int node) const;
  long long total_demand() const;
  /// All distinct source nodes across commodities, in node order.
  std::vector<int> source_union() const;

  void validate() const;  // throws ProblemError naming the offending field
};

NetworkProblem load_problem(const std::filesystem::path& path);
void save_problem(const NetworkProblem& problem, const std::filesystem::path& path);
NetworkProblem problem_from_json_string(const std::string& text);
std::string problem_to_json_string(const NetworkProblem& problem);

/// Expands the disjointness mode into concrete risk groups:
/// edge mode yields one singleton group per edge; node mode one group per
/// non-terminal node together with its incident edges; explicit mode returns
/// the user-supplied groups unchanged.
std::vector<SharedRiskGroup> derive_srgs(const NetworkProblem& problem);

enum class ToyProblem { kA, kB };

/// The two bundled example instances (single multicast with edge
/// disjointness; two simultaneous multicasts with node disjointness).
NetworkProblem toy_problem(ToyProblem which);

std::string to_string(DisjointnessMode mode);
DisjointnessMode disjointness_mode_from_string(const std::string& text);

}  // namespace routequbo

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <set>
#include <string>

#include "json.hpp"
#include "routequbo/network.hpp"

using namespace routequbo;

namespace {

// The reference tree pair for problem A, straight from the diagram.
const std::vector<std::pair<std::string, std::string>> kTreeA1 = {
    {"S", "D"}, {"D", "I"}, {"D", "F"}, {"F", "B"}, {"B", "C"},
    {"B", "H"}, {"H", "K"}, {"K", "M"}, {"K", "N"}, {"N", "O"}};
const std::vector<std::pair<std::string, std::string>> kTreeA2 = {
    {"S", "A"}, {"A", "F"}, {"F", "G"}, {"G", "H"}, {"H", "C"},
    {"G", "J"}, {"J", "I"}, {"J", "M"}, {"H", "L"}, {"L", "O"}};

long long path_latency(const NetworkProblem& p,
                       const std::vector<std::string>& nodes) {
  long long total = 0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    int e = p.find_edge(p.node_index(nodes[i]), p.node_index(nodes[i + 1]));
    REQUIRE(e >= 0);
    total += p.edges[e].latency;
  }
  return total;
}

}  // namespace

TEST_CASE("problem A matches the diagram") {
  NetworkProblem a = toy_problem(ToyProblem::kA);
  CHECK(a.nodes.size() == 15);
  CHECK(a.edges.size() == 23);
  REQUIRE(a.commodities.size() == 1);
  CHECK(a.commodities[0].sources.size() == 1);
  CHECK(a.commodities[0].sinks.size() == 4);
  CHECK(a.t_max == 20);
  CHECK(a.disjointness_mode == DisjointnessMode::kEdge);

  // the labelled route along the first tree
  CHECK(path_latency(a, {"S", "D", "F", "B", "C"}) == 14);

  // both reference trees exist in the transcription and share no edge
  std::set<int> first, second;
  for (const auto& [u, v] : kTreeA1) {
    int e = a.find_edge(a.node_index(u), a.node_index(v));
    REQUIRE(e >= 0);
    first.insert(e);
  }
  for (const auto& [u, v] : kTreeA2) {
    int e = a.find_edge(a.node_index(u), a.node_index(v));
    REQUIRE(e >= 0);
    second.insert(e);
  }
  for (int e : first) CHECK(second.count(e) == 0);

  // worst sink of the first tree sits exactly at the latency ceiling
  CHECK(path_latency(a, {"S", "D", "F", "B", "H", "K", "N", "O"}) == 20);
  CHECK(path_latency(a, {"S", "A", "F", "G", "H", "L", "O"}) == 17);
}

TEST_CASE("problem B matches the diagram") {
  NetworkProblem b = toy_problem(ToyProblem::kB);
  CHECK(b.nodes.size() == 17);
  CHECK(b.edges.size() == 28);
  REQUIRE(b.commodities.size() == 2);
  CHECK(b.t_max == 10);
  CHECK(b.disjointness_mode == DisjointnessMode::kNode);

  CHECK(path_latency(b, {"G", "D", "E", "J", "M"}) == 10);
  CHECK(path_latency(b, {"I", "E", "J", "N", "Q", "P"}) == 10);
  CHECK(path_latency(b, {"G", "L", "O"}) == 9);

  // seven terminals leave ten node risk groups
  int terminals = 0;
  for (std::size_t n = 0; n < b.nodes.size(); ++n) {
    if (b.is_terminal_any(static_cast<int>(n))) ++terminals;
  }
  CHECK(terminals == 7);
  CHECK(derive_srgs(b).size() == 10);
}

TEST_CASE("derive_srgs per mode") {
  NetworkProblem p;
  p.nodes = {"a", "b", "c"};
  p.edges = {{0, 1, 1, 1, 1}, {1, 2, 1, 1, 1}, {0, 2, 1, 1, 1}};
  Commodity k;
  k.key = "k";
  k.sources = {0};
  k.sinks = {2};
  p.commodities = {k};
  p.t_max = 5;

  SUBCASE("edge mode yields singleton groups per edge") {
    p.disjointness_mode = DisjointnessMode::kEdge;
    auto groups = derive_srgs(p);
    REQUIRE(groups.size() == 3);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      CHECK(groups[g].nodes.empty());
      REQUIRE(groups[g].edges.size() == 1);
      CHECK(groups[g].edges[0] == static_cast<int>(g));
    }
  }

  SUBCASE("node mode covers non-terminal nodes with incident edges") {
    p.disjointness_mode = DisjointnessMode::kNode;
    auto groups = derive_srgs(p);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].nodes == std::vector<int>{1});
    CHECK(groups[0].edges == std::vector<int>{0, 1});
  }

  SUBCASE("explicit mode returns the user groups unchanged") {
    p.disjointness_mode = DisjointnessMode::kSrgExplicit;
    SharedRiskGroup g1{"g1", {1}, {}};
    SharedRiskGroup g2{"g2", {}, {0, 2}};
    p.srgs = {g1, g2};
    auto groups = derive_srgs(p);
    REQUIRE(groups.size() == 2);
    CHECK(groups[0].id == "g1");
    CHECK(groups[1].edges == std::vector<int>{0, 2});
  }
}

TEST_CASE("save/load round trip is identical modulo key order") {
  for (ToyProblem which : {ToyProblem::kA, ToyProblem::kB}) {
    NetworkProblem p = toy_problem(which);
    auto path = std::filesystem::temp_directory_path() / "routequbo_roundtrip.json";
    save_problem(p, path);
    NetworkProblem back = load_problem(path);
    CHECK(nlohmann::json::parse(problem_to_json_string(back)) ==
          nlohmann::json::parse(problem_to_json_string(p)));
    // a second save is byte identical
    auto path2 = std::filesystem::temp_directory_path() / "routequbo_roundtrip2.json";
    save_problem(back, path2);
    std::ifstream f1(path), f2(path2);
    std::string s1((std::istreambuf_iterator<char>(f1)), {});
    std::string s2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(s1 == s2);
    std::filesystem::remove(path);
    std::filesystem::remove(path2);
  }
}

TEST_CASE("explicit srgs and spectrum sections round trip") {
  NetworkProblem p;
  p.nodes = {"a", "b", "c"};
  p.edges = {{0, 1, 2, 3, 4}, {1, 2, 1, 1, 1}};
  Commodity k{"k1", {0}, {2}, 2};
  p.commodities = {k};
  p.srgs = {{"g1", {1}, {0}}};
  p.t_max = 9;
  p.cost_threshold = 12;
  p.disjointness_mode = DisjointnessMode::kSrgExplicit;
  SpectrumSpec spec;
  spec.mode = SpectrumMode::kRsa;
  spec.num_slots = 4;
  spec.max_width = 2;
  spec.demand_widths["k1"] = 2;
  p.spectrum = spec;

  NetworkProblem back = problem_from_json_string(problem_to_json_string(p));
  CHECK(back.srgs.size() == 1);
  CHECK(back.srgs[0].edges == std::vector<int>{0});
  CHECK(back.cost_threshold == 12);
  REQUIRE(back.spectrum.has_value());
  CHECK(back.spectrum->mode == SpectrumMode::kRsa);
  CHECK(back.spectrum->num_slots == 4);
  CHECK(back.spectrum->width_for("k1") == 2);
}

TEST_CASE("load rejects malformed problems with a named field") {
  auto base = nlohmann::json::parse(problem_to_json_string(toy_problem(ToyProblem::kA)));

  SUBCASE("dangling sink") {
    auto j = base;
    j["commodities"][0]["sinks"].push_back("ZZ");
    CHECK_THROWS_WITH_AS(problem_from_json_string(j.dump()),
                         doctest::Contains("unknown node ZZ"), ProblemError);
  }
  SUBCASE("zero t_max") {
    auto j = base;
    j["t_max"] = 0;
    CHECK_THROWS_WITH_AS(problem_from_json_string(j.dump()),
                         doctest::Contains("t_max"), ProblemError);
  }
  SUBCASE("empty sink set") {
    auto j = base;
    j["commodities"][0]["sinks"] = nlohmann::json::array();
    CHECK_THROWS_WITH_AS(problem_from_json_string(j.dump()),
                         doctest::Contains("sinks must be nonempty"), ProblemError);
  }
  SUBCASE("source repeated as sink") {
    auto j = base;
    j["commodities"][0]["sinks"].push_back("S");
    CHECK_THROWS_WITH_AS(problem_from_json_string(j.dump()),
                         doctest::Contains("both a source and a sink"), ProblemError);
  }
  SUBCASE("parallel edges") {
    auto j = base;
    j["edges"].push_back(j["edges"][0]);
    CHECK_THROWS_WITH_AS(problem_from_json_string(j.dump()),
                         doctest::Contains("parallel edge"), ProblemError);
  }
  SUBCASE("dangling srg edge") {
    auto j = base;
    j["srgs"] = nlohmann::json::array();
    j["srgs"].push_back({{"id", "g"}, {"edges", {"S->Q"}}});
    CHECK_THROWS_WITH_AS(problem_from_json_string(j.dump()),
                         doctest::Contains("srg g"), ProblemError);
  }
  SUBCASE("not json at all") {
    CHECK_THROWS_AS(problem_from_json_string("{nope"), ProblemError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_problem("/nonexistent/path.json"), ProblemError);
  }
}

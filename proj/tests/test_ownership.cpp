#include <doctest.h>

#include <sstream>

#include "mediasim/diagnostics.hpp"
#include "mediasim/error.hpp"
#include "mediasim/ownership.hpp"

using namespace mediasim;
using Edges = std::vector<std::pair<std::string, std::string>>;

namespace {

Registry registry_from(const std::string& rows, const std::string& graph = "") {
  std::stringstream r(rows);
  if (graph.empty()) return load_registry(r);
  std::stringstream g(graph);
  return load_registry(r, &g);
}

}  // namespace

TEST_CASE("single owner row") {
  const auto reg = registry_from("emol,El Mercurio,1.0\n");
  REQUIRE(reg.records.size() == 1);
  CHECK(reg.records[0].owners.size() == 1);
  CHECK(reg.records[0].resolved_owner == "El Mercurio");
}

TEST_CASE("missing owner resolves to UNKNOWN") {
  const auto reg = registry_from("outlet,owner,share\nx,,\ny,UNKNOWN,\n");
  REQUIRE(reg.records.size() == 2);
  CHECK_FALSE(reg.find("x")->resolved_owner.has_value());
  CHECK_FALSE(reg.find("y")->resolved_owner.has_value());
}

TEST_CASE("owner graph errors") {
  CHECK_THROWS_AS(registry_from("a,A,1\n", "A,B\nB,A\n"), DataError);
  CHECK_THROWS_AS(registry_from("a,A,1\n", "H,A\nG,A\n"), DataError);
  CHECK_THROWS_AS(registry_from("a,A,1\n", "A,A\n"), DataError);
}

TEST_CASE("registry parse errors") {
  CHECK_THROWS_AS(registry_from("a,A\n"), ParseError);
  CHECK_THROWS_AS(registry_from("a,A,lots\n"), ParseError);
  CHECK_THROWS_AS(registry_from("a,A,1.5\n"), ParseError);
  CHECK_THROWS_AS(registry_from("a,A,0.7\na,B,0.7\n"), DataError);
}

TEST_CASE("resolve_owner picks the major partner") {
  OwnershipRecord r{"o", {{"A", 0.6}, {"B", 0.4}}, std::nullopt};
  CHECK(resolve_owner(r, {}) == "A");
}

TEST_CASE("resolve_owner lifts to the topmost ancestor") {
  OwnershipRecord r{"o", {{"A", 1.0}}, std::nullopt};
  CHECK(resolve_owner(r, OwnerGraph(Edges{{"H", "A"}})) == "H");
  CHECK(resolve_owner(r, OwnerGraph(Edges{{"G", "H"}, {"H", "A"}})) == "G");
}

TEST_CASE("resolve_owner tie goes to the lexicographic minimum with a warning") {
  WarningCapture cap;
  OwnershipRecord r{"o", {{"B", 0.5}, {"A", 0.5}}, std::nullopt};
  CHECK(resolve_owner(r, {}) == "A");
  CHECK(cap.contains("tied"));
}

TEST_CASE("resolve_owner is order invariant") {
  WarningCapture quiet;
  std::vector<OwnerShare> owners = {{"C", 0.2}, {"A", 0.3}, {"B", 0.3}, {"D", 0.1}};
  std::sort(owners.begin(), owners.end(), [](auto& a, auto& b) { return a.owner < b.owner; });
  const OwnerGraph g(Edges{{"Z", "B"}});
  std::optional<std::string> first;
  do {
    const auto got = resolve_owner({"o", owners, std::nullopt}, g);
    if (!first) first = got;
    CHECK(got == first);
  } while (std::next_permutation(owners.begin(), owners.end(),
                                 [](auto& a, auto& b) { return a.owner < b.owner; }));
  CHECK(first == "A");
}

TEST_CASE("ground_truth_partition groups by resolved owner") {
  const auto reg = registry_from("a,O1,1\nb,O1,1\nc,O2,1\n");
  const auto p = ground_truth_partition(reg, {"a", "b", "c"});
  CHECK(p.labels() == std::vector<int>{1, 1, 2});
}

TEST_CASE("ground_truth_partition never merges unknowns") {
  const auto reg = registry_from("a,,\nb,,\n");
  const auto p = ground_truth_partition(reg, {"a", "b"});
  CHECK(p.labels()[0] != p.labels()[1]);
}

TEST_CASE("ground_truth_partition edge cases") {
  WarningCapture cap;
  const auto reg = registry_from("a,O1,1\n");
  CHECK(ground_truth_partition(reg, {}).size() == 0);
  const auto p = ground_truth_partition(reg, {"a", "ghost"});
  CHECK(p.labels()[0] != p.labels()[1]);
  CHECK(cap.contains("ghost"));
}

TEST_CASE("ground_truth_partition subsumption merges subsidiaries") {
  const auto reg = registry_from("a,Sub1,1\nb,Sub2,1\nc,Other,1\n", "parent,child\nHolding,Sub1\nHolding,Sub2\n");
  const auto p = ground_truth_partition(reg, {"a", "b", "c"});
  CHECK(p.labels()[0] == p.labels()[1]);
  CHECK(p.labels()[0] != p.labels()[2]);
}

TEST_CASE("registry round trip") {
  const auto reg = registry_from("a,A,0.6\na,B,0.4\nb,,\nc,\"Grupo, S.A.\",1\n");
  std::stringstream ss;
  write_registry_csv(ss, reg.records);
  const auto again = load_registry(ss);
  REQUIRE(again.records.size() == 3);
  CHECK(again.find("a")->resolved_owner == "A");
  CHECK_FALSE(again.find("b")->resolved_owner);
  CHECK(again.find("c")->resolved_owner == "Grupo, S.A.");
}

#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "universefan/nestoid.hpp"

using namespace uf;

namespace {

Lattice star_lattice() {
  return Lattice::flats_of_graph({{"1", 0, 1}, {"2", 0, 2}, {"3", 0, 3}});
}

Lattice bowtie_lattice() {
  return Lattice::flats_of_graph(
      {{"c", 1, 2}, {"b", 2, 3}, {"a", 1, 3}, {"d", 3, 4}, {"f", 4, 5}, {"e", 3, 5}});
}

NestableSet connected_flats(const Lattice& lat, const std::vector<Edge>& edges) {
  return graphical_building_set(lat, edges);
}

Lattice cyclic_interval_poset() {
  std::vector<std::string> elems = {"0", "1", "2", "3", "4", "12", "23", "34", "14",
                                    "123", "234", "134", "124", "1234"};
  std::vector<std::pair<std::string, std::string>> covers = {
      {"0", "1"}, {"0", "2"}, {"0", "3"}, {"0", "4"},
      {"1", "12"}, {"2", "12"}, {"2", "23"}, {"3", "23"},
      {"3", "34"}, {"4", "34"}, {"1", "14"}, {"4", "14"},
      {"12", "123"}, {"23", "123"}, {"23", "234"}, {"34", "234"},
      {"34", "134"}, {"14", "134"}, {"12", "124"}, {"14", "124"},
      {"123", "1234"}, {"234", "1234"}, {"134", "1234"}, {"124", "1234"}};
  return Lattice::from_covers(elems, covers);
}

std::set<std::set<std::string>> named_sets(const NestableSet& g,
                                           const std::vector<std::vector<int>>& sets) {
  std::set<std::set<std::string>> out;
  for (const auto& n : sets) {
    std::set<std::string> s;
    for (int p : n) s.insert(g.names[p]);
    out.insert(s);
  }
  return out;
}

// definition-level oracle: filter all subsets
std::vector<std::vector<int>> brute_force_nested(const NestableSet& g, bool only_maximal) {
  int m = g.size();
  REQUIRE(m <= 20);
  std::vector<std::vector<int>> all;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> n;
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1u) n.push_back(i);
    // check every antichain of size >= 2 directly
    bool nested = true;
    for (std::uint32_t sub = mask; sub && nested; sub = (sub - 1) & mask) {
      std::vector<int> a;
      for (int i = 0; i < m; ++i)
        if (sub >> i & 1u) a.push_back(i);
      if (a.size() < 2) continue;
      bool antichain = true;
      for (std::size_t i = 0; i < a.size() && antichain; ++i)
        for (std::size_t j = i + 1; j < a.size() && antichain; ++j)
          if (!g.incomparable(a[i], a[j])) antichain = false;
      if (!antichain) continue;
      std::vector<std::int64_t> elems;
      for (int p : a) elems.push_back(g.members[p]);
      std::int64_t join = g.lat->join_set(elems, g.hi);
      if (join >= 0 && g.contains_elem(join)) nested = false;
    }
    if (nested) all.push_back(n);
  }
  if (!only_maximal) return all;
  std::vector<std::vector<int>> maximal;
  for (const auto& n : all) {
    bool is_max = true;
    for (const auto& o : all)
      if (o.size() > n.size() && std::includes(o.begin(), o.end(), n.begin(), n.end()))
        { is_max = false; break; }
    if (is_max && !n.empty()) maximal.push_back(n);
  }
  return maximal;
}

}  // namespace

TEST_CASE("star maximal building set is nestable, building, nestoid, stable") {
  Lattice lat = star_lattice();
  NestableSet g = maximal_building_set(lat);
  CHECK(is_nestable(g));
  CHECK(is_building_set(g));
  CHECK(is_building_set_by_products(g));
  CHECK(is_nestoid(g));
  CHECK(is_stable(g));
}

TEST_CASE("bowtie connected flats form a stable building set") {
  Lattice lat = bowtie_lattice();
  std::vector<Edge> edges = {{"c", 1, 2}, {"b", 2, 3}, {"a", 1, 3},
                             {"d", 3, 4}, {"f", 4, 5}, {"e", 3, 5}};
  NestableSet g = connected_flats(lat, edges);
  CHECK(g.size() == 17);
  CHECK(is_nestable(g));
  CHECK(is_building_set(g));
  CHECK(is_nestoid(g));
  CHECK(is_stable(g));
}

TEST_CASE("missing top fails nestability") {
  Lattice lat = star_lattice();
  NestableSet g = make_nestable_set_by_ids(lat, {"1", "2", "12"});
  CHECK_FALSE(is_nestable(g));
}

TEST_CASE("cyclic-interval example: nestoid but not a building set") {
  Lattice lat = cyclic_interval_poset();
  NestableSet g = make_nestable_set_by_ids(lat, {"4", "12", "123", "124", "1234"});
  CHECK(is_nestable(g));
  PairWitness w;
  CHECK_FALSE(is_building_set(g, &w));
  CHECK(is_nestoid(g));
  auto max_sets = enumerate_nested_sets(g, true);
  CHECK(named_sets(g, max_sets) ==
        std::set<std::set<std::string>>{{"4", "124", "1234"},
                                        {"12", "123", "1234"},
                                        {"12", "124", "1234"}});
}

TEST_CASE("nestedness examples") {
  Lattice lat = star_lattice();
  NestableSet g = maximal_building_set(lat);
  auto pos = [&](const std::string& id) { return g.pos_of(lat.index(id)); };
  CHECK(is_nested(g, {pos("2"), pos("12"), pos("123")}));
  // join of {1,2} is 12 which is in G
  CHECK_FALSE(is_nested(g, {pos("1"), pos("2"), pos("123")}));

  Lattice b2 = Lattice::boolean_lattice(2);
  NestableSet g2 = maximal_building_set(b2);
  CHECK_FALSE(is_nested(g2, {g2.pos_of(b2.index("1")), g2.pos_of(b2.index("2")),
                             g2.pos_of(b2.index("12"))}));
}

TEST_CASE("star: 6 maximal nested sets, all chains with the top") {
  Lattice lat = star_lattice();
  NestableSet g = maximal_building_set(lat);
  auto max_sets = enumerate_nested_sets(g, true);
  CHECK(max_sets.size() == 6);
  for (const auto& n : max_sets) {
    CHECK(n.size() == 3);
    CHECK(std::find(n.begin(), n.end(), g.top_pos()) != n.end());
  }
  CHECK(named_sets(g, max_sets) ==
        std::set<std::set<std::string>>{{"1", "12", "123"},
                                        {"2", "12", "123"},
                                        {"2", "23", "123"},
                                        {"3", "23", "123"},
                                        {"3", "13", "123"},
                                        {"1", "13", "123"}});
}

TEST_CASE("bowtie: 38 maximal nested sets of cardinality 4") {
  Lattice lat = bowtie_lattice();
  std::vector<Edge> edges = {{"c", 1, 2}, {"b", 2, 3}, {"a", 1, 3},
                             {"d", 3, 4}, {"f", 4, 5}, {"e", 3, 5}};
  NestableSet g = connected_flats(lat, edges);
  auto max_sets = enumerate_nested_sets(g, true);
  CHECK(max_sets.size() == 38);
  int chains = 0;
  std::set<std::set<std::string>> non_chains;
  for (const auto& n : max_sets) {
    CHECK(n.size() == 4);
    bool chain = true;
    for (std::size_t i = 0; i < n.size() && chain; ++i)
      for (std::size_t j = i + 1; j < n.size() && chain; ++j)
        if (g.incomparable(n[i], n[j])) chain = false;
    if (chain) ++chains;
    else {
      std::set<std::string> s;
      for (int p : n) s.insert(g.names[p]);
      non_chains.insert(s);
    }
  }
  CHECK(chains == 28);
  CHECK(non_chains == std::set<std::set<std::string>>{
      {"a", "abc", "f", "abcdef"}, {"b", "abc", "f", "abcdef"},
      {"d", "def", "c", "abcdef"}, {"e", "def", "c", "abcdef"},
      {"c", "abc", "f", "abcdef"}, {"c", "def", "f", "abcdef"},
      {"c", "d", "abcd", "abcdef"}, {"c", "e", "abce", "abcdef"},
      {"f", "a", "adef", "abcdef"}, {"f", "b", "bdef", "abcdef"}});
}

TEST_CASE("singleton nestable set has one maximal nested set") {
  Lattice chain = Lattice::from_covers({"0", "t"}, {{"0", "t"}});
  NestableSet g = make_nestable_set_by_ids(chain, {"t"});
  auto max_sets = enumerate_nested_sets(g, true);
  REQUIRE(max_sets.size() == 1);
  CHECK(max_sets[0] == std::vector<int>{0});
}

TEST_CASE("enumeration agrees with brute force on small fixtures") {
  Lattice star = star_lattice();
  NestableSet g1 = maximal_building_set(star);
  CHECK(named_sets(g1, enumerate_nested_sets(g1, false)) ==
        named_sets(g1, brute_force_nested(g1, false)));
  CHECK(named_sets(g1, enumerate_nested_sets(g1, true)) ==
        named_sets(g1, brute_force_nested(g1, true)));

  Lattice cyc = cyclic_interval_poset();
  NestableSet g2 = make_nestable_set_by_ids(cyc, {"4", "12", "123", "124", "1234"});
  CHECK(named_sets(g2, enumerate_nested_sets(g2, false)) ==
        named_sets(g2, brute_force_nested(g2, false)));
}

TEST_CASE("building sets are nestoids; nestoid oracle agreement") {
  Lattice b3 = Lattice::boolean_lattice(3);
  // a non-building nestable set: {1, 12, 123}
  NestableSet g = make_nestable_set_by_ids(b3, {"1", "12", "123"});
  CHECK(is_nestable(g));
  // oracle: enumerate maximal nested sets of every interval and compare sizes
  bool oracle = true;
  for (int fp = 0; fp < g.size() && oracle; ++fp) {
    std::vector<int> below;
    for (int i = 0; i < g.size(); ++i)
      if (g.lat->leq(g.members[i], g.members[fp])) below.push_back(i);
    NestableSet sub = g.subset(below, g.members[fp]);
    auto max_sets = brute_force_nested(sub, true);
    for (const auto& n : max_sets)
      if (n.size() != max_sets[0].size()) oracle = false;
  }
  CHECK(is_nestoid(g) == oracle);
}

TEST_CASE("stability") {
  Lattice star = star_lattice();
  CHECK(is_stable(maximal_building_set(star)));
  Lattice chain = Lattice::from_covers({"0", "t"}, {{"0", "t"}});
  CHECK(is_stable(make_nestable_set_by_ids(chain, {"t"})));
}

TEST_CASE("down and up sets on the bowtie") {
  Lattice lat = bowtie_lattice();
  std::vector<Edge> edges = {{"c", 1, 2}, {"b", 2, 3}, {"a", 1, 3},
                             {"d", 3, 4}, {"f", 4, 5}, {"e", 3, 5}};
  NestableSet g = connected_flats(lat, edges);

  auto names_of = [&](const std::vector<int>& ps) {
    std::set<std::string> out;
    for (int p : ps) out.insert(g.names[p]);
    return out;
  };

  auto [down_abc, up_abc] = down_up_sets(g, g.pos_by_name("abc"));
  CHECK(names_of(down_abc) == std::set<std::string>{"a", "b", "c", "abc"});
  CHECK(names_of(up_abc) == std::set<std::string>{"abcd", "abce", "f", "abcdef"});

  auto [down_ae, up_ae] = down_up_sets(g, g.pos_by_name("ae"));
  CHECK(names_of(down_ae) == std::set<std::string>{"a", "e", "ae"});
  CHECK(names_of(up_ae) == std::set<std::string>{"abce", "adef", "abcdef"});

  auto [down_top, up_top] = down_up_sets(g, g.top_pos());
  CHECK(down_top.size() == static_cast<std::size_t>(g.size()));
  CHECK(up_top.empty());
}

TEST_CASE("causal regions of the boolean 2 fixture") {
  Lattice b2 = Lattice::boolean_lattice(2);
  NestableSet g = maximal_building_set(b2);
  auto regions = enumerate_causal_regions(g);
  // {12}, {1}, {2}, {12;1}, {12;2}
  CHECK(regions.size() == 5);
  int with_feet = 0;
  for (const auto& r : regions) {
    if (!r.feet.empty()) {
      ++with_feet;
      CHECK(g.names[r.star] == "12");
      CHECK(r.feet.size() == 1);
    }
  }
  CHECK(with_feet == 2);
}

TEST_CASE("causal regions within a maximal chain of the star") {
  Lattice lat = star_lattice();
  NestableSet g = maximal_building_set(lat);
  std::vector<int> n = {g.pos_by_name("1"), g.pos_by_name("12"), g.pos_by_name("123")};
  std::sort(n.begin(), n.end());
  auto regions = enumerate_causal_regions(g, n);
  CHECK(regions.size() == 6);
  auto trivial = enumerate_causal_regions(g, std::vector<int>{g.top_pos()});
  REQUIRE(trivial.size() == 1);
  CHECK(trivial[0].star == g.top_pos());
  CHECK(trivial[0].feet.empty());
}

TEST_CASE("region split on the bowtie reproduces the worked examples") {
  Lattice lat = bowtie_lattice();
  std::vector<Edge> edges = {{"c", 1, 2}, {"b", 2, 3}, {"a", 1, 3},
                             {"d", 3, 4}, {"f", 4, 5}, {"e", 3, 5}};
  NestableSet g = connected_flats(lat, edges);

  auto names_of = [&](const NestableSet& s) {
    return std::set<std::string>(s.names.begin(), s.names.end());
  };

  // R = {top; abc}
  CausalRegion r1{g.top_pos(), {g.pos_by_name("abc")}};
  RegionSplit s1 = region_split(g, r1);
  CHECK(names_of(s1.down) == std::set<std::string>{"abcd", "abce", "f", "abcdef"});
  CHECK(names_of(s1.up) == std::set<std::string>{"a", "b", "c", "abc"});
  CHECK(names_of(s1.h) == std::set<std::string>{"a", "b", "c", "abc", "abcdef"});
  CHECK(is_nestable(s1.h));
  CHECK(is_nestoid(s1.down));

  // R = {adef; a}
  CausalRegion r2{g.pos_by_name("adef"), {g.pos_by_name("a")}};
  RegionSplit s2 = region_split(g, r2);
  CHECK(names_of(s2.down) == std::set<std::string>{"ad", "ae", "f", "adef"});
  CHECK(names_of(s2.h) == std::set<std::string>{"a", "adef", "abcdef"});
  CHECK(is_nestable(s2.down));
  CHECK(is_stable(s2.down));

  // R = {top}: down is everything, up empty, h = {top}
  CausalRegion r3{g.top_pos(), {}};
  RegionSplit s3 = region_split(g, r3);
  CHECK(s3.down.size() == g.size());
  CHECK(s3.up.size() == 0);
  CHECK(names_of(s3.h) == std::set<std::string>{"abcdef"});
}

TEST_CASE("upstream lower set lemma holds on fixtures") {
  Lattice star = star_lattice();
  CHECK(upstream_lower_set_holds(maximal_building_set(star)));
  Lattice cyc = cyclic_interval_poset();
  CHECK(upstream_lower_set_holds(
      make_nestable_set_by_ids(cyc, {"4", "12", "123", "124", "1234"})));
}

TEST_CASE("nest-factors counting identity on the bowtie") {
  Lattice lat = bowtie_lattice();
  std::vector<Edge> edges = {{"c", 1, 2}, {"b", 2, 3}, {"a", 1, 3},
                             {"d", 3, 4}, {"f", 4, 5}, {"e", 3, 5}};
  NestableSet g = connected_flats(lat, edges);
  auto max_sets = enumerate_nested_sets(g, true);
  for (const char* fname : {"abc", "ae", "abcd"}) {
    int fp = g.pos_by_name(fname);
    std::size_t with_f = 0;
    for (const auto& n : max_sets)
      if (std::find(n.begin(), n.end(), fp) != n.end()) ++with_f;
    auto [down, up] = down_up_sets(g, fp);
    NestableSet gd = g.subset(down, g.members[fp]);
    NestableSet gu = g.subset(up, g.hi);
    std::size_t down_with_f = 0;
    for (const auto& n : enumerate_nested_sets(gd, true))
      if (std::find(n.begin(), n.end(), gd.pos_of(g.members[fp])) != n.end())
        ++down_with_f;
    std::size_t up_count = enumerate_nested_sets(gu, true).size();
    CHECK(with_f == down_with_f * up_count);
  }
}

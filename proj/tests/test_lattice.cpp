#include <doctest.h>

#include <algorithm>
#include <set>

#include "universefan/lattice.hpp"

using namespace uf;

namespace {

std::vector<Edge> star_edges() {
  // three edges sharing vertex 0
  return {{"1", 0, 1}, {"2", 0, 2}, {"3", 0, 3}};
}

std::vector<Edge> bowtie_edges() {
  // two triangles glued at vertex 3
  return {{"c", 1, 2}, {"b", 2, 3}, {"a", 1, 3}, {"d", 3, 4}, {"f", 4, 5}, {"e", 3, 5}};
}

// The 14-element poset of cyclic intervals in {1,2,3,4}; the ambient poset
// has pairs without joins, every proper interval is a genuine lattice.
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

}  // namespace

TEST_CASE("three-element chain from covers") {
  Lattice lat = Lattice::from_covers({"0", "a", "1"}, {{"0", "a"}, {"a", "1"}});
  CHECK(lat.size() == 3);
  CHECK(lat.id(lat.bottom()) == "0");
  CHECK(lat.id(lat.top()) == "1");
  CHECK(lat.join(lat.index("0"), lat.index("a")) == lat.index("a"));
  CHECK(lat.is_lattice());
  CHECK(lat.verify_axioms());
}

TEST_CASE("poset without a top is rejected with the offending pair") {
  CHECK_THROWS_AS(Lattice::from_covers({"0", "a", "b"}, {{"0", "a"}, {"0", "b"}}),
                  NotALattice);
  try {
    Lattice::from_covers({"0", "a", "b"}, {{"0", "a"}, {"0", "b"}});
  } catch (const NotALattice& e) {
    std::set<std::string> pair = {e.a, e.b};
    CHECK(pair == std::set<std::string>{"a", "b"});
  }
}

TEST_CASE("cyclic interval poset builds with partial joins") {
  Lattice lat = cyclic_interval_poset();
  CHECK(lat.size() == 14);
  CHECK_FALSE(lat.is_lattice());  // 1 v 3 has two minimal upper bounds
  CHECK(lat.join(lat.index("1"), lat.index("3")) == -1);
  CHECK(lat.join(lat.index("1"), lat.index("2")) == lat.index("12"));
  CHECK(lat.join(lat.index("4"), lat.index("12")) == lat.index("124"));
  // inside the interval [0,123] the join of 1 and 3 exists
  CHECK(lat.join_within(lat.index("1"), lat.index("3"), lat.index("123")) ==
        lat.index("123"));
  CHECK(lat.atomic());
}

TEST_CASE("boolean lattices") {
  Lattice b2 = Lattice::boolean_lattice(2);
  CHECK(b2.size() == 4);
  Lattice b3 = Lattice::boolean_lattice(3);
  CHECK(b3.size() == 8);
  CHECK(b3.atoms().size() == 3);
  CHECK(b3.id(b3.atoms()[0]) == "1");
  CHECK(b3.id(b3.top()) == "123");
  CHECK(b3.index("13") == (b3.atoms()[0] | b3.atoms()[2]));
  // cap boundary: implicit representation, no materialization
  Lattice b24 = Lattice::boolean_lattice(24);
  CHECK(b24.size() == (std::int64_t{1} << 24));
  CHECK(b24.join(5, 9) == 13);
  CHECK(b24.meet(5, 9) == 1);
  CHECK_THROWS_AS(Lattice::boolean_lattice(25), TooLarge);
}

TEST_CASE("flats of the star graph form the boolean lattice") {
  Lattice lat = Lattice::flats_of_graph(star_edges());
  CHECK(lat.size() == 8);
  CHECK(lat.atomic());
  CHECK(lat.atoms().size() == 3);
  CHECK(lat.id(lat.top()) == "123");
  CHECK(lat.index("12") >= 0);
  CHECK(lat.verify_axioms());
}

TEST_CASE("flats of a single edge give a 2-chain") {
  Lattice lat = Lattice::flats_of_graph({{"e", 0, 1}});
  CHECK(lat.size() == 2);
  CHECK(lat.id(lat.top()) == "e");
}

TEST_CASE("bowtie flats lattice") {
  Lattice lat = Lattice::flats_of_graph(bowtie_edges());
  for (const char* id : {"abc", "ad", "ae", "be", "bd", "def", "abcd", "abce",
                         "adef", "bdef", "abcdef"})
    CHECK(lat.index(id) >= 0);
  // af is a flat (two induced components) but abcdf is not
  CHECK(lat.index("af") >= 0);
  CHECK(lat.index("abcdf") == -1);
  CHECK(lat.join(lat.index("abcd"), lat.index("f")) == lat.top());
  CHECK(lat.join(lat.index("a"), lat.index("f")) == lat.index("af"));
  CHECK(lat.join(lat.index("a"), lat.index("b")) == lat.index("abc"));
  CHECK(lat.atomic());
  CHECK(lat.verify_axioms());
}

TEST_CASE("irreducibility") {
  Lattice b2 = Lattice::boolean_lattice(2);
  CHECK_FALSE(b2.is_irreducible(b2.top()));
  Lattice chain = Lattice::from_covers({"0", "a", "1"}, {{"0", "a"}, {"a", "1"}});
  CHECK(chain.is_irreducible(chain.top()));

  Lattice bow = Lattice::flats_of_graph(bowtie_edges());
  auto w = bow.product_witness(bow.index("ad"));
  REQUIRE(w.has_value());
  std::set<std::int64_t> parts = {w->first, w->second};
  CHECK(parts == std::set<std::int64_t>{bow.index("a"), bow.index("d")});
  CHECK(bow.is_irreducible(bow.index("abc")));
}

TEST_CASE("minimal building set of the star flats lattice") {
  Lattice b3 = Lattice::flats_of_graph(star_edges());
  auto mbs = b3.minimal_building_set();
  std::set<std::string> ids;
  for (auto e : mbs) ids.insert(b3.id(e));
  CHECK(ids == std::set<std::string>{"1", "2", "3", "123"});
}

TEST_CASE("minimal building set of a 2-chain is the top") {
  Lattice chain = Lattice::from_covers({"0", "a"}, {{"0", "a"}});
  auto mbs = chain.minimal_building_set();
  REQUIRE(mbs.size() == 1);
  CHECK(mbs[0] == chain.top());
}

TEST_CASE("interval sublattice of the cyclic poset") {
  Lattice lat = cyclic_interval_poset();
  SubLattice sub = make_interval_lattice(lat, lat.bottom(), lat.index("123"));
  CHECK(sub.lat.size() == 7);
  CHECK(sub.lat.is_lattice());
  CHECK(sub.lat.verify_axioms());
}

TEST_CASE("join is the unique minimal upper bound on the bowtie") {
  Lattice lat = Lattice::flats_of_graph(bowtie_edges());
  for (std::int64_t a = 0; a < lat.size(); ++a)
    for (std::int64_t b = a; b < lat.size(); ++b) {
      std::int64_t j = lat.join(a, b);
      REQUIRE(j >= 0);
      CHECK(lat.leq(a, j));
      CHECK(lat.leq(b, j));
      for (std::int64_t c = 0; c < lat.size(); ++c)
        if (lat.leq(a, c) && lat.leq(b, c)) CHECK(lat.leq(j, c));
    }
}

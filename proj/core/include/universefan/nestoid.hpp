#pragma once

#include <optional>
#include <string>
#include <vector>

#include "universefan/lattice.hpp"

namespace uf {

struct NotStable : LatticeError {
  explicit NotStable(const std::string& w) : LatticeError("not stable: " + w) {}
};
struct NotNestoid : LatticeError {
  explicit NotNestoid(const std::string& w) : LatticeError("not a nestoid: " + w) {}
};

// A candidate nestable set: members of a lattice interval [0, hi], the
// ambient top hi included. Joins are always taken inside [0, hi]. Members
// carry display names used for variable naming downstream.
struct NestableSet {
  const Lattice* lat = nullptr;
  std::int64_t hi = 0;                    // ambient top, member of `members`
  std::vector<std::int64_t> members;      // sorted lattice indices
  std::vector<std::string> names;         // parallel to members

  int size() const { return static_cast<int>(members.size()); }
  int top_pos() const;
  int pos_of(std::int64_t lattice_elem) const;      // -1 if absent
  int pos_by_name(const std::string& name) const;   // -1 if absent
  bool member_leq(int a, int b) const { return lat->leq(members[a], members[b]); }
  bool member_lt(int a, int b) const { return members[a] != members[b] && member_leq(a, b); }
  bool incomparable(int a, int b) const { return !member_leq(a, b) && !member_leq(b, a); }
  // join of two members inside [0, hi]: lattice index, -1 if undefined
  std::int64_t member_join(int a, int b) const {
    return lat->join_within(members[a], members[b], hi);
  }
  bool contains_elem(std::int64_t e) const { return pos_of(e) >= 0; }

  NestableSet subset(const std::vector<int>& positions, std::int64_t new_hi) const;
};

NestableSet make_nestable_set(const Lattice& lat, std::vector<std::int64_t> members,
                              std::vector<std::string> names = {});
NestableSet make_nestable_set_by_ids(const Lattice& lat, const std::vector<std::string>& ids);
// The maximal building set L \ {0}.
NestableSet maximal_building_set(const Lattice& lat);
// Connected flats of a graph's flats lattice (the graphical building set).
NestableSet graphical_building_set(const Lattice& flats, const std::vector<Edge>& edges);

struct PairWitness {
  std::int64_t f = -1, g = -1;  // lattice indices
  std::string detail;
};

bool is_nestable(const NestableSet& g, PairWitness* w = nullptr);
// Contains the top, contains every irreducible, and is nestable.
bool is_building_set(const NestableSet& g, PairWitness* w = nullptr);
// Definition-level check: for every f outside g, [0,f] is the product of the
// intervals below the maximal g-elements under f. Used as an oracle.
bool is_building_set_by_products(const NestableSet& g, PairWitness* w = nullptr);

// N given as positions into g.members.
bool is_nested(const NestableSet& g, const std::vector<int>& n);
bool is_nested_maximal(const NestableSet& g, const std::vector<int>& n);
// All nested sets (or only inclusion-maximal ones), lexicographic.
std::vector<std::vector<int>> enumerate_nested_sets(const NestableSet& g, bool only_maximal);

bool is_nestoid(const NestableSet& g, std::string* witness = nullptr);
bool is_stable(const NestableSet& g, std::string* witness = nullptr);

// G_down = {g <= f},  G_up = {g > f or g v f outside G}; positions into g.
std::pair<std::vector<int>, std::vector<int>> down_up_sets(const NestableSet& g, int f_pos);

struct CausalRegion {
  int star = -1;           // position into the owning nestable set
  std::vector<int> feet;   // positions, sorted, pairwise incomparable, all < star
  bool operator==(const CausalRegion&) const = default;
};

std::vector<CausalRegion> enumerate_causal_regions(
    const NestableSet& g, const std::optional<std::vector<int>>& within = std::nullopt);

struct RegionSplit {
  NestableSet down;  // nestable set in [0, r_star]
  NestableSet up;    // nestable set in the ambient interval
  NestableSet h;     // up united with {r_star}
};
RegionSplit region_split(const NestableSet& g, const CausalRegion& r);

// Lemma-level property: x v y outside G implies x v z outside G for z <= y.
// Exhaustive over x in L, y in G, z <= y; used by tests and selftest.
bool upstream_lower_set_holds(const NestableSet& g);

}  // namespace uf

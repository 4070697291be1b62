#pragma once

#include <cstdint>
#include <vector>

#include "universefan/geometry.hpp"
#include "universefan/nestoid.hpp"

namespace uf {

// The Hasse diagram of a nested set with an adjoined root. Vertices 0..m-1
// are the nested set elements (in sorted position order), vertex m is the
// root; edge i joins vertex i to parent[i] and is labelled by i.
struct HasseForest {
  int m = 0;
  std::vector<int> parent;                 // size m, values in 0..m
  std::vector<std::vector<int>> children;  // size m+1
  std::vector<int> elems;                  // positions into the owning set

  int root() const { return m; }
};

HasseForest hasse_forest(const NestableSet& g, const std::vector<int>& nested);

// Tube: vertex subset of the tree, as a bitmask over 0..m (bit m = root).
using Tube = std::uint32_t;

bool tube_connected(const HasseForest& t, Tube s);
// All connected vertex subsets, optionally avoiding the root.
std::vector<Tube> all_tubes(const HasseForest& t, bool allow_root);
// Maximal tubings (laminar families of tubes). With allow_root the ground
// set is all of T_N; otherwise the root is excluded and the forest below it
// must be connected (maximal nested sets).
std::vector<std::vector<Tube>> maximal_tubings(const HasseForest& t, bool allow_root);

// Edges entering/leaving a tube: edge i contributes i+ when its lower
// endpoint is inside, i- when its upper endpoint is inside.
struct TubeCut {
  std::vector<int> plus;   // forest vertex indices
  std::vector<int> minus;
};
TubeCut tube_cut(const HasseForest& t, Tube s);

// Family of subsets of {0..n-1} containing all singletons and closed under
// union of intersecting members.
struct BooleanBuildingSet {
  int n = 0;
  std::vector<std::uint32_t> sets;  // sorted
  bool contains(std::uint32_t s) const;
};

BooleanBuildingSet make_boolean_building_set(int n, std::vector<std::uint32_t> sets);
BooleanBuildingSet minimal_boolean_building_set(int n);
BooleanBuildingSet full_boolean_building_set(int n);
// Edge sets of connected subgraphs of the tree (edges = vertices 0..m-1).
BooleanBuildingSet graphical_boolean_building_set(const HasseForest& t);

struct RootedTreeN {
  int root = -1;
  std::vector<int> parent;  // parent[root] = -1
  std::uint32_t descendants(int i) const;  // i included
  bool operator==(const RootedTreeN&) const = default;
};

std::vector<RootedTreeN> btrees(const BooleanBuildingSet& b);

enum class MinMax { Min, Max };
// Maximal cones C_T (min) or C^T (max) of the subdivision of the positive
// orthant cut out by the piecewise linear functions sum of min/max over the
// members. Cone labels identify the tree by its parent vector.
Fan minmax_subdivision(const BooleanBuildingSet& b, MinMax mode);

}  // namespace uf

#pragma once

#include <string>
#include <vector>

#include "universefan/linalg.hpp"

namespace uf {

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cone given by integer ray generators (primitive, rows of `gens`).
struct ConeZ {
  int dim_space = 0;
  MatI gens;
  std::vector<std::string> labels;

  int num_gens() const { return static_cast<int>(gens.size()); }
  int dim() const;  // rank of the generator matrix
};

ConeZ make_cone(int dim_space, MatI gens, std::vector<std::string> labels = {});

// Extreme rays and lineality space of {x : a.x >= 0 for all rows a},
// computed by the double description method with exact arithmetic.
struct DualDescription {
  MatI rays;       // primitive, canonically sorted
  MatI lineality;  // basis of the lineality space
};
DualDescription dual_rays(const MatI& ineqs, int dim);

// Facet normals of cone(gens): the extreme rays of the dual cone.
// Normals are defined modulo the orthogonal complement of span(gens); every
// returned normal vanishes on that complement's intersection with the span
// basis chosen internally. For full-dimensional cones these are the facets.
MatI facet_normals(const ConeZ& cone);

bool cone_contains(const ConeZ& cone, const VecI& point);

// True iff no generator is a nonnegative combination of the others.
bool generators_irredundant(const ConeZ& cone);

// All faces of the cone as sorted generator-index sets (the whole cone
// included, the empty face included last). Requires a pointed cone.
std::vector<std::vector<int>> enumerate_faces(const ConeZ& cone);

// Extreme rays among an explicit generating set (prunes redundant ones).
MatI extreme_rays(const MatI& gens);

// Canonical ordering of integer vectors (lexicographic).
bool vec_less(const VecI& a, const VecI& b);
void sort_rays(MatI& rays);

// Polyhedral fan stored as interned rays plus maximal cones.
struct Fan {
  int dim = 0;
  MatI rays;
  std::vector<std::vector<int>> max_cones;   // sorted ray indices
  std::vector<std::string> cone_labels;      // parallel to max_cones

  int add_ray(VecI r);  // interns; returns the ray index
  ConeZ cone(int i) const;
};

}  // namespace uf

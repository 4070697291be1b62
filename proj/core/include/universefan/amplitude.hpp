#pragma once

#include "universefan/nestoid.hpp"
#include "universefan/ratexpr.hpp"

namespace uf {

struct NotAtomic : LatticeError {
  NotAtomic() : LatticeError("operation requires an atomic lattice") {}
};

// Maximal cones of the free nested set fan; each cone is the coordinate
// cone on a maximal nested set. The quotient ray is the ambient top.
struct FreeNestedFan {
  NestableSet nestable;
  std::vector<std::vector<int>> max_cones;  // positions into nestable.members
};

FreeNestedFan build_free_fan(const NestableSet& g);

// A(L, G) = sum over maximal nested sets N of prod_{f in N, f != top} 1/s_f.
RatExpr amplitude(const NestableSet& g);
// As amplitude, with each 1/s_f replaced by 1/(Ep_f * Em_f).
RatExpr amplitude_doubled(const NestableSet& g);

// p: R^G -> R^E, f -> sum of the atoms below f. `x` is indexed by positions
// into g.members; the result by positions into lat.atoms().
VecQ atom_projection(const NestableSet& g, const VecQ& x);
// The retract r with r(p(x)) = x for x in the free nested set fan.
// Returns the coefficient vector over g.members; throws if y is not in the
// image of the fan.
VecQ atom_projection_retract(const NestableSet& g, VecQ y);

// Res_{s_f = 0} A(L,G) = A([0,f], G_down) * A(L, G_up), checked with the
// equality test on the hyperplane s_f = 0.
bool check_factorization(const NestableSet& g, int f_pos);

// Substitution s_g -> sum of s_{g'} over the factors of g in the minimal
// building set (the building-set invariance route).
RatExpr substitute_to_minimal(const NestableSet& g, const NestableSet& minimal);

}  // namespace uf

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "universefan/amplitude.hpp"
#include "universefan/nestoid.hpp"
#include "universefan/ratexpr.hpp"
#include "universefan/trees.hpp"

namespace uf {

struct NotMaximal : LatticeError {
  NotMaximal() : LatticeError("nested set is not maximal") {}
};
struct NotAFace : LatticeError {
  explicit NotAFace(const std::string& w) : LatticeError("not a face of the universe fan: " + w) {}
};
struct InvalidMarking : LatticeError {
  explicit InvalidMarking(int c)
      : LatticeError("marking violates condition (" + std::to_string(c) + ")"), condition(c) {}
  int condition;  // 1..5
};

// Coordinates of R^{2G}: (p_f, m_f) pairs in member order. Internally m_top
// is kept; it is dropped at the module boundary (every universe-fan vector
// has m_top = 0).
struct DoubledSpace {
  const NestableSet* g = nullptr;
  int dim_full() const { return 2 * g->size(); }
  int dim() const { return dim_full() - 1; }  // m_top projected out
  int p_coord(int pos) const { return 2 * pos; }
  int m_coord(int pos) const { return 2 * pos + 1; }
  std::vector<Var> dual_vars_full() const;
  // dual vars with the m_top slot removed
  std::vector<Var> dual_vars() const;
  VecI drop_mtop(const VecI& v) const;
  VecI with_mtop(const VecI& v) const;  // reinsert a zero m_top coordinate
};

// F_g in full coordinates: p_top + sum_{g < f < top, f in G}(p_f - m_f) - m_g.
// With `within` the sum runs over that nested set only (the restriction of
// the global form to the coordinate subspace).
VecI causal_form_vec(const NestableSet& g, int g_pos,
                     const std::optional<std::vector<int>>& within = std::nullopt);
LinForm causal_form(const NestableSet& g, int g_pos,
                    const std::optional<std::vector<int>>& within = std::nullopt);
std::vector<LinForm> causal_forms(const NestableSet& g,
                                  const std::optional<std::vector<int>>& within = std::nullopt);

// w_R = r*+ + sum of feet-, in full coordinates.
VecI region_vector(const NestableSet& g, const CausalRegion& r);

// The maximal cone U_N (rays = causal regions inside N), in the m_top = 0
// coordinates. Labels record the regions as "star;f1,f2".
ConeZ universe_max_cone(const NestableSet& g, const std::vector<int>& nested);

// Cross-checks the V-description against the inequality description
// {p,m,F >= 0}: rays satisfy the inequalities, the facet normals computed
// from the rays are exactly the irredundant inequality normals, and the
// H-side generators match the rays. Throws on mismatch.
void verify_universe_cone(const NestableSet& g, const std::vector<int>& nested,
                          const ConeZ& cone);

struct MarkedNestedSet {
  std::vector<int> n;  // positions into the nestable set, sorted
  std::uint32_t beta_plus = 0, beta_minus = 0, beta_dot = 0;  // bits over n

  bool operator==(const MarkedNestedSet&) const = default;
  bool operator<(const MarkedNestedSet& o) const;
  std::string encode(const NestableSet& g) const;  // e.g. "{123+,12+-*,1+-*}"
};

// 0 when valid, else the index 1..5 of the violated condition.
int marking_violation(const NestableSet& g, const MarkedNestedSet& m);

std::vector<CausalRegion> adapted_regions(const NestableSet& g, const MarkedNestedSet& m);
ConeZ cone_of_marking(const NestableSet& g, const MarkedNestedSet& m);
MarkedNestedSet marking_of_cone(const NestableSet& g, const ConeZ& cone);

struct FaceLattice {
  std::vector<MarkedNestedSet> faces;          // includes the empty face last? no: sorted
  std::vector<std::vector<int>> adapted;       // region index sets per face
  std::vector<CausalRegion> regions;           // all causal regions (ray order)
  std::vector<int> dims;                       // dim of each face
  std::vector<std::pair<int, int>> hasse;      // cover pairs (lower, upper)
};
FaceLattice face_lattice(const NestableSet& g);

// Images of the dual generators under the cosmological-polytope isomorphism,
// reported as vectors over x_(vertex) then y_(edge) coordinates of the Hasse
// tree of N.
struct CosmologicalMap {
  std::vector<std::string> sources;  // "p:f", "m:f", "F:f", "p:top"
  MatI images;
  Int det_abs;  // |determinant| of the coordinate map (a power of 2)
};
CosmologicalMap cosmological_polytope_map(const NestableSet& g, const std::vector<int>& nested);

// Laplace transform of the universe fan via the tubing triangulation.
RatExpr wavefunction(const NestableSet& g, std::size_t max_terms = 1000000);
// Independent route: triangulate each U_N by placing its rays in order and
// summing scaled simplicial transforms.
RatExpr wavefunction_by_placing(const NestableSet& g);

bool check_total_energy_residue(const NestableSet& g);
bool check_region_factorization(const NestableSet& g, const CausalRegion& r);

// The A^sh factor of the region factorization: amplitude of G_down in
// doubled variables with the shift Ep_h += sum E-_феet<=h, Em_h -= same.
RatExpr shifted_amplitude(const NestableSet& g, const CausalRegion& r, const RegionSplit& split);

}  // namespace uf

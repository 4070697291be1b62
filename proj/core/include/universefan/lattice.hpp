#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace uf {

struct LatticeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Some pair has no common upper (or lower) bound at all.
struct NotALattice : LatticeError {
  NotALattice(std::string a_, std::string b_)
      : LatticeError("not a lattice: elements '" + a_ + "' and '" + b_ +
                     "' have no common bound"),
        a(std::move(a_)),
        b(std::move(b_)) {}
  std::string a, b;
};

struct NoBottom : LatticeError {
  NoBottom() : LatticeError("poset has no unique minimal element") {}
};
struct NoTop : LatticeError {
  NoTop() : LatticeError("poset has no unique maximal element") {}
};

struct TooLarge : LatticeError {
  explicit TooLarge(const std::string& what) : LatticeError("too large: " + what) {}
};

struct Edge {
  std::string label;
  int u = 0;
  int v = 0;
};

class Lattice;
struct SubLattice;
SubLattice make_interval_lattice(const Lattice& parent, std::int64_t lo, std::int64_t hi);

// Finite bounded poset with join/meet where they exist. Pairs with several
// minimal upper bounds (or several maximal lower bounds) get no join (meet);
// predicates that consult such a pair treat the missing join as "outside
// every subset of L" (its Dedekind-MacNeille completion value is a new
// element). All genuinely lattice-theoretic fixtures have total tables.
//
// Two storage modes: an explicit one (ids, order matrix, covers) and an
// implicit boolean one where the element index *is* the atom mask.
class Lattice {
 public:
  static Lattice from_covers(std::vector<std::string> elems,
                             const std::vector<std::pair<std::string, std::string>>& covers);
  // Flats of the graphical matroid: edge sets whose connected components are
  // induced subgraphs, ordered by inclusion. Atoms are single edges.
  static Lattice flats_of_graph(const std::vector<Edge>& edges,
                                std::size_t flat_cap = 100000);
  static Lattice boolean_lattice(int n);
  static Lattice boolean_lattice(const std::vector<std::string>& atom_ids);

  std::int64_t size() const;
  std::int64_t bottom() const { return 0; }
  std::int64_t top() const { return top_; }

  bool leq(std::int64_t a, std::int64_t b) const;
  bool lt(std::int64_t a, std::int64_t b) const { return a != b && leq(a, b); }
  bool comparable(std::int64_t a, std::int64_t b) const { return leq(a, b) || leq(b, a); }

  // -1 when the pair has several minimal upper (maximal lower) bounds.
  std::int64_t join(std::int64_t a, std::int64_t b) const;
  std::int64_t meet(std::int64_t a, std::int64_t b) const;
  // Join computed inside the interval [bottom, hi].
  std::int64_t join_within(std::int64_t a, std::int64_t b, std::int64_t hi) const;
  // Left fold of join_within over a set; -1 is absorbing.
  std::int64_t join_set(const std::vector<std::int64_t>& xs, std::int64_t hi) const;

  bool is_lattice() const;

  const std::string& id(std::int64_t e) const;
  std::int64_t index(const std::string& id) const;  // -1 if unknown

  const std::vector<std::int64_t>& atoms() const { return atoms_; }
  bool atomic() const { return atomic_; }
  // Bitset of atoms below e (atomic lattices only; atoms() order).
  std::uint32_t atom_bits(std::int64_t e) const;

  std::vector<std::int64_t> interval(std::int64_t lo, std::int64_t hi) const;
  std::vector<std::int64_t> all_elements() const;

  const std::vector<std::vector<std::int64_t>>& upper_covers() const;
  std::vector<std::int64_t> upper_covers_of(std::int64_t e) const;

  bool is_irreducible(std::int64_t f) const;
  // A pair (a, b) with a ^ b = 0, a v b = f exhibiting [0,f] as a product,
  // if one exists.
  std::optional<std::pair<std::int64_t, std::int64_t>> product_witness(std::int64_t f) const;
  std::vector<std::int64_t> minimal_building_set() const;

  // Exhaustive check of the lattice axioms; used by tests and `check`.
  bool verify_axioms(std::string* complaint = nullptr) const;

  bool boolean_mode() const { return boolean_; }

  Lattice() = default;

 private:
  friend struct SubLattice;
  friend SubLattice make_interval_lattice(const Lattice&, std::int64_t, std::int64_t);
  void finalize_explicit();
  std::int64_t unique_min_ub(std::int64_t a, std::int64_t b, std::int64_t hi,
                             bool* none_exists) const;
  std::int64_t unique_max_lb(std::int64_t a, std::int64_t b, bool* none_exists) const;

  bool boolean_ = false;

  // boolean mode
  int nbool_ = 0;
  std::vector<std::string> bool_atom_ids_;
  mutable std::unordered_map<std::string, std::int64_t> bool_id_cache_;

  // explicit mode
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::int64_t> index_;
  std::vector<std::vector<std::uint64_t>> up_;  // up_[a] bitset: a <= b
  std::vector<std::vector<std::int64_t>> covers_up_;
  std::vector<std::int32_t> join_tab_, meet_tab_;  // -2 unknown, -1 undefined
  mutable std::unordered_map<std::uint64_t, std::int64_t> join_memo_, meet_memo_;
  bool partial_ = false;

  std::int64_t top_ = 0;
  std::vector<std::int64_t> atoms_;
  bool atomic_ = false;
  std::vector<std::uint32_t> atom_bits_;
};

// The interval [lo, hi] materialized as its own lattice plus index maps.
struct SubLattice {
  Lattice lat;
  std::vector<std::int64_t> to_parent;
  std::unordered_map<std::int64_t, std::int64_t> from_parent;
};

}  // namespace uf

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "universefan/geometry.hpp"
#include "universefan/rational.hpp"

namespace uf {

struct RatExprError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotSimplicial : RatExprError {
  NotSimplicial() : RatExprError("cone generators are linearly dependent") {}
};
struct NotUnimodular : RatExprError {
  explicit NotUnimodular(Int d)
      : RatExprError("cone spans a sublattice of index " + d.str()), index(std::move(d)) {}
  Int index;
};
struct ZeroDenominator : RatExprError {
  explicit ZeroDenominator(const std::string& t)
      : RatExprError("substitution produced a zero denominator in " + t) {}
};
struct DoublePole : RatExprError {
  explicit DoublePole(const std::string& t)
      : RatExprError("repeated denominator factor in " + t) {}
};
struct DegeneratePoint : RatExprError {
  DegeneratePoint() : RatExprError("no non-degenerate sample point found in 100 attempts") {}
};

enum class VarKind { S, Ep, Em, A, E };

struct Var {
  VarKind kind = VarKind::S;
  std::string elem;

  std::string text() const;
  static std::optional<Var> parse(const std::string& text);
  auto operator<=>(const Var& o) const { return text() <=> o.text(); }
  bool operator==(const Var& o) const { return kind == o.kind && elem == o.elem; }
};

inline Var svar(std::string e) { return {VarKind::S, std::move(e)}; }
inline Var epvar(std::string e) { return {VarKind::Ep, std::move(e)}; }
inline Var emvar(std::string e) { return {VarKind::Em, std::move(e)}; }
inline Var avar(std::string e) { return {VarKind::A, std::move(e)}; }
inline Var evar(std::string e) { return {VarKind::E, std::move(e)}; }

// Exact-rational linear form; entries sorted by variable, no zero entries.
class LinForm {
 public:
  LinForm() = default;
  explicit LinForm(const Var& v) { coeffs_.emplace_back(v, Rat(1)); }
  static LinForm from_terms(std::vector<std::pair<Var, Rat>> terms);

  bool zero() const { return coeffs_.empty(); }
  const std::vector<std::pair<Var, Rat>>& coeffs() const { return coeffs_; }
  Rat coeff(const Var& v) const;

  LinForm& operator+=(const LinForm& o);
  LinForm& operator-=(const LinForm& o);
  LinForm& operator*=(const Rat& c);
  friend LinForm operator+(LinForm a, const LinForm& b) { return a += b; }
  friend LinForm operator-(LinForm a, const LinForm& b) { return a -= b; }
  friend LinForm operator*(const Rat& c, LinForm a) { return a *= c; }

  // Normal form has coefficient 1 on its smallest-named variable; returns
  // the (signed) scalar lambda with *this == lambda * normal.
  std::pair<LinForm, Rat> normalized() const;

  Rat evaluate(const std::map<Var, Rat>& point) const;
  std::string text() const;

  auto operator<=>(const LinForm&) const = default;

 private:
  std::vector<std::pair<Var, Rat>> coeffs_;
};

// Sum of terms  coef / (l_1 * ... * l_k)  with the l_i pairwise distinct
// normalized linear forms. Canonically sorted; no zero coefficients.
class RatExpr {
 public:
  RatExpr() = default;
  static RatExpr zero() { return {}; }
  static RatExpr constant(Rat c);
  // term c / prod(denoms); denominators normalized, scalars folded into c
  static RatExpr term(Rat c, std::vector<LinForm> denoms);
  static RatExpr from_terms(std::vector<std::pair<Rat, std::vector<LinForm>>> terms);

  struct Term {
    Rat coef;
    std::vector<LinForm> denom;  // sorted, all in normal form
    bool operator==(const Term&) const = default;
  };
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }
  std::size_t total_denominator_factors() const;

  RatExpr& operator+=(const RatExpr& o);
  friend RatExpr operator+(RatExpr a, const RatExpr& b) { return a += b; }
  friend RatExpr operator*(const RatExpr& a, const RatExpr& b);
  RatExpr scaled(const Rat& c) const;

  std::vector<Var> variables() const;
  Rat evaluate(const std::map<Var, Rat>& point) const;  // throws on zero denom
  std::string text() const;

  bool operator==(const RatExpr&) const = default;

 private:
  void canonicalize();
  std::vector<Term> terms_;
};

// Laplace transform of a unimodular simplicial cone: 1 / prod <g_i, y>.
RatExpr laplace_simplicial(const ConeZ& cone, const std::vector<Var>& dual_vars);
// As above but allowing any simplicial cone; the lattice index appears as a
// scalar factor (the general change-of-variables formula).
RatExpr laplace_simplicial_scaled(const ConeZ& cone, const std::vector<Var>& dual_vars);
RatExpr laplace_fan(const std::vector<ConeZ>& cones, const std::vector<Var>& dual_vars);

// Sum over terms whose denominator contains the pole (matched after
// positive-scalar normalization), with that factor removed. No restriction
// to the hyperplane is applied here.
RatExpr residue_at(const RatExpr& expr, const LinForm& pole);

RatExpr substitute(const RatExpr& expr, const std::map<Var, LinForm>& map);

struct EqualOptions {
  int trials = 8;
  std::uint64_t seed = 0;       // 0: use the process-wide seed
  std::size_t exact_cap = 64;   // exact comparison up to this many factors
};

// Reads UNIVERSEFAN_SEED; CLI --seed overrides via set_global_seed.
std::uint64_t global_seed();
void set_global_seed(std::uint64_t seed);

bool equal(const RatExpr& lhs, const RatExpr& rhs,
           const std::vector<LinForm>& on_hyperplanes = {},
           const EqualOptions& opts = {});

// Exact verdict only; nullopt when above the factor cap.
std::optional<bool> equal_exact(const RatExpr& lhs, const RatExpr& rhs,
                                const std::vector<LinForm>& on_hyperplanes = {},
                                std::size_t cap = 64);
// Sampling verdict only.
bool equal_sampled(const RatExpr& lhs, const RatExpr& rhs,
                   const std::vector<LinForm>& on_hyperplanes, int trials,
                   std::uint64_t seed);

}  // namespace uf

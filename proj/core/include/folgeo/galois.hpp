#ifndef FOLGEO_GALOIS_HPP
#define FOLGEO_GALOIS_HPP

#include "folgeo/autgalois.hpp"
#include "folgeo/geometry.hpp"

namespace folgeo {

/// A finite list of formulas sharing one context.
struct Theory {
  VarContext context;
  std::vector<TypedFormula> formulas;
};

/// T^f: intersection of the values; the full space for an empty theory.
PointSet theory_value(const Model& m, const Theory& t);

/// u in A^f, i.e. A is contained in Val_f(u).
bool in_set_theory(const Model& m, const PointSet& a, const TypedFormula& u);

/// v in T^ff, i.e. T^f is contained in Val_f(v).
bool in_closure(const Model& m, const Theory& t, const TypedFormula& v);

/// The family of simple algebraic sets at one context: values of all
/// formulas of that type. Closed under complement, union, intersection
/// and every quantifier.
struct DefinableFamily {
  PointSpace space;
  std::vector<PointSet> sets;  // deduplicated, canonical order
  bool converged = true;       // matches the Aut(f)-invariant family
  std::string warning;
};

inline constexpr int kDefaultRfTermDepth = 2;

/// Computes R_f(X) by elementary closure over an enlarged context
/// (`budget` extra variables per sort, terms up to `term_depth`), then
/// restriction to X. budget < 0 selects the default (max carrier size).
DefinableFamily rf_family(const Model& m, const VarContext& x, int budget = -1,
                          int term_depth = kDefaultRfTermDepth);

/// Closure-membership certificate for a materialized family.
std::vector<std::string> validate_family_closure(const DefinableFamily& fam);

struct ClosureResult {
  PointSet set;
  std::vector<std::vector<std::uint64_t>> orbits;  // orbits inside the closure
  bool cross_checked = false;
  std::string warning;
};

/// A^ff as the union of Aut(f)-orbits of A, cross-checked against the
/// least rf_family member containing A.
ClosureResult set_closure(const Model& m, const PointSet& a);

/// Greedy finite sub-theory with the same value.
Theory noetherian_reduce(const Model& m, const Theory& t);

/// Lattice operations on closed sets.
PointSet alv_meet(const PointSet& a, const PointSet& b);
PointSet alv_join(const Model& m, const PointSet& a, const PointSet& b);

/// Restrictions of the definable sets to A: the Boolean algebra of regular
/// functions on A, as subsets of A.
DefinableFamily regular_functions(const Model& m, const PointSet& a);

struct GeoEquivReport {
  bool disagreement = false;
  VarContext context;
  std::vector<std::string> witness_theory;  // concrete syntax
  std::string witness_candidate;
  bool in_first = false, in_second = false;
  std::uint64_t pairs_checked = 0;
};

/// Bounded sweep for a closure-operator disagreement between two models of
/// the same signature. Never claims full equivalence.
GeoEquivReport geometric_equiv_bounded(const Model& m1, const Model& m2,
                                       int context_bound = 2, int depth_bound = 3,
                                       int theory_bound = 2);

}  // namespace folgeo

#endif

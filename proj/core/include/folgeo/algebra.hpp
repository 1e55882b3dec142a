#ifndef FOLGEO_ALGEBRA_HPP
#define FOLGEO_ALGEBRA_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "folgeo/signature.hpp"

namespace folgeo {

/// Thrown on precondition violations: ill-sorted terms, context
/// mismatches, out-of-range elements.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A finite algebra of a signature. Carrier of sort i is {0..carriers[i]-1};
/// tables[k] stores op k row-major over its argument tuple, first argument
/// most significant.
struct FiniteAlgebra {
  Signature sig;
  std::vector<int> carriers;               // per sort index
  std::vector<std::vector<int>> tables;    // per op index

  int carrier_of_sort(std::size_t sort_idx) const { return carriers[sort_idx]; }
  int carrier_of(std::string_view sort_name) const;

  /// Table lookup; args aligned with the op's argument sorts.
  int apply_op(std::size_t op_idx, std::span<const int> args) const;
};

std::vector<std::string> validate_algebra(const FiniteAlgebra& alg);

/// A finite sorted variable context. Variables are kept sorted ascending
/// by name; this ordering is canonical everywhere (point indexing included).
class VarContext {
 public:
  VarContext() = default;
  explicit VarContext(std::vector<std::pair<std::string, std::string>> vars);

  std::size_t size() const { return vars_.size(); }
  bool empty() const { return vars_.empty(); }
  const std::string& name(std::size_t i) const { return vars_[i].first; }
  const std::string& sort(std::size_t i) const { return vars_[i].second; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  /// Copy with one more variable (name must be new).
  VarContext extended(const std::string& name, const std::string& sort) const;
  /// Union of two contexts; shared names must agree on sort.
  VarContext merged(const VarContext& other) const;

  const std::vector<std::pair<std::string, std::string>>& vars() const { return vars_; }
  bool operator==(const VarContext&) const = default;

 private:
  std::vector<std::pair<std::string, std::string>> vars_;
};

/// Validates variable sorts against a signature.
void check_context(const Signature& sig, const VarContext& ctx);

/// An element of the term algebra W(X): a variable or an operation applied
/// to terms.
struct Term {
  std::string head;
  std::vector<Term> args;
  bool is_var = true;

  static Term var(std::string name) { return Term{std::move(name), {}, true}; }
  static Term app(std::string op, std::vector<Term> ts) {
    return Term{std::move(op), std::move(ts), false};
  }

  bool operator==(const Term&) const = default;
};

/// Sort of a well-sorted term; throws DomainError otherwise.
std::string sort_of_term(const Signature& sig, const VarContext& ctx, const Term& t);

std::string term_to_string(const Term& t);

/// Value of the homomorphic extension of an assignment at a term.
/// The assignment is aligned with the context (one element per variable).
int eval_term(const FiniteAlgebra& alg, const VarContext& ctx,
              std::span<const int> assignment, const Term& t);

/// A homomorphism s: W(X) -> W(Y) given by the images of the X-variables.
struct Substitution {
  VarContext source;
  VarContext target;
  std::vector<Term> images;  // aligned with source.vars()

  bool operator==(const Substitution&) const = default;
};

Substitution identity_subst(const VarContext& ctx);
void check_substitution(const Signature& sig, const Substitution& s);
Term apply_subst_term(const Substitution& s, const Term& t);
/// (s2 . s1)(x) = s2(s1(x)); requires s1.target == s2.source.
Substitution compose_subst(const Substitution& s1, const Substitution& s2);

/// A map between two algebras of the same signature, one carrier function
/// per sort.
struct AlgebraMap {
  std::vector<std::vector<int>> per_sort;

  bool operator==(const AlgebraMap&) const = default;
  bool operator<(const AlgebraMap& o) const { return per_sort < o.per_sort; }
};

AlgebraMap identity_map(const FiniteAlgebra& alg);
bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const AlgebraMap& m);
/// Composition f.g (apply g first). Sorts must line up.
AlgebraMap compose_maps(const AlgebraMap& f, const AlgebraMap& g);
/// Inverse of a bijective map.
AlgebraMap inverse_map(const AlgebraMap& m);

/// All per-sort bijections a -> b commuting with every operation table,
/// in lexicographic order of the flattened image sequence. Empty when the
/// algebras are not isomorphic (carrier size mismatch included).
std::vector<AlgebraMap> find_isomorphisms(const FiniteAlgebra& a, const FiniteAlgebra& b);

/// A finite group of automorphisms of one algebra, stored as an explicit
/// element list: identity first, then lexicographic.
struct Group {
  FiniteAlgebra algebra;
  std::vector<AlgebraMap> elements;

  bool contains(const AlgebraMap& m) const;
};

Group aut_group(const FiniteAlgebra& alg);

/// Group-axiom check for an explicit element list (closure, identity,
/// inverses); returns violations.
std::vector<std::string> validate_group(const Group& g);

}  // namespace folgeo

#endif

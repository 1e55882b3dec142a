#ifndef FOLGEO_FORMULA_HPP
#define FOLGEO_FORMULA_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "folgeo/algebra.hpp"

namespace folgeo {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// A first-order formula over a signature. `Subst` is a lazy application
/// of a substitution to a formula over the substitution's source context;
/// `normalize_elementary` eliminates such nodes.
struct Formula {
  enum class Kind { Equal, Rel, Or, And, Not, Exists, Subst };

  Kind kind;
  Term lhs, rhs;                              // Equal
  std::string sym;                            // Rel name / Exists variable
  std::vector<Term> args;                     // Rel
  FormulaPtr a, b;                            // children
  std::shared_ptr<const Substitution> subst;  // Subst

  static FormulaPtr equal(Term l, Term r);
  static FormulaPtr rel(std::string name, std::vector<Term> args);
  static FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
  static FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
  static FormulaPtr f_not(FormulaPtr a);
  static FormulaPtr exists(std::string var, FormulaPtr body);
  static FormulaPtr subst_app(Substitution s, FormulaPtr body);
};

bool formulas_equal(const FormulaPtr& a, const FormulaPtr& b);

/// A formula together with its context (its type X).
struct TypedFormula {
  VarContext context;
  FormulaPtr body;
};

/// Throws DomainError if the formula is not well-typed over the context.
void check_typed(const Signature& sig, const TypedFormula& u);

/// True when the formula contains no Subst node.
bool is_elementary(const FormulaPtr& f);

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(std::string msg, std::size_t pos)
      : std::runtime_error(std::move(msg)), position(pos) {}
};

/// Parses the concrete syntax. Precedence ! > & > |; quantifiers "E x."
/// and "A x." scope to the end of the enclosing parenthesis; "A" desugars
/// to !E!. '#' starts a line comment. The result is checked well-typed.
TypedFormula parse_formula(const std::string& text, const VarContext& ctx,
                           const Signature& sig);

/// Concrete-syntax rendering; parse(to_string(u)) reproduces the AST for
/// Subst-free formulas. Subst nodes render in a bracket form that is not
/// part of the grammar.
std::string formula_to_string(const FormulaPtr& f);

/// Wraps u in a Subst node; the result is typed over s.target.
TypedFormula apply_subst_formula(const Signature& sig, const Substitution& s,
                                 const TypedFormula& u);

/// Eliminates every Subst node, rewriting atoms through the substitution
/// and renaming quantified variables under a substitution to fresh ones
/// (`_v0, _v1, ...`). The result context may gain fresh variables; it always
/// contains the input context.
TypedFormula normalize_elementary(const Signature& sig, const TypedFormula& u);

/// Free variables of an elementary formula; throws on Subst nodes.
std::set<std::string> syntactic_support(const TypedFormula& u);

}  // namespace folgeo

#endif

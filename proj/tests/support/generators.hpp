#ifndef FOLGEO_TESTS_GENERATORS_HPP
#define FOLGEO_TESTS_GENERATORS_HPP

// Seeded random terms, substitutions and formulas for property tests.

#include <random>

#include "folgeo/formula.hpp"

namespace folgeo::tests {

inline Term random_term(std::mt19937& rng, const Signature& sig,
                        const VarContext& ctx, const std::string& sort, int depth) {
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < ctx.size(); ++i)
    if (ctx.sort(i) == sort) vars.push_back(i);
  std::vector<std::size_t> ops;
  for (std::size_t k = 0; k < sig.ops.size(); ++k)
    if (sig.ops[k].result_sort == sort &&
        (depth > 0 || sig.ops[k].arg_sorts.empty()))
      ops.push_back(k);

  bool pick_var = !vars.empty() &&
                  (ops.empty() || std::uniform_int_distribution<int>(0, 1)(rng) == 0);
  if (pick_var) {
    std::size_t i = vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)];
    return Term::var(ctx.name(i));
  }
  if (ops.empty()) throw DomainError("no term of sort " + sort + " exists");
  std::size_t k = ops[std::uniform_int_distribution<std::size_t>(0, ops.size() - 1)(rng)];
  std::vector<Term> args;
  for (const auto& as : sig.ops[k].arg_sorts)
    args.push_back(random_term(rng, sig, ctx, as, depth - 1));
  return Term::app(sig.ops[k].name, std::move(args));
}

inline Substitution random_substitution(std::mt19937& rng, const Signature& sig,
                                        const VarContext& source,
                                        const VarContext& target, int term_depth = 2) {
  Substitution s{source, target, {}};
  for (std::size_t i = 0; i < source.size(); ++i)
    s.images.push_back(random_term(rng, sig, target, source.sort(i), term_depth));
  return s;
}

// Small pool of alternative contexts used as sources for Subst nodes.
inline std::vector<VarContext> subst_source_pool(const Signature& sig) {
  std::vector<VarContext> pool;
  for (const auto& sort : sig.sorts) {
    pool.push_back(VarContext({{"z", sort}}));
    pool.push_back(VarContext({{"z", sort}, {"w", sort}}));
  }
  return pool;
}

inline FormulaPtr random_formula(std::mt19937& rng, const Signature& sig,
                                 const VarContext& ctx, int depth,
                                 bool allow_subst) {
  int top = allow_subst && depth > 0 && !ctx.empty() ? 6 : (depth > 0 ? 5 : 1);
  int kind = std::uniform_int_distribution<int>(0, top)(rng);
  if (depth <= 0) kind = std::uniform_int_distribution<int>(0, 1)(rng);
  switch (kind) {
    case 0: {  // equality
      const std::string& sort = sig.sorts[std::uniform_int_distribution<std::size_t>(
          0, sig.sorts.size() - 1)(rng)];
      return Formula::equal(random_term(rng, sig, ctx, sort, 2),
                            random_term(rng, sig, ctx, sort, 2));
    }
    case 1: {  // relation atom
      if (sig.rels.empty())
        return random_formula(rng, sig, ctx, depth, allow_subst);
      std::size_t r = std::uniform_int_distribution<std::size_t>(0, sig.rels.size() - 1)(rng);
      std::vector<Term> args;
      for (const auto& as : sig.rels[r].arg_sorts)
        args.push_back(random_term(rng, sig, ctx, as, 2));
      return Formula::rel(sig.rels[r].name, std::move(args));
    }
    case 2:
      return Formula::f_or(random_formula(rng, sig, ctx, depth - 1, allow_subst),
                           random_formula(rng, sig, ctx, depth - 1, allow_subst));
    case 3:
      return Formula::f_and(random_formula(rng, sig, ctx, depth - 1, allow_subst),
                            random_formula(rng, sig, ctx, depth - 1, allow_subst));
    case 4:
      return Formula::f_not(random_formula(rng, sig, ctx, depth - 1, allow_subst));
    case 5: {
      if (ctx.empty()) return random_formula(rng, sig, ctx, depth, allow_subst);
      std::size_t vi = std::uniform_int_distribution<std::size_t>(0, ctx.size() - 1)(rng);
      return Formula::exists(ctx.name(vi),
                             random_formula(rng, sig, ctx, depth - 1, allow_subst));
    }
    default: {  // substitution application
      auto pool = subst_source_pool(sig);
      const VarContext& source = pool[std::uniform_int_distribution<std::size_t>(
          0, pool.size() - 1)(rng)];
      Substitution s = random_substitution(rng, sig, source, ctx);
      FormulaPtr body = random_formula(rng, sig, source, depth - 1, allow_subst);
      return Formula::subst_app(std::move(s), std::move(body));
    }
  }
}

inline TypedFormula random_typed_formula(std::mt19937& rng, const Signature& sig,
                                         const VarContext& ctx, int depth,
                                         bool allow_subst) {
  return TypedFormula{ctx, random_formula(rng, sig, ctx, depth, allow_subst)};
}

}  // namespace folgeo::tests

#endif

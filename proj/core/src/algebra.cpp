#include "folgeo/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace folgeo {

int FiniteAlgebra::carrier_of(std::string_view sort_name) const {
  auto idx = sig.sort_index(sort_name);
  if (!idx) throw DomainError("unknown sort: " + std::string(sort_name));
  return carriers[*idx];
}

int FiniteAlgebra::apply_op(std::size_t op_idx, std::span<const int> args) const {
  const OpDecl& op = sig.ops[op_idx];
  if (args.size() != op.arg_sorts.size())
    throw DomainError("arity mismatch for op " + op.name);
  std::size_t flat = 0;
  for (std::size_t i = 0; i < args.size(); ++i) {
    int radix = carrier_of(op.arg_sorts[i]);
    if (args[i] < 0 || args[i] >= radix)
      throw DomainError("element out of range for op " + op.name);
    flat = flat * static_cast<std::size_t>(radix) + static_cast<std::size_t>(args[i]);
  }
  return tables[op_idx][flat];
}

std::vector<std::string> validate_algebra(const FiniteAlgebra& alg) {
  std::vector<std::string> report = validate_signature(alg.sig);
  if (alg.carriers.size() != alg.sig.sorts.size())
    report.push_back("carrier list length does not match sort count");
  for (std::size_t i = 0; i < alg.carriers.size() && i < alg.sig.sorts.size(); ++i)
    if (alg.carriers[i] < 1)
      report.push_back("empty carrier for sort " + alg.sig.sorts[i]);
  if (alg.tables.size() != alg.sig.ops.size()) {
    report.push_back("table list length does not match op count");
    return report;
  }
  for (std::size_t k = 0; k < alg.sig.ops.size(); ++k) {
    const OpDecl& op = alg.sig.ops[k];
    std::size_t expect = 1;
    bool sorts_ok = true;
    for (const auto& s : op.arg_sorts) {
      auto idx = alg.sig.sort_index(s);
      if (!idx || *idx >= alg.carriers.size()) { sorts_ok = false; break; }
      expect *= static_cast<std::size_t>(alg.carriers[*idx]);
    }
    if (!sorts_ok) continue;
    if (alg.tables[k].size() != expect) {
      report.push_back("table not total for op " + op.name);
      continue;
    }
    auto res_idx = alg.sig.sort_index(op.result_sort);
    if (!res_idx || *res_idx >= alg.carriers.size()) continue;
    int res_size = alg.carriers[*res_idx];
    for (int v : alg.tables[k])
      if (v < 0 || v >= res_size) {
        report.push_back("element out of range in table for op " + op.name);
        break;
      }
  }
  return report;
}

VarContext::VarContext(std::vector<std::pair<std::string, std::string>> vars)
    : vars_(std::move(vars)) {
  std::sort(vars_.begin(), vars_.end());
  for (std::size_t i = 1; i < vars_.size(); ++i)
    if (vars_[i].first == vars_[i - 1].first)
      throw DomainError("duplicate variable name: " + vars_[i].first);
}

std::optional<std::size_t> VarContext::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].first == name) return i;
  return std::nullopt;
}

VarContext VarContext::extended(const std::string& name, const std::string& sort) const {
  auto vs = vars_;
  vs.emplace_back(name, sort);
  return VarContext(std::move(vs));
}

VarContext VarContext::merged(const VarContext& other) const {
  auto vs = vars_;
  for (const auto& [n, s] : other.vars_) {
    auto idx = index_of(n);
    if (idx) {
      if (vars_[*idx].second != s)
        throw DomainError("context merge: variable " + n + " has conflicting sorts");
    } else {
      vs.emplace_back(n, s);
    }
  }
  return VarContext(std::move(vs));
}

void check_context(const Signature& sig, const VarContext& ctx) {
  for (const auto& [n, s] : ctx.vars())
    if (!sig.sort_index(s))
      throw DomainError("variable " + n + " has unknown sort " + s);
}

std::string sort_of_term(const Signature& sig, const VarContext& ctx, const Term& t) {
  if (t.is_var) {
    auto idx = ctx.index_of(t.head);
    if (!idx) throw DomainError("unbound variable: " + t.head);
    return ctx.sort(*idx);
  }
  auto op_idx = sig.op_index(t.head);
  if (!op_idx) throw DomainError("unknown op: " + t.head);
  const OpDecl& op = sig.ops[*op_idx];
  if (op.arg_sorts.size() != t.args.size())
    throw DomainError("arity mismatch for op " + t.head);
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    std::string got = sort_of_term(sig, ctx, t.args[i]);
    if (got != op.arg_sorts[i])
      throw DomainError("sort mismatch in argument " + std::to_string(i) +
                        " of op " + t.head + ": expected " + op.arg_sorts[i] +
                        ", got " + got);
  }
  return op.result_sort;
}

std::string term_to_string(const Term& t) {
  if (t.is_var) return t.head;
  std::string out = t.head + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ",";
    out += term_to_string(t.args[i]);
  }
  return out + ")";
}

int eval_term(const FiniteAlgebra& alg, const VarContext& ctx,
              std::span<const int> assignment, const Term& t) {
  if (t.is_var) {
    auto idx = ctx.index_of(t.head);
    if (!idx) throw DomainError("unbound variable: " + t.head);
    return assignment[*idx];
  }
  auto op_idx = alg.sig.op_index(t.head);
  if (!op_idx) throw DomainError("unknown op: " + t.head);
  std::vector<int> vals;
  vals.reserve(t.args.size());
  for (const Term& a : t.args)
    vals.push_back(eval_term(alg, ctx, assignment, a));
  return alg.apply_op(*op_idx, vals);
}

Substitution identity_subst(const VarContext& ctx) {
  Substitution s{ctx, ctx, {}};
  s.images.reserve(ctx.size());
  for (std::size_t i = 0; i < ctx.size(); ++i)
    s.images.push_back(Term::var(ctx.name(i)));
  return s;
}

void check_substitution(const Signature& sig, const Substitution& s) {
  if (s.images.size() != s.source.size())
    throw DomainError("substitution not total on its source context");
  for (std::size_t i = 0; i < s.source.size(); ++i) {
    std::string got = sort_of_term(sig, s.target, s.images[i]);
    if (got != s.source.sort(i))
      throw DomainError("substitution image of " + s.source.name(i) +
                        " has sort " + got + ", expected " + s.source.sort(i));
  }
}

Term apply_subst_term(const Substitution& s, const Term& t) {
  if (t.is_var) {
    auto idx = s.source.index_of(t.head);
    if (!idx) throw DomainError("variable outside substitution source: " + t.head);
    return s.images[*idx];
  }
  std::vector<Term> mapped;
  mapped.reserve(t.args.size());
  for (const Term& a : t.args)
    mapped.push_back(apply_subst_term(s, a));
  return Term::app(t.head, std::move(mapped));
}

Substitution compose_subst(const Substitution& s1, const Substitution& s2) {
  if (!(s1.target == s2.source))
    throw DomainError("compose_subst: context mismatch");
  Substitution out{s1.source, s2.target, {}};
  out.images.reserve(s1.images.size());
  for (const Term& t : s1.images)
    out.images.push_back(apply_subst_term(s2, t));
  return out;
}

AlgebraMap identity_map(const FiniteAlgebra& alg) {
  AlgebraMap m;
  m.per_sort.resize(alg.carriers.size());
  for (std::size_t i = 0; i < alg.carriers.size(); ++i) {
    m.per_sort[i].resize(alg.carriers[i]);
    std::iota(m.per_sort[i].begin(), m.per_sort[i].end(), 0);
  }
  return m;
}

namespace {

// Decodes a flat row-major table index into an argument tuple.
void decode_args(std::size_t flat, const std::vector<int>& radices, std::vector<int>& out) {
  for (std::size_t i = radices.size(); i-- > 0;) {
    out[i] = static_cast<int>(flat % static_cast<std::size_t>(radices[i]));
    flat /= static_cast<std::size_t>(radices[i]);
  }
}

std::vector<std::size_t> op_arg_sort_indices(const Signature& sig, const OpDecl& op) {
  std::vector<std::size_t> out;
  out.reserve(op.arg_sorts.size());
  for (const auto& s : op.arg_sorts) out.push_back(*sig.sort_index(s));
  return out;
}

}  // namespace

bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const AlgebraMap& m) {
  if (!(a.sig == b.sig)) return false;
  for (std::size_t k = 0; k < a.sig.ops.size(); ++k) {
    const OpDecl& op = a.sig.ops[k];
    auto arg_sort_idx = op_arg_sort_indices(a.sig, op);
    std::size_t res_idx = *a.sig.sort_index(op.result_sort);
    std::vector<int> radices;
    for (std::size_t si : arg_sort_idx) radices.push_back(a.carriers[si]);
    std::vector<int> args(op.arg_sorts.size());
    std::vector<int> mapped(op.arg_sorts.size());
    for (std::size_t flat = 0; flat < a.tables[k].size(); ++flat) {
      decode_args(flat, radices, args);
      for (std::size_t i = 0; i < args.size(); ++i)
        mapped[i] = m.per_sort[arg_sort_idx[i]][args[i]];
      if (m.per_sort[res_idx][a.tables[k][flat]] != b.apply_op(k, mapped))
        return false;
    }
  }
  return true;
}

AlgebraMap compose_maps(const AlgebraMap& f, const AlgebraMap& g) {
  AlgebraMap out;
  out.per_sort.resize(f.per_sort.size());
  for (std::size_t s = 0; s < f.per_sort.size(); ++s) {
    out.per_sort[s].resize(g.per_sort[s].size());
    for (std::size_t x = 0; x < g.per_sort[s].size(); ++x)
      out.per_sort[s][x] = f.per_sort[s][g.per_sort[s][x]];
  }
  return out;
}

AlgebraMap inverse_map(const AlgebraMap& m) {
  AlgebraMap out;
  out.per_sort.resize(m.per_sort.size());
  for (std::size_t s = 0; s < m.per_sort.size(); ++s) {
    out.per_sort[s].resize(m.per_sort[s].size());
    for (std::size_t x = 0; x < m.per_sort[s].size(); ++x)
      out.per_sort[s][m.per_sort[s][x]] = static_cast<int>(x);
  }
  return out;
}

namespace {

// Backtracking over carrier images, sorts in order, elements in order.
// Prunes on operation tuples whose arguments are all assigned. Candidates
// explored in ascending order, so results come out lexicographic.
struct IsoSearch {
  const FiniteAlgebra& a;
  const FiniteAlgebra& b;
  std::vector<std::vector<int>> image;   // -1 = unassigned
  std::vector<std::vector<bool>> used;   // per sort, target elements taken
  std::vector<AlgebraMap> found;

  bool consistent() const {
    for (std::size_t k = 0; k < a.sig.ops.size(); ++k) {
      const OpDecl& op = a.sig.ops[k];
      auto arg_sort_idx = op_arg_sort_indices(a.sig, op);
      std::size_t res_idx = *a.sig.sort_index(op.result_sort);
      std::vector<int> radices;
      for (std::size_t si : arg_sort_idx) radices.push_back(a.carriers[si]);
      std::vector<int> args(op.arg_sorts.size());
      std::vector<int> mapped(op.arg_sorts.size());
      for (std::size_t flat = 0; flat < a.tables[k].size(); ++flat) {
        decode_args(flat, radices, args);
        bool all_assigned = true;
        for (std::size_t i = 0; i < args.size() && all_assigned; ++i) {
          mapped[i] = image[arg_sort_idx[i]][args[i]];
          if (mapped[i] < 0) all_assigned = false;
        }
        if (!all_assigned) continue;
        int lhs = image[res_idx][a.tables[k][flat]];
        if (lhs >= 0 && lhs != b.apply_op(k, mapped)) return false;
      }
    }
    return true;
  }

  void run(std::size_t sort, std::size_t elem) {
    if (sort == image.size()) {
      AlgebraMap m{image};
      if (is_homomorphism(a, b, m)) found.push_back(std::move(m));
      return;
    }
    if (elem == image[sort].size()) {
      run(sort + 1, 0);
      return;
    }
    for (int cand = 0; cand < static_cast<int>(used[sort].size()); ++cand) {
      if (used[sort][cand]) continue;
      image[sort][elem] = cand;
      used[sort][cand] = true;
      if (consistent()) run(sort, elem + 1);
      used[sort][cand] = false;
      image[sort][elem] = -1;
    }
  }
};

}  // namespace

std::vector<AlgebraMap> find_isomorphisms(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (!(a.sig == b.sig)) return {};
  if (a.carriers != b.carriers) return {};
  IsoSearch search{a, b, {}, {}, {}};
  search.image.resize(a.carriers.size());
  search.used.resize(a.carriers.size());
  for (std::size_t s = 0; s < a.carriers.size(); ++s) {
    search.image[s].assign(a.carriers[s], -1);
    search.used[s].assign(b.carriers[s], false);
  }
  search.run(0, 0);
  return std::move(search.found);
}

bool Group::contains(const AlgebraMap& m) const {
  return std::find(elements.begin(), elements.end(), m) != elements.end();
}

Group aut_group(const FiniteAlgebra& alg) {
  Group g{alg, find_isomorphisms(alg, alg)};
  AlgebraMap id = identity_map(alg);
  auto it = std::find(g.elements.begin(), g.elements.end(), id);
  if (it != g.elements.begin() && it != g.elements.end())
    std::rotate(g.elements.begin(), it, it + 1);
  return g;
}

std::vector<std::string> validate_group(const Group& g) {
  std::vector<std::string> report;
  if (g.elements.empty() || !(g.elements.front() == identity_map(g.algebra)))
    report.push_back("identity missing or not first");
  for (const AlgebraMap& m : g.elements) {
    if (!g.contains(inverse_map(m)))
      report.push_back("inverse missing");
    for (const AlgebraMap& n : g.elements)
      if (!g.contains(compose_maps(m, n)))
        report.push_back("not closed under composition");
  }
  return report;
}

}  // namespace folgeo

#include "folgeo/geometry.hpp"

namespace folgeo {

std::vector<std::string> validate_model(const Model& m) {
  std::vector<std::string> report = validate_algebra(m.algebra);
  const Signature& sig = m.algebra.sig;
  if (m.interp.size() != sig.rels.size()) {
    report.push_back("interpretation count does not match relation count");
    return report;
  }
  for (std::size_t r = 0; r < sig.rels.size(); ++r) {
    const RelDecl& rel = sig.rels[r];
    for (const auto& tuple : m.interp[r]) {
      if (tuple.size() != rel.arg_sorts.size()) {
        report.push_back("tuple arity mismatch in relation " + rel.name);
        continue;
      }
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        int n = m.algebra.carrier_of(rel.arg_sorts[i]);
        if (tuple[i] < 0 || tuple[i] >= n) {
          report.push_back("tuple element out of range in relation " + rel.name);
          break;
        }
      }
    }
  }
  return report;
}

PointSpace::PointSpace(const FiniteAlgebra& alg, VarContext ctx, std::uint64_t cap)
    : ctx_(std::move(ctx)) {
  radix_.reserve(ctx_.size());
  for (std::size_t i = 0; i < ctx_.size(); ++i) {
    int n = alg.carrier_of(ctx_.sort(i));
    radix_.push_back(n);
    if (size_ > cap / static_cast<std::uint64_t>(n))
      throw DomainError("point space exceeds the size cap");
    size_ *= static_cast<std::uint64_t>(n);
  }
}

std::uint64_t PointSpace::index_of(std::span<const int> point) const {
  if (point.size() != radix_.size())
    throw DomainError("point arity does not match context");
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < radix_.size(); ++i) {
    if (point[i] < 0 || point[i] >= radix_[i])
      throw DomainError("point element out of range");
    idx = idx * static_cast<std::uint64_t>(radix_[i]) +
          static_cast<std::uint64_t>(point[i]);
  }
  return idx;
}

std::vector<int> PointSpace::point_at(std::uint64_t index) const {
  std::vector<int> out(radix_.size());
  for (std::size_t i = radix_.size(); i-- > 0;) {
    out[i] = static_cast<int>(index % static_cast<std::uint64_t>(radix_[i]));
    index /= static_cast<std::uint64_t>(radix_[i]);
  }
  return out;
}

PointSet set_union(const PointSet& a, const PointSet& b) {
  if (!(a.space == b.space)) throw DomainError("set_union: space mismatch");
  PointSet out = a;
  out.bits |= b.bits;
  return out;
}

PointSet set_intersect(const PointSet& a, const PointSet& b) {
  if (!(a.space == b.space)) throw DomainError("set_intersect: space mismatch");
  PointSet out = a;
  out.bits &= b.bits;
  return out;
}

PointSet set_complement(const PointSet& a) {
  PointSet out = a;
  out.bits.flip();
  return out;
}

PointSet exists_quant(const PointSet& a, std::string_view var) {
  auto vi = a.space.context().index_of(var);
  if (!vi) throw DomainError("exists_quant: unknown variable " + std::string(var));
  PointSet out = PointSet::empty(a.space);
  std::uint64_t n = a.space.size();
  // stride between consecutive values of the quantified coordinate
  std::uint64_t stride = 1;
  for (std::size_t i = a.space.context().size(); i-- > *vi + 1;)
    stride *= static_cast<std::uint64_t>(a.space.radix(i));
  int radix = a.space.radix(*vi);
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    if (!a.bits.test(idx)) continue;
    // base index with the quantified coordinate zeroed
    std::uint64_t digit = (idx / stride) % static_cast<std::uint64_t>(radix);
    std::uint64_t base = idx - digit * stride;
    for (int v = 0; v < radix; ++v)
      out.bits.set(base + static_cast<std::uint64_t>(v) * stride);
  }
  return out;
}

PointSet subst_pushforward(const FiniteAlgebra& alg, const Substitution& s,
                           const PointSet& a) {
  if (!(a.space.context() == s.source))
    throw DomainError("subst_pushforward: context mismatch");
  PointSpace target_space(alg, s.target);
  PointSet out = PointSet::empty(target_space);
  std::vector<int> pulled(s.source.size());
  for (std::uint64_t idx = 0; idx < target_space.size(); ++idx) {
    std::vector<int> nu = target_space.point_at(idx);
    for (std::size_t i = 0; i < s.images.size(); ++i)
      pulled[i] = eval_term(alg, s.target, nu, s.images[i]);
    if (a.bits.test(a.space.index_of(pulled))) out.bits.set(idx);
  }
  return out;
}

PointSet subst_image(const FiniteAlgebra& alg, const Substitution& s,
                     const PointSet& b) {
  if (!(b.space.context() == s.target))
    throw DomainError("subst_image: context mismatch");
  PointSpace source_space(alg, s.source);
  PointSet out = PointSet::empty(source_space);
  std::vector<int> pulled(s.source.size());
  for (std::uint64_t idx = 0; idx < b.space.size(); ++idx) {
    if (!b.bits.test(idx)) continue;
    std::vector<int> nu = b.space.point_at(idx);
    for (std::size_t i = 0; i < s.images.size(); ++i)
      pulled[i] = eval_term(alg, s.target, nu, s.images[i]);
    out.bits.set(source_space.index_of(pulled));
  }
  return out;
}

PointSet eval_formula(const Model& m, const TypedFormula& u) {
  const FormulaPtr& f = u.body;
  switch (f->kind) {
    case Formula::Kind::Equal: {
      PointSpace sp(m.algebra, u.context);
      PointSet out = PointSet::empty(sp);
      for (std::uint64_t idx = 0; idx < sp.size(); ++idx) {
        std::vector<int> p = sp.point_at(idx);
        if (eval_term(m.algebra, u.context, p, f->lhs) ==
            eval_term(m.algebra, u.context, p, f->rhs))
          out.bits.set(idx);
      }
      return out;
    }
    case Formula::Kind::Rel: {
      auto ri = m.algebra.sig.rel_index(f->sym);
      if (!ri) throw DomainError("unknown relation: " + f->sym);
      const auto& tuples = m.interp[*ri];
      PointSpace sp(m.algebra, u.context);
      PointSet out = PointSet::empty(sp);
      std::vector<int> tuple(f->args.size());
      for (std::uint64_t idx = 0; idx < sp.size(); ++idx) {
        std::vector<int> p = sp.point_at(idx);
        for (std::size_t i = 0; i < f->args.size(); ++i)
          tuple[i] = eval_term(m.algebra, u.context, p, f->args[i]);
        if (tuples.count(tuple)) out.bits.set(idx);
      }
      return out;
    }
    case Formula::Kind::Or:
      return set_union(eval_formula(m, {u.context, f->a}),
                       eval_formula(m, {u.context, f->b}));
    case Formula::Kind::And:
      return set_intersect(eval_formula(m, {u.context, f->a}),
                           eval_formula(m, {u.context, f->b}));
    case Formula::Kind::Not:
      return set_complement(eval_formula(m, {u.context, f->a}));
    case Formula::Kind::Exists:
      return exists_quant(eval_formula(m, {u.context, f->a}), f->sym);
    case Formula::Kind::Subst: {
      PointSet inner = eval_formula(m, {f->subst->source, f->a});
      return subst_pushforward(m.algebra, *f->subst, inner);
    }
  }
  throw DomainError("eval_formula: bad formula kind");
}

bool in_log_kernel(const Model& m, std::span<const int> point, const TypedFormula& u) {
  PointSet val = eval_formula(m, u);
  return val.bits.test(val.space.index_of(point));
}

std::set<std::string> semantic_support(const Model& m, const TypedFormula& u) {
  PointSet val = eval_formula(m, u);
  std::set<std::string> out;
  for (std::size_t i = 0; i < u.context.size(); ++i)
    if (!(exists_quant(val, u.context.name(i)) == val))
      out.insert(u.context.name(i));
  return out;
}

}  // namespace folgeo

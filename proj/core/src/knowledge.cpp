#include "folgeo/knowledge.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

namespace folgeo {

std::optional<std::size_t> Multimodel::instance_index(std::string_view name) const {
  for (std::size_t i = 0; i < instances.size(); ++i)
    if (instances[i].first == name) return i;
  return std::nullopt;
}

std::vector<std::string> validate_multimodel(const Multimodel& mm) {
  std::vector<std::string> report = validate_algebra(mm.algebra);
  std::set<std::string> names;
  for (std::size_t i = 0; i < mm.instances.size(); ++i) {
    if (!names.insert(mm.instances[i].first).second)
      report.push_back("duplicate instance name: " + mm.instances[i].first);
    Model m{mm.algebra, mm.instances[i].second};
    auto sub = validate_model(m);
    for (auto& msg : sub)
      report.push_back("instance " + mm.instances[i].first + ": " + msg);
  }
  return report;
}

Model instance_model(const Multimodel& mm, std::size_t i) {
  return Model{mm.algebra, mm.instances[i].second};
}

KnowledgeObject ct(const Model& m, const Theory& t) {
  return KnowledgeObject{t.context, t, theory_value(m, t)};
}

bool admissible_sets(const FiniteAlgebra& alg, const Substitution& s,
                     const PointSet& a, const PointSet& b) {
  if (!(a.space.context() == s.target) || !(b.space.context() == s.source))
    throw DomainError("admissible_sets: context mismatch");
  // pointwise: every point of A pulls back into B
  bool pointwise = true;
  std::vector<int> pulled(s.source.size());
  for (std::uint64_t idx = 0; idx < a.space.size(); ++idx) {
    if (!a.bits.test(idx)) continue;
    std::vector<int> nu = a.space.point_at(idx);
    for (std::size_t i = 0; i < s.images.size(); ++i)
      pulled[i] = eval_term(alg, s.target, nu, s.images[i]);
    if (!b.bits.test(b.space.index_of(pulled))) { pointwise = false; break; }
  }
  bool via_pushforward = a.bits.is_subset_of(subst_pushforward(alg, s, b).bits);
  if (pointwise != via_pushforward)
    throw std::logic_error("admissible_sets: criteria disagree");
  return pointwise;
}

bool admissible_theories(const Model& m, const Substitution& s, const Theory& t1,
                         const Theory& t2) {
  PointSet a = theory_value(m, t1);
  for (const TypedFormula& u : t2.formulas) {
    TypedFormula su = apply_subst_formula(m.algebra.sig, s, u);
    if (!in_set_theory(m, a, su)) return false;
  }
  return true;
}

namespace {

// The conjugacy search compares algebra structure only; relation symbol
// sets of the two models may differ.
FiniteAlgebra strip_relations(const FiniteAlgebra& alg) {
  FiniteAlgebra out = alg;
  out.sig.rels.clear();
  return out;
}

}  // namespace

std::optional<AlgebraMap> models_automorphic_equivalent(const Model& m1,
                                                        const Model& m2) {
  Group h1 = aut_model(m1);
  Group h2 = aut_model(m2);
  FiniteAlgebra a1 = strip_relations(m1.algebra);
  FiniteAlgebra a2 = strip_relations(m2.algebra);
  return conjugating_iso(a1, a2, Group{a1, h1.elements}, Group{a2, h2.elements});
}

std::optional<EquivalenceWitness> kb_equivalent(const KnowledgeBase& kb1,
                                                const KnowledgeBase& kb2) {
  if (kb1.mm.instances.size() != kb2.mm.instances.size()) return std::nullopt;
  std::size_t n = kb1.mm.instances.size();

  // lexicographic instance order on both sides
  std::vector<std::size_t> order1(n), order2(n);
  std::iota(order1.begin(), order1.end(), 0);
  std::iota(order2.begin(), order2.end(), 0);
  auto by_name = [](const Multimodel& mm) {
    return [&mm](std::size_t a, std::size_t b) {
      return mm.instances[a].first < mm.instances[b].first;
    };
  };
  std::sort(order1.begin(), order1.end(), by_name(kb1.mm));
  std::sort(order2.begin(), order2.end(), by_name(kb2.mm));

  // pairwise compatibility
  std::vector<std::vector<std::optional<AlgebraMap>>> edge(n,
      std::vector<std::optional<AlgebraMap>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      edge[i][j] = models_automorphic_equivalent(
          instance_model(kb1.mm, order1[i]), instance_model(kb2.mm, order2[j]));

  std::vector<std::size_t> match(n, n);  // first-side position -> second-side position
  std::vector<bool> taken(n, false);
  std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (taken[j] || !edge[i][j]) continue;
      taken[j] = true;
      match[i] = j;
      if (assign(i + 1)) return true;
      taken[j] = false;
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;

  EquivalenceWitness w;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& from = kb1.mm.instances[order1[i]].first;
    const std::string& to = kb2.mm.instances[order2[match[i]]].first;
    w.alpha.emplace_back(from, to);
    w.delta.emplace(from, *edge[i][match[i]]);
  }
  return w;
}

GammaCheckReport induced_gamma_check(const AlgebraMap& delta, const Model& m1,
                                     const Model& m2, int context_bound,
                                     int sample_count) {
  GammaCheckReport report;
  const Signature& sig = m1.algebra.sig;
  std::vector<VarContext> contexts;
  if (context_bound >= 1)
    for (const auto& s : sig.sorts) contexts.push_back(VarContext({{"x", s}}));
  if (context_bound >= 2)
    for (std::size_t i = 0; i < sig.sorts.size(); ++i)
      for (std::size_t j = i; j < sig.sorts.size(); ++j)
        contexts.push_back(VarContext({{"x", sig.sorts[i]}, {"y", sig.sorts[j]}}));

  std::mt19937 rng(20240901);
  for (const VarContext& ctx : contexts) {
    DefinableFamily rf1 = rf_family(m1, ctx);
    DefinableFamily rf2 = rf_family(m2, ctx);
    if (rf1.sets.size() != rf2.sets.size()) {
      report.pass = false;
      report.detail = "family sizes differ at a context: " +
                      std::to_string(rf1.sets.size()) + " vs " +
                      std::to_string(rf2.sets.size());
      return report;
    }
    PointSpace sp1 = rf1.space, sp2 = rf2.space;
    std::vector<std::size_t> sort_idx;
    for (std::size_t i = 0; i < ctx.size(); ++i)
      sort_idx.push_back(*sig.sort_index(ctx.sort(i)));
    auto image_of = [&](const PointSet& a) {
      PointSet out = PointSet::empty(sp2);
      for (std::uint64_t idx = 0; idx < sp1.size(); ++idx) {
        if (!a.bits.test(idx)) continue;
        std::vector<int> p = sp1.point_at(idx);
        for (std::size_t i = 0; i < p.size(); ++i)
          p[i] = delta.per_sort[sort_idx[i]][p[i]];
        out.bits.set(sp2.index_of(p));
      }
      return out;
    };
    std::set<Bitset> rf2_members, images;
    for (const PointSet& s : rf2.sets) rf2_members.insert(s.bits);
    for (const PointSet& s : rf1.sets) {
      PointSet img = image_of(s);
      if (!rf2_members.count(img.bits)) {
        report.pass = false;
        report.detail = "image of a definable set is not definable in the second model";
        return report;
      }
      images.insert(img.bits);
    }
    if (images.size() != rf1.sets.size()) {
      report.pass = false;
      report.detail = "induced map is not injective on the definable family";
      return report;
    }
    // operation commutation on samples
    std::uniform_int_distribution<std::size_t> pick(0, rf1.sets.size() - 1);
    for (int k = 0; k < sample_count; ++k) {
      const PointSet& a = rf1.sets[pick(rng)];
      const PointSet& b = rf1.sets[pick(rng)];
      if (!(image_of(set_union(a, b)) == set_union(image_of(a), image_of(b))) ||
          !(image_of(set_complement(a)) == set_complement(image_of(a)))) {
        report.pass = false;
        report.detail = "induced map does not commute with Boolean operations";
        return report;
      }
      for (std::size_t v = 0; v < ctx.size(); ++v)
        if (!(image_of(exists_quant(a, ctx.name(v))) ==
              exists_quant(image_of(a), ctx.name(v)))) {
          report.pass = false;
          report.detail = "induced map does not commute with quantifiers";
          return report;
        }
    }
  }
  return report;
}

}  // namespace folgeo

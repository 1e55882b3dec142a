#include "folgeo/autgalois.hpp"

#include <algorithm>
#include <set>

namespace folgeo {

Group aut_model(const Model& m) {
  Group g = aut_group(m.algebra);
  const Signature& sig = m.algebra.sig;
  std::vector<AlgebraMap> kept;
  for (const AlgebraMap& d : g.elements) {
    bool ok = true;
    for (std::size_t r = 0; r < sig.rels.size() && ok; ++r) {
      std::vector<std::size_t> arg_sort_idx;
      for (const auto& s : sig.rels[r].arg_sorts)
        arg_sort_idx.push_back(*sig.sort_index(s));
      for (const auto& tuple : m.interp[r]) {
        std::vector<int> mapped(tuple.size());
        for (std::size_t i = 0; i < tuple.size(); ++i)
          mapped[i] = d.per_sort[arg_sort_idx[i]][tuple[i]];
        if (!m.interp[r].count(mapped)) { ok = false; break; }
      }
    }
    if (ok) kept.push_back(d);
  }
  return Group{m.algebra, std::move(kept)};
}

namespace {

std::vector<std::size_t> context_sort_indices(const Signature& sig, const VarContext& ctx) {
  std::vector<std::size_t> out;
  out.reserve(ctx.size());
  for (std::size_t i = 0; i < ctx.size(); ++i) out.push_back(*sig.sort_index(ctx.sort(i)));
  return out;
}

// Point image under the coordinate-wise action of an algebra map.
std::uint64_t map_point(const PointSpace& sp, const std::vector<std::size_t>& sort_idx,
                        const AlgebraMap& d, std::uint64_t idx) {
  std::vector<int> p = sp.point_at(idx);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = d.per_sort[sort_idx[i]][p[i]];
  return sp.index_of(p);
}

}  // namespace

PointSet act_on_pointset(const FiniteAlgebra& alg, const AlgebraMap& delta,
                         const PointSet& a) {
  auto sort_idx = context_sort_indices(alg.sig, a.space.context());
  PointSet out = PointSet::empty(a.space);
  for (std::uint64_t idx = 0; idx < a.space.size(); ++idx)
    if (a.bits.test(map_point(a.space, sort_idx, delta, idx))) out.bits.set(idx);
  return out;
}

bool is_correct_substitution(const PointSubstitution& tau) {
  const PointSpace& sp = tau.space;
  std::uint64_t n = sp.size();
  for (std::uint64_t i = 0; i < n; ++i) {
    std::vector<int> mu = sp.point_at(i);
    std::vector<int> tmu = sp.point_at(tau.map[i]);
    for (std::uint64_t j = 0; j < n; ++j) {
      std::vector<int> nu = sp.point_at(j);
      std::vector<int> tnu = sp.point_at(tau.map[j]);
      for (std::size_t x = 0; x < mu.size(); ++x)
        if ((mu[x] == nu[x]) != (tmu[x] == tnu[x])) return false;
    }
  }
  return true;
}

std::vector<std::vector<std::uint64_t>> point_orbits(const Group& h,
                                                     const PointSpace& space) {
  auto sort_idx = context_sort_indices(h.algebra.sig, space.context());
  std::uint64_t n = space.size();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::uint64_t>> orbits;
  for (std::uint64_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::uint64_t> orbit, frontier{start};
    seen[start] = true;
    while (!frontier.empty()) {
      std::uint64_t p = frontier.back();
      frontier.pop_back();
      orbit.push_back(p);
      for (const AlgebraMap& d : h.elements) {
        std::uint64_t q = map_point(space, sort_idx, d, p);
        if (!seen[q]) {
          seen[q] = true;
          frontier.push_back(q);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

std::vector<PointSet> invariant_sets(const Group& h, const PointSpace& space,
                                     std::size_t max_sets) {
  auto orbits = point_orbits(h, space);
  if (orbits.size() >= 8 * sizeof(std::size_t) ||
      (std::size_t{1} << orbits.size()) > max_sets)
    throw DomainError("invariant_sets: too many orbits to enumerate unions");
  std::vector<PointSet> out;
  out.reserve(std::size_t{1} << orbits.size());
  for (std::size_t mask = 0; mask < (std::size_t{1} << orbits.size()); ++mask) {
    PointSet s = PointSet::empty(space);
    for (std::size_t k = 0; k < orbits.size(); ++k)
      if (mask & (std::size_t{1} << k))
        for (std::uint64_t p : orbits[k]) s.bits.set(p);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const PointSet& a, const PointSet& b) { return a.bits < b.bits; });
  return out;
}

Group stabilizer_of_family(const Group& ambient, const std::vector<PointSet>& sets) {
  std::vector<AlgebraMap> kept;
  for (const AlgebraMap& d : ambient.elements) {
    bool fixes_all = true;
    for (const PointSet& a : sets)
      if (!(act_on_pointset(ambient.algebra, d, a) == a)) { fixes_all = false; break; }
    if (fixes_all) kept.push_back(d);
  }
  return Group{ambient.algebra, std::move(kept)};
}

Group double_closure_subgroup(const Group& h, int context_bound) {
  const FiniteAlgebra& alg = h.algebra;
  const Signature& sig = alg.sig;
  std::vector<VarContext> contexts;
  if (context_bound >= 1)
    for (const auto& s : sig.sorts)
      contexts.push_back(VarContext({{"x", s}}));
  if (context_bound >= 2)
    for (std::size_t i = 0; i < sig.sorts.size(); ++i)
      for (std::size_t j = i; j < sig.sorts.size(); ++j)
        contexts.push_back(VarContext({{"x", sig.sorts[i]}, {"y", sig.sorts[j]}}));
  int total_carrier = 0;
  for (int n : alg.carriers) total_carrier += n;
  if (total_carrier <= 4) {
    // the context with one variable per carrier element
    std::vector<std::pair<std::string, std::string>> vars;
    int counter = 0;
    for (std::size_t si = 0; si < sig.sorts.size(); ++si)
      for (int e = 0; e < alg.carriers[si]; ++e)
        vars.emplace_back("g" + std::to_string(counter++), sig.sorts[si]);
    contexts.push_back(VarContext(std::move(vars)));
  }
  // Fixing every invariant set is the same as fixing every orbit, so the
  // exponential union enumeration is unnecessary here.
  std::vector<PointSet> sets;
  for (const VarContext& ctx : contexts) {
    PointSpace sp(alg, ctx);
    for (const auto& orbit : point_orbits(h, sp)) {
      PointSet s = PointSet::empty(sp);
      for (std::uint64_t p : orbit) s.bits.set(p);
      sets.push_back(std::move(s));
    }
  }
  return stabilizer_of_family(aut_group(alg), sets);
}

std::optional<AlgebraMap> conjugating_iso(const FiniteAlgebra& a1,
                                          const FiniteAlgebra& a2,
                                          const Group& h1, const Group& h2) {
  std::set<AlgebraMap> target(h2.elements.begin(), h2.elements.end());
  for (const AlgebraMap& d : find_isomorphisms(a1, a2)) {
    AlgebraMap dinv = inverse_map(d);
    std::set<AlgebraMap> conj;
    for (const AlgebraMap& g : h1.elements)
      conj.insert(compose_maps(compose_maps(d, g), dinv));
    if (conj == target) return d;
  }
  return std::nullopt;
}

}  // namespace folgeo

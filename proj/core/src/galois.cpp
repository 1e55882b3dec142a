#include "folgeo/galois.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace folgeo {

PointSet theory_value(const Model& m, const Theory& t) {
  PointSpace sp(m.algebra, t.context);
  PointSet out = PointSet::full(sp);
  for (const TypedFormula& u : t.formulas) {
    if (!(u.context == t.context))
      throw DomainError("theory_value: mixed contexts in theory");
    out = set_intersect(out, eval_formula(m, u));
  }
  return out;
}

bool in_set_theory(const Model& m, const PointSet& a, const TypedFormula& u) {
  PointSet val = eval_formula(m, u);
  if (!(val.space == a.space)) throw DomainError("in_set_theory: context mismatch");
  return a.bits.is_subset_of(val.bits);
}

bool in_closure(const Model& m, const Theory& t, const TypedFormula& v) {
  return in_set_theory(m, theory_value(m, t), v);
}

// ---------------------------------------------------------------------------
// Term enumeration, shared by rf_family and the bounded equivalence sweep.

namespace {

struct PooledTerm {
  Term term;
  int level;
  // one value vector per model, indexed by point
  std::vector<std::vector<int>> vals;
};

struct TermPool {
  // per sort index
  std::vector<std::vector<PooledTerm>> by_sort;
};

// Enumerates terms over the context up to `depth`, deduplicating by the
// joint value vectors over all given spaces (the spaces share the context
// but may belong to different algebras of one signature).
TermPool enumerate_terms(const std::vector<const FiniteAlgebra*>& algs,
                         const std::vector<const PointSpace*>& spaces,
                         const VarContext& ctx, int depth, std::size_t cap) {
  const Signature& sig = algs.front()->sig;
  TermPool pool;
  pool.by_sort.resize(sig.sorts.size());
  std::vector<std::set<std::vector<std::vector<int>>>> seen(sig.sorts.size());

  auto values_of = [&](const Term& t) {
    std::vector<std::vector<int>> vals(algs.size());
    for (std::size_t mi = 0; mi < algs.size(); ++mi) {
      const PointSpace& sp = *spaces[mi];
      vals[mi].resize(sp.size());
      for (std::uint64_t p = 0; p < sp.size(); ++p)
        vals[mi][p] = eval_term(*algs[mi], ctx, sp.point_at(p), t);
    }
    return vals;
  };

  auto try_add = [&](std::size_t sort_idx, Term t, int level) {
    if (pool.by_sort[sort_idx].size() >= cap) return;
    auto vals = values_of(t);
    if (!seen[sort_idx].insert(vals).second) return;
    pool.by_sort[sort_idx].push_back({std::move(t), level, std::move(vals)});
  };

  for (std::size_t i = 0; i < ctx.size(); ++i)
    try_add(*sig.sort_index(ctx.sort(i)), Term::var(ctx.name(i)), 0);
  for (const OpDecl& op : sig.ops)
    if (op.arg_sorts.empty())
      try_add(*sig.sort_index(op.result_sort), Term::app(op.name, {}), 0);

  for (int level = 1; level <= depth; ++level) {
    // snapshot sizes so this level only combines earlier terms
    std::vector<std::size_t> upto(sig.sorts.size());
    for (std::size_t s = 0; s < sig.sorts.size(); ++s)
      upto[s] = pool.by_sort[s].size();
    for (std::size_t k = 0; k < sig.ops.size(); ++k) {
      const OpDecl& op = sig.ops[k];
      if (op.arg_sorts.empty()) continue;
      std::vector<std::size_t> arg_sort_idx;
      for (const auto& s : op.arg_sorts) arg_sort_idx.push_back(*sig.sort_index(s));
      std::size_t res_idx = *sig.sort_index(op.result_sort);
      std::vector<std::size_t> pick(op.arg_sorts.size(), 0);
      while (true) {
        bool in_range = true;
        int max_level = -1;
        for (std::size_t i = 0; i < pick.size(); ++i) {
          if (pick[i] >= upto[arg_sort_idx[i]]) { in_range = false; break; }
          max_level = std::max(max_level, pool.by_sort[arg_sort_idx[i]][pick[i]].level);
        }
        if (in_range && max_level == level - 1) {
          std::vector<Term> args;
          for (std::size_t i = 0; i < pick.size(); ++i)
            args.push_back(pool.by_sort[arg_sort_idx[i]][pick[i]].term);
          try_add(res_idx, Term::app(op.name, std::move(args)), level);
        }
        // advance the pick tuple
        std::size_t i = pick.size();
        bool carry = true;
        while (i-- > 0) {
          if (++pick[i] < upto[arg_sort_idx[i]]) { carry = false; break; }
          pick[i] = 0;
        }
        if (carry) break;
      }
    }
  }
  return pool;
}

Bitset value_to_bits(const std::vector<int>& lhs, const std::vector<int>& rhs) {
  Bitset b(lhs.size());
  for (std::size_t p = 0; p < lhs.size(); ++p)
    if (lhs[p] == rhs[p]) b.set(p);
  return b;
}

}  // namespace

// ---------------------------------------------------------------------------
// R_f via partition refinement.
//
// The elementary closure of the atom values under complement, union,
// intersection and quantifiers is exactly the family of sets saturated by
// a partition of the enlarged space: Boolean closure saturates the
// signature partition of the atoms, and refining by the cylinders of the
// classes until fixpoint makes the family quantifier-closed. Restriction
// to X keeps the X-sets whose cylinder is saturated: the unions of the
// connected components of the projected classes.

namespace {

struct Partition {
  std::vector<std::uint32_t> label;  // per point
  std::uint32_t classes = 1;

  explicit Partition(std::uint64_t n) : label(n, 0) {}

  // Split every class along the given set; renumber by first occurrence.
  bool refine(const Bitset& cut) {
    std::map<std::pair<std::uint32_t, bool>, std::uint32_t> renum;
    std::vector<std::uint32_t> next(label.size());
    for (std::uint64_t p = 0; p < label.size(); ++p) {
      auto key = std::make_pair(label[p], cut.test(p));
      auto [it, inserted] = renum.try_emplace(key, static_cast<std::uint32_t>(renum.size()));
      next[p] = it->second;
    }
    bool changed = renum.size() != classes;
    classes = static_cast<std::uint32_t>(renum.size());
    label = std::move(next);
    return changed;
  }

  std::vector<Bitset> class_sets() const {
    std::vector<Bitset> out(classes, Bitset(label.size()));
    for (std::uint64_t p = 0; p < label.size(); ++p) out[label[p]].set(p);
    return out;
  }
};

}  // namespace

DefinableFamily rf_family(const Model& m, const VarContext& x, int budget,
                          int term_depth) {
  const FiniteAlgebra& alg = m.algebra;
  const Signature& sig = alg.sig;
  if (budget < 0)
    budget = *std::max_element(alg.carriers.begin(), alg.carriers.end());

  // Enlarged context: `budget` fresh variables per sort.
  std::vector<std::pair<std::string, std::string>> extra;
  int counter = 0;
  for (const auto& s : sig.sorts)
    for (int i = 0; i < budget; ++i) {
      std::string name;
      do name = "_q" + std::to_string(counter++);
      while (x.contains(name));
      extra.emplace_back(name, s);
    }
  VarContext y = extra.empty() ? x : x.merged(VarContext(extra));

  PointSpace yspace(alg, y);
  PointSpace xspace(alg, x);

  std::vector<const FiniteAlgebra*> algs{&alg};
  std::vector<const PointSpace*> spaces{&yspace};
  TermPool pool = enumerate_terms(algs, spaces, y, term_depth, 256);

  // Atom values over the enlarged space.
  std::set<Bitset> atom_values;
  for (std::size_t s = 0; s < sig.sorts.size(); ++s) {
    const auto& terms = pool.by_sort[s];
    for (std::size_t i = 0; i < terms.size(); ++i)
      for (std::size_t j = i + 1; j < terms.size(); ++j)
        atom_values.insert(value_to_bits(terms[i].vals[0], terms[j].vals[0]));
  }
  for (std::size_t r = 0; r < sig.rels.size(); ++r) {
    const RelDecl& rel = sig.rels[r];
    std::vector<std::size_t> arg_sort_idx;
    for (const auto& s : rel.arg_sorts) arg_sort_idx.push_back(*sig.sort_index(s));
    std::vector<std::size_t> pick(rel.arg_sorts.size(), 0);
    while (true) {
      bool in_range = true;
      for (std::size_t i = 0; i < pick.size(); ++i)
        if (pick[i] >= pool.by_sort[arg_sort_idx[i]].size()) { in_range = false; break; }
      if (!in_range) break;
      Bitset b(yspace.size());
      std::vector<int> tuple(pick.size());
      for (std::uint64_t p = 0; p < yspace.size(); ++p) {
        for (std::size_t i = 0; i < pick.size(); ++i)
          tuple[i] = pool.by_sort[arg_sort_idx[i]][pick[i]].vals[0][p];
        if (m.interp[r].count(tuple)) b.set(p);
      }
      atom_values.insert(std::move(b));
      std::size_t i = pick.size();
      bool carry = true;
      while (i-- > 0) {
        if (++pick[i] < pool.by_sort[arg_sort_idx[i]].size()) { carry = false; break; }
        pick[i] = 0;
      }
      if (carry) break;
    }
  }

  Partition part(yspace.size());
  for (const Bitset& b : atom_values) part.refine(b);

  // Quantifier fixpoint: the cylinder of every class must be saturated.
  bool changed = true;
  while (changed) {
    changed = false;
    auto classes = part.class_sets();
    for (const Bitset& c : classes) {
      PointSet cs{yspace, c};
      for (std::size_t v = 0; v < y.size(); ++v) {
        Bitset ex = exists_quant(cs, y.name(v)).bits;
        if (part.refine(ex)) changed = true;
      }
    }
  }

  // Restrict to X: connected components of the projected classes.
  std::vector<std::size_t> comp(xspace.size());
  std::iota(comp.begin(), comp.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    while (comp[i] != i) i = comp[i] = comp[comp[i]];
    return i;
  };
  // map each Y-point to its X-projection
  std::vector<std::size_t> xpos;  // positions of X variables inside Y
  for (std::size_t i = 0; i < x.size(); ++i) xpos.push_back(*y.index_of(x.name(i)));
  std::vector<std::uint64_t> proj(yspace.size());
  std::vector<int> xpoint(x.size());
  for (std::uint64_t p = 0; p < yspace.size(); ++p) {
    std::vector<int> ypoint = yspace.point_at(p);
    for (std::size_t i = 0; i < x.size(); ++i) xpoint[i] = ypoint[xpos[i]];
    proj[p] = xspace.index_of(xpoint);
  }
  {
    auto classes = part.class_sets();
    for (const Bitset& c : classes) {
      std::size_t first = SIZE_MAX;
      for (std::uint64_t p = 0; p < yspace.size(); ++p) {
        if (!c.test(p)) continue;
        if (first == SIZE_MAX) first = static_cast<std::size_t>(proj[p]);
        else comp[find(static_cast<std::size_t>(proj[p]))] = find(first);
      }
    }
  }
  std::vector<std::vector<std::uint64_t>> blocks;
  std::map<std::size_t, std::size_t> block_index;
  for (std::uint64_t p = 0; p < xspace.size(); ++p) {
    std::size_t root = find(static_cast<std::size_t>(p));
    auto [it, inserted] = block_index.try_emplace(root, blocks.size());
    if (inserted) blocks.emplace_back();
    blocks[it->second].push_back(p);
  }

  DefinableFamily fam{xspace, {}, true, ""};
  if (blocks.size() > 20)
    throw DomainError("rf_family: too many definable classes to enumerate");
  for (std::size_t mask = 0; mask < (std::size_t{1} << blocks.size()); ++mask) {
    PointSet s = PointSet::empty(xspace);
    for (std::size_t k = 0; k < blocks.size(); ++k)
      if (mask & (std::size_t{1} << k))
        for (std::uint64_t p : blocks[k]) s.bits.set(p);
    fam.sets.push_back(std::move(s));
  }
  std::sort(fam.sets.begin(), fam.sets.end(),
            [](const PointSet& a, const PointSet& b) { return a.bits < b.bits; });

  // Independent target for convergence: the family of
  // Aut(f)-invariant sets.
  auto orbit_blocks = point_orbits(aut_model(m), xspace);
  std::set<std::vector<std::uint64_t>> lhs(blocks.begin(), blocks.end());
  std::set<std::vector<std::uint64_t>> rhs(orbit_blocks.begin(), orbit_blocks.end());
  if (lhs != rhs) {
    fam.converged = false;
    fam.warning = "rf_family did not reach the Aut(f)-invariant family at this budget";
  }
  return fam;
}

std::vector<std::string> validate_family_closure(const DefinableFamily& fam) {
  std::vector<std::string> report;
  std::set<Bitset> members;
  for (const PointSet& s : fam.sets) members.insert(s.bits);
  for (const PointSet& s : fam.sets) {
    if (!members.count(set_complement(s).bits))
      report.push_back("family not closed under complement");
    for (std::size_t v = 0; v < fam.space.context().size(); ++v)
      if (!members.count(exists_quant(s, fam.space.context().name(v)).bits))
        report.push_back("family not closed under exists " + fam.space.context().name(v));
    for (const PointSet& t : fam.sets) {
      if (!members.count(set_union(s, t).bits))
        report.push_back("family not closed under union");
      if (!members.count(set_intersect(s, t).bits))
        report.push_back("family not closed under intersection");
    }
    if (!report.empty()) break;  // one witness is enough
  }
  return report;
}

ClosureResult set_closure(const Model& m, const PointSet& a) {
  Group aut = aut_model(m);
  auto orbits = point_orbits(aut, a.space);
  ClosureResult out{PointSet::empty(a.space), {}, false, ""};
  for (const auto& orbit : orbits) {
    bool meets = false;
    for (std::uint64_t p : orbit)
      if (a.bits.test(p)) { meets = true; break; }
    if (!meets) continue;
    for (std::uint64_t p : orbit) out.set.bits.set(p);
    out.orbits.push_back(orbit);
  }

  DefinableFamily fam = rf_family(m, a.space.context());
  if (!fam.converged) {
    out.warning = fam.warning;
    return out;
  }
  // least family member containing A
  PointSet least = PointSet::full(a.space);
  for (const PointSet& s : fam.sets)
    if (a.bits.is_subset_of(s.bits)) least = set_intersect(least, s);
  if (!(least == out.set))
    throw std::logic_error("set_closure: orbit and R_f methods disagree");
  out.cross_checked = true;
  return out;
}

Theory noetherian_reduce(const Model& m, const Theory& t) {
  PointSpace sp(m.algebra, t.context);
  PointSet running = PointSet::full(sp);
  Theory out{t.context, {}};
  for (const TypedFormula& u : t.formulas) {
    PointSet next = set_intersect(running, eval_formula(m, u));
    if (!(next == running)) {
      out.formulas.push_back(u);
      running = next;
    }
  }
  return out;
}

PointSet alv_meet(const PointSet& a, const PointSet& b) {
  return set_intersect(a, b);
}

PointSet alv_join(const Model& m, const PointSet& a, const PointSet& b) {
  return set_closure(m, set_union(a, b)).set;
}

DefinableFamily regular_functions(const Model& m, const PointSet& a) {
  DefinableFamily fam = rf_family(m, a.space.context());
  std::set<Bitset> seen;
  DefinableFamily out{a.space, {}, fam.converged, fam.warning};
  for (const PointSet& b : fam.sets) {
    PointSet r = set_intersect(b, a);
    if (seen.insert(r.bits).second) out.sets.push_back(std::move(r));
  }
  std::sort(out.sets.begin(), out.sets.end(),
            [](const PointSet& x, const PointSet& y) { return x.bits < y.bits; });
  return out;
}

// ---------------------------------------------------------------------------
// Bounded geometric equivalence sweep.

namespace {

struct SweepAtom {
  std::string text;
  Bitset val1, val2;
};

const char* kSweepVarNames[] = {"x", "y", "z"};

}  // namespace

GeoEquivReport geometric_equiv_bounded(const Model& m1, const Model& m2,
                                       int context_bound, int depth_bound,
                                       int theory_bound) {
  if (!(m1.algebra.sig == m2.algebra.sig))
    throw DomainError("geometric_equiv_bounded: signatures differ");
  const Signature& sig = m1.algebra.sig;
  GeoEquivReport report;

  for (int size = 1; size <= context_bound; ++size) {
    if (size > 3) break;  // variable-name pool
    // nondecreasing sort tuples
    std::vector<std::size_t> sorts_pick(size, 0);
    while (true) {
      std::vector<std::pair<std::string, std::string>> vars;
      for (int i = 0; i < size; ++i)
        vars.emplace_back(kSweepVarNames[i], sig.sorts[sorts_pick[i]]);
      VarContext ctx(vars);
      PointSpace sp1(m1.algebra, ctx), sp2(m2.algebra, ctx);

      std::vector<const FiniteAlgebra*> algs{&m1.algebra, &m2.algebra};
      std::vector<const PointSpace*> spaces{&sp1, &sp2};
      TermPool pool = enumerate_terms(algs, spaces, ctx, depth_bound, 128);

      // atom pool: equalities first, then relation atoms; deduplicated by
      // the value pair
      std::vector<SweepAtom> atoms;
      std::set<std::pair<Bitset, Bitset>> seen;
      auto add_atom = [&](std::string text, Bitset v1, Bitset v2) {
        if (atoms.size() >= 64) return;
        if (!seen.insert({v1, v2}).second) return;
        atoms.push_back({std::move(text), std::move(v1), std::move(v2)});
      };
      for (std::size_t s = 0; s < sig.sorts.size(); ++s) {
        const auto& terms = pool.by_sort[s];
        for (std::size_t i = 0; i < terms.size(); ++i)
          for (std::size_t j = i + 1; j < terms.size(); ++j)
            add_atom(term_to_string(terms[i].term) + " == " + term_to_string(terms[j].term),
                     value_to_bits(terms[i].vals[0], terms[j].vals[0]),
                     value_to_bits(terms[i].vals[1], terms[j].vals[1]));
      }
      for (std::size_t r = 0; r < sig.rels.size(); ++r) {
        const RelDecl& rel = sig.rels[r];
        std::vector<std::size_t> arg_sort_idx;
        for (const auto& s : rel.arg_sorts) arg_sort_idx.push_back(*sig.sort_index(s));
        std::vector<std::size_t> pick(rel.arg_sorts.size(), 0);
        while (true) {
          bool in_range = true;
          for (std::size_t i = 0; i < pick.size(); ++i)
            if (pick[i] >= pool.by_sort[arg_sort_idx[i]].size()) { in_range = false; break; }
          if (!in_range) break;
          std::string text = rel.name + "(";
          Bitset v1(sp1.size()), v2(sp2.size());
          std::vector<int> tuple(pick.size());
          for (std::size_t i = 0; i < pick.size(); ++i) {
            if (i) text += ",";
            text += term_to_string(pool.by_sort[arg_sort_idx[i]][pick[i]].term);
          }
          text += ")";
          for (std::uint64_t p = 0; p < sp1.size(); ++p) {
            for (std::size_t i = 0; i < pick.size(); ++i)
              tuple[i] = pool.by_sort[arg_sort_idx[i]][pick[i]].vals[0][p];
            if (m1.interp[r].count(tuple)) v1.set(p);
          }
          for (std::uint64_t p = 0; p < sp2.size(); ++p) {
            for (std::size_t i = 0; i < pick.size(); ++i)
              tuple[i] = pool.by_sort[arg_sort_idx[i]][pick[i]].vals[1][p];
            if (m2.interp[r].count(tuple)) v2.set(p);
          }
          add_atom(std::move(text), std::move(v1), std::move(v2));
          std::size_t i = pick.size();
          bool carry = true;
          while (i-- > 0) {
            if (++pick[i] < pool.by_sort[arg_sort_idx[i]].size()) { carry = false; break; }
            pick[i] = 0;
          }
          if (carry) break;
        }
      }

      // candidates: the atoms and their negations
      struct Candidate { std::string text; Bitset v1, v2; };
      std::vector<Candidate> candidates;
      for (const SweepAtom& a : atoms)
        candidates.push_back({a.text, a.val1, a.val2});
      for (const SweepAtom& a : atoms) {
        Bitset n1 = a.val1, n2 = a.val2;
        n1.flip();
        n2.flip();
        candidates.push_back({"!(" + a.text + ")", std::move(n1), std::move(n2)});
      }

      // theories: subsets of atoms, smallest first, then lexicographic
      std::vector<std::vector<std::size_t>> theories{{}};
      std::vector<std::size_t> combo;
      for (int sz = 1; sz <= theory_bound; ++sz) {
        std::function<void(std::size_t, std::size_t)> gen_exact =
            [&](std::size_t start, std::size_t need) {
              if (need == 0) { theories.push_back(combo); return; }
              for (std::size_t i = start; i < atoms.size(); ++i) {
                combo.push_back(i);
                gen_exact(i + 1, need - 1);
                combo.pop_back();
              }
            };
        gen_exact(0, static_cast<std::size_t>(sz));
      }

      for (const auto& theory : theories) {
        Bitset t1(sp1.size()), t2(sp2.size());
        t1.flip();
        t2.flip();
        for (std::size_t ai : theory) {
          t1 &= atoms[ai].val1;
          t2 &= atoms[ai].val2;
        }
        for (const Candidate& c : candidates) {
          ++report.pairs_checked;
          bool c1 = t1.is_subset_of(c.v1);
          bool c2 = t2.is_subset_of(c.v2);
          if (c1 != c2) {
            report.disagreement = true;
            report.context = ctx;
            for (std::size_t ai : theory)
              report.witness_theory.push_back(atoms[ai].text);
            report.witness_candidate = c.text;
            report.in_first = c1;
            report.in_second = c2;
            return report;
          }
        }
      }

      // advance the nondecreasing sort tuple
      int i = size;
      bool carry = true;
      while (i-- > 0) {
        if (++sorts_pick[i] < sig.sorts.size()) {
          for (int j = i + 1; j < size; ++j) sorts_pick[j] = sorts_pick[i];
          carry = false;
          break;
        }
      }
      if (carry) break;
    }
  }
  return report;
}

}  // namespace folgeo

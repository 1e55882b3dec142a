#include "doctest.h"

#include <random>

#include "folgeo/galois.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace folgeo;
using namespace folgeo::tests;

namespace {

Theory random_theory(std::mt19937& rng, const Signature& sig, const VarContext& ctx,
                     int max_size) {
  Theory t{ctx, {}};
  int n = std::uniform_int_distribution<int>(0, max_size)(rng);
  for (int i = 0; i < n; ++i)
    t.formulas.push_back(random_typed_formula(rng, sig, ctx, 3, /*allow_subst=*/false));
  return t;
}

}  // namespace

TEST_CASE("theory_value") {
  Model f1 = fix_a_f1();
  Signature sig = f1.algebra.sig;
  VarContext x = ctx_x();

  Theory empty{x, {}};
  CHECK(theory_value(f1, empty) == PointSet::full(PointSpace(f1.algebra, x)));

  Theory t{x, {parse_formula("p(x)", x, sig), parse_formula("!(x == add(x,x))", x, sig)}};
  CHECK(theory_value(f1, t) == points_of(f1, x, {1}));

  Theory contradiction{x, {parse_formula("p(x)", x, sig), parse_formula("!p(x)", x, sig)}};
  CHECK(theory_value(f1, contradiction) == points_of(f1, x, {}));
}

TEST_CASE("in_set_theory and in_closure") {
  Model f1 = fix_a_f1();
  Signature sig = f1.algebra.sig;
  VarContext x = ctx_x();

  PointSet a = points_of(f1, x, {1});
  CHECK(in_set_theory(f1, a, parse_formula("p(x)", x, sig)));
  CHECK(in_set_theory(f1, a, parse_formula("p(x) | x == x", x, sig)));
  CHECK(!in_set_theory(f1, a, parse_formula("!p(x)", x, sig)));

  Theory t{x, {parse_formula("p(x)", x, sig)}};
  CHECK(in_closure(f1, t, parse_formula("p(x)", x, sig)));
  CHECK(in_closure(f1, t, parse_formula("!(x == add(x,x))", x, sig)));  // 1 != 2
  CHECK(!in_closure(f1, t, parse_formula("x == add(x,x)", x, sig)));
}

TEST_CASE("Galois connection laws on random theories") {
  std::mt19937 rng(53);
  std::vector<Model> models{fix_a_f1(), fix_a_f12(), fix_b()};
  for (const Model& m : models) {
    Signature sig = m.algebra.sig;
    VarContext xy = ctx_xy();
    for (int trial = 0; trial < 60; ++trial) {
      Theory t = random_theory(rng, sig, xy, 3);
      PointSet tv = theory_value(m, t);
      // every member is in the closure; closure members hold on the value
      for (const TypedFormula& u : t.formulas) {
        CHECK(in_closure(m, t, u));
        CHECK(in_set_theory(m, tv, u));
      }
      // antitone: a larger theory has a smaller value
      Theory bigger = t;
      bigger.formulas.push_back(random_typed_formula(rng, sig, xy, 3, false));
      CHECK(theory_value(m, bigger).bits.is_subset_of(tv.bits));
    }
  }
}

TEST_CASE("rf_family on the one-variable context") {
  // Aut = {id, neg}: invariant subsets of Z3 are unions of {0} and {1,2}
  DefinableFamily fam12 = rf_family(fix_a_f12(), ctx_x());
  CHECK(fam12.converged);
  CHECK(fam12.warning.empty());
  CHECK(fam12.sets.size() == 4);
  CHECK(validate_family_closure(fam12).empty());

  // trivial Aut: every subset of Z3 is definable
  DefinableFamily fam1 = rf_family(fix_a_f1(), ctx_x());
  CHECK(fam1.converged);
  CHECK(fam1.sets.size() == 8);
  CHECK(validate_family_closure(fam1).empty());

  DefinableFamily famb = rf_family(fix_b(), ctx_x());
  CHECK(famb.converged);
  CHECK(famb.sets.size() == 4);
}

TEST_CASE("rf_family matches orbit-invariant sets on the square") {
  for (const Model& m : {fix_a_f1(), fix_a_f12(), fix_b()}) {
    DefinableFamily fam = rf_family(m, ctx_xy());
    REQUIRE(fam.converged);
    auto inv = invariant_sets(aut_model(m), fam.space);
    CHECK(fam.sets == inv);
    CHECK(validate_family_closure(fam).empty());
  }
}

TEST_CASE("rf_family contains every formula value") {
  std::mt19937 rng(59);
  Model m = fix_a_f12();
  Signature sig = m.algebra.sig;
  DefinableFamily fam = rf_family(m, ctx_xy());
  REQUIRE(fam.converged);
  for (int trial = 0; trial < 100; ++trial) {
    TypedFormula u = random_typed_formula(rng, sig, ctx_xy(), 3, false);
    PointSet val = eval_formula(m, u);
    CHECK(std::find(fam.sets.begin(), fam.sets.end(), val) != fam.sets.end());
  }
}

TEST_CASE("set_closure") {
  Model f12 = fix_a_f12();
  VarContext x = ctx_x();

  ClosureResult r = set_closure(f12, points_of(f12, x, {1}));
  CHECK(r.set == points_of(f12, x, {1, 2}));  // neg glues 1 and 2
  CHECK(r.cross_checked);
  REQUIRE(r.orbits.size() == 1);
  CHECK(r.orbits[0] == std::vector<std::uint64_t>{1, 2});

  ClosureResult r0 = set_closure(f12, points_of(f12, x, {0, 1}));
  CHECK(r0.set == points_of(f12, x, {0, 1, 2}));
  CHECK(r0.orbits.size() == 2);

  // trivial Aut: everything is closed
  Model f1 = fix_a_f1();
  ClosureResult r1 = set_closure(f1, points_of(f1, x, {1}));
  CHECK(r1.set == points_of(f1, x, {1}));
  CHECK(r1.cross_checked);
}

TEST_CASE("set_closure is a closure operator") {
  Model m = fix_a_f12();
  PointSpace sp(m.algebra, ctx_xy());
  std::mt19937 rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    PointSet a = PointSet::empty(sp), b = PointSet::empty(sp);
    for (std::uint64_t i = 0; i < sp.size(); ++i) {
      if (rng() % 4 == 0) a.bits.set(i);
      if (rng() % 4 == 0) b.bits.set(i);
    }
    PointSet ca = set_closure(m, a).set;
    CHECK(a.bits.is_subset_of(ca.bits));                       // extensive
    CHECK(set_closure(m, ca).set == ca);                       // idempotent
    if (a.bits.is_subset_of(b.bits))                           // monotone
      CHECK(ca.bits.is_subset_of(set_closure(m, b).set.bits));
  }
}

TEST_CASE("noetherian_reduce") {
  Model f1 = fix_a_f1();
  Signature sig = f1.algebra.sig;
  VarContext x = ctx_x();
  Theory t{x,
           {parse_formula("x == x", x, sig),      // vacuous
            parse_formula("p(x)", x, sig),
            parse_formula("p(x) | p(x)", x, sig)}};  // redundant
  Theory r = noetherian_reduce(f1, t);
  CHECK(r.formulas.size() == 1);
  CHECK(theory_value(f1, r) == theory_value(f1, t));

  Theory empty{x, {}};
  CHECK(noetherian_reduce(f1, empty).formulas.empty());
}

TEST_CASE("closed-set lattice") {
  Model m = fix_a_f12();
  VarContext x = ctx_x();
  PointSet a = set_closure(m, points_of(m, x, {0})).set;
  PointSet b = set_closure(m, points_of(m, x, {1})).set;
  CHECK(alv_meet(a, b) == points_of(m, x, {}));
  CHECK(alv_join(m, a, b) == points_of(m, x, {0, 1, 2}));
  // join of closed sets is closed
  CHECK(set_closure(m, alv_join(m, a, b)).set == alv_join(m, a, b));
}

TEST_CASE("regular_functions") {
  Model m = fix_a_f12();
  VarContext x = ctx_x();
  PointSet a = points_of(m, x, {1, 2});
  DefinableFamily fam = regular_functions(m, a);
  REQUIRE(fam.converged);
  // restrictions of the 4 invariant sets to {1,2}: empty and {1,2}
  CHECK(fam.sets.size() == 2);
  for (const PointSet& b : fam.sets) CHECK(b.bits.is_subset_of(a.bits));

  Model f1 = fix_a_f1();
  DefinableFamily fam1 = regular_functions(f1, points_of(f1, x, {0, 2}));
  CHECK(fam1.sets.size() == 4);  // all subsets of a 2-point set
}

TEST_CASE("geometric_equiv_bounded finds the distinguishing theory") {
  GeoEquivReport rep = geometric_equiv_bounded(fix_a_f1(), fix_a_f12());
  REQUIRE(rep.disagreement);
  CHECK(rep.context == ctx_x());
  CHECK(rep.witness_theory == std::vector<std::string>{"p(x)"});
  CHECK(rep.witness_candidate == "p(add(x,x))");
  CHECK(!rep.in_first);
  CHECK(rep.in_second);
}

TEST_CASE("geometric_equiv_bounded is symmetric in verdict") {
  GeoEquivReport rep = geometric_equiv_bounded(fix_a_f12(), fix_a_f1());
  CHECK(rep.disagreement);
}

TEST_CASE("geometric_equiv_bounded on isomorphic models") {
  GeoEquivReport rep = geometric_equiv_bounded(fix_a_f1(), fix_a_f2());
  CHECK(!rep.disagreement);
  CHECK(rep.pairs_checked > 0);

  GeoEquivReport self = geometric_equiv_bounded(fix_b(), fix_b());
  CHECK(!self.disagreement);
}

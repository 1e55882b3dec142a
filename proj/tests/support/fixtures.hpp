#ifndef FOLGEO_TESTS_FIXTURES_HPP
#define FOLGEO_TESTS_FIXTURES_HPP

#include "folgeo/geometry.hpp"
#include "folgeo/knowledge.hpp"

namespace folgeo::tests {

// One sort s, binary add, relation p : s.
inline Signature cyclic_sig() {
  Signature sig;
  sig.sorts = {"s"};
  sig.ops = {{"add", {"s", "s"}, "s"}};
  sig.rels = {{"p", {"s"}}};
  return sig;
}

// Z_n under addition mod n.
inline FiniteAlgebra cyclic_algebra(int n) {
  FiniteAlgebra alg;
  alg.sig = cyclic_sig();
  alg.carriers = {n};
  std::vector<int> table;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table.push_back((a + b) % n);
  alg.tables = {std::move(table)};
  return alg;
}

inline Model z3_model(std::set<std::vector<int>> p) {
  return Model{cyclic_algebra(3), {std::move(p)}};
}

inline Model fix_a_f1() { return z3_model({{1}}); }
inline Model fix_a_f2() { return z3_model({{2}}); }
inline Model fix_a_f12() { return z3_model({{1}, {2}}); }

inline Model fix_b() { return Model{cyclic_algebra(2), {{{1}}}}; }

inline VarContext make_context(std::vector<std::pair<std::string, std::string>> v) {
  return VarContext(std::move(v));
}

inline VarContext ctx_x() { return make_context({{"x", "s"}}); }
inline VarContext ctx_xy() { return VarContext({{"x", "s"}, {"y", "s"}}); }

inline PointSet points_of(const Model& m, const VarContext& ctx,
                          std::initializer_list<std::uint64_t> indices) {
  PointSet out = PointSet::empty(PointSpace(m.algebra, ctx));
  for (auto i : indices) out.bits.set(i);
  return out;
}

}  // namespace folgeo::tests

#endif

#include <benchmark/benchmark.h>

#include "folgeo/galois.hpp"

using namespace folgeo;

namespace {

Signature cyclic_sig() {
  Signature sig;
  sig.sorts = {"s"};
  sig.ops = {{"add", {"s", "s"}, "s"}};
  sig.rels = {{"p", {"s"}}};
  return sig;
}

FiniteAlgebra cyclic_algebra(int n) {
  FiniteAlgebra alg;
  alg.sig = cyclic_sig();
  alg.carriers = {n};
  std::vector<int> table;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table.push_back((a + b) % n);
  alg.tables = {std::move(table)};
  return alg;
}

Model cyclic_model(int n) {
  std::set<std::vector<int>> p;
  for (int v = 1; v < n; v += 2) p.insert({v});
  return Model{cyclic_algebra(n), {std::move(p)}};
}

VarContext square_context() { return VarContext({{"x", "s"}, {"y", "s"}}); }

void bench_eval_formula(benchmark::State& state) {
  Model m = cyclic_model(static_cast<int>(state.range(0)));
  VarContext ctx = square_context();
  TypedFormula u = parse_formula("E y. p(add(x,y)) & !(x == y)", ctx, m.algebra.sig);
  for (auto _ : state) benchmark::DoNotOptimize(eval_formula(m, u));
}
BENCHMARK(bench_eval_formula)->Arg(3)->Arg(5)->Arg(8);

void bench_rf_family(benchmark::State& state) {
  Model m = cyclic_model(static_cast<int>(state.range(0)));
  VarContext x(std::vector<std::pair<std::string, std::string>>{{"x", "s"}});
  for (auto _ : state) benchmark::DoNotOptimize(rf_family(m, x));
}
BENCHMARK(bench_rf_family)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void bench_aut_search(benchmark::State& state) {
  FiniteAlgebra alg = cyclic_algebra(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(aut_group(alg));
}
BENCHMARK(bench_aut_search)->Arg(5)->Arg(8)->Arg(12);

void bench_set_closure(benchmark::State& state) {
  Model m = cyclic_model(static_cast<int>(state.range(0)));
  PointSpace sp(m.algebra, square_context());
  PointSet a = PointSet::empty(sp);
  a.bits.set(1);
  for (auto _ : state) benchmark::DoNotOptimize(set_closure(m, a));
}
BENCHMARK(bench_set_closure)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include "valvol/branch.hpp"
#include "valvol/ideals.hpp"
#include "valvol/invariants.hpp"
#include "valvol/valuation.hpp"

#include <benchmark/benchmark.h>

#include <map>
#include <string>
#include <vector>

namespace {

using namespace valvol;

const std::vector<std::string> xy{"x", "y"};

void BM_colength(benchmark::State& state) {
  MonomialValuation v(xy, Weight({Rat(2), Rat(3)}));
  Rat lam(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(colength(v, lam));
}
BENCHMARK(BM_colength)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096);

void BM_minimize_nvol(benchmark::State& state) {
  PuiseuxChar chr{{static_cast<long>(state.range(0)), static_cast<long>(state.range(1))}};
  Rat lam = (Rat(1, chr.a()) + Rat(1, chr.b())) / 2;
  for (auto _ : state) benchmark::DoNotOptimize(minimize_nvol(chr, lam));
}
BENCHMARK(BM_minimize_nvol)->Args({2, 3})->Args({5, 7})->Args({8, 9});

void BM_implicitize(benchmark::State& state) {
  std::vector<PhiTerm> phi{{6, Rat(1)}, {7, Rat(1)}};
  for (long e = 8; e < 8 + state.range(0); ++e) phi.push_back({e, Rat(1, e)});
  BranchParam br = normalize_branch(4, std::move(phi));
  for (auto _ : state) benchmark::DoNotOptimize(implicitize(br));
}
BENCHMARK(BM_implicitize)->Arg(0)->Arg(2)->Arg(4);

void BM_newton_puiseux(benchmark::State& state) {
  Poly f = implicitize(normalize_branch(4, {{6, Rat(1)}, {7, Rat(1)}}));
  for (auto _ : state) benchmark::DoNotOptimize(newton_puiseux(f, 32));
}
BENCHMARK(BM_newton_puiseux);

void BM_flat_rees_check(benchmark::State& state) {
  const long box = state.range(0);
  std::map<std::vector<long>, Staircase> ideals;
  for (long m1 = 0; m1 <= box; ++m1)
    for (long m2 = 0; m2 <= box; ++m2)
      ideals[{m1, m2}] = Staircase::from_generators({{m1, m2}});
  ReesFamilyTrunc fam({box, box}, std::move(ideals));
  Weight xi({Rat(1), Rat(1)});
  Rat cutoff(box - 1);
  for (auto _ : state) benchmark::DoNotOptimize(flat_rees_check(fam, xi, cutoff));
}
BENCHMARK(BM_flat_rees_check)->Arg(4)->Arg(6)->Arg(8);

} // namespace

BENCHMARK_MAIN();

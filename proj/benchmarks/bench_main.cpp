#include <benchmark/benchmark.h>

#include "fixtures.hpp"

using namespace fixtures;

namespace {

// n independent copies of the agency nets, to grow the state space.
OpenNet replicate(const OpenNet& z, int n) {
  OpenNet r;
  r.name = z.name + "x" + std::to_string(n);
  for (int i = 0; i < n; ++i) {
    std::string k = "_" + std::to_string(i);
    for (const auto& s : z.places) r.add_place(s + k, z.initial.count(s), z.is_open_in(s), z.is_open_out(s));
    for (const auto& [t, tr] : z.transitions) {
      Marking pre, post;
      for (const auto& [s, c] : tr.pre) pre.add(s + k, c);
      for (const auto& [s, c] : tr.post) post.add(s + k, c);
      r.add_transition(t + k, tr.label, pre, post);
    }
  }
  return r;
}

void BM_BuildLtsFiring(benchmark::State& state) {
  OpenNet z = replicate(agency_b(), static_cast<int>(state.range(0)));
  std::size_t n = 0;
  for (auto _ : state) {
    auto l = build_lts(z, Mode::Firing, 2);
    n = l.states.size();
    benchmark::DoNotOptimize(l);
  }
  state.counters["states"] = static_cast<double>(n);
}
BENCHMARK(BM_BuildLtsFiring)->DenseRange(1, 4);

void BM_BuildLtsStep(benchmark::State& state) {
  OpenNet z = replicate(agency_a(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_lts(z, Mode::Step, 2));
}
BENCHMARK(BM_BuildLtsStep)->DenseRange(1, 3);

void BM_InputOpenChain(benchmark::State& state) {
  OpenNet z;
  z.add_place("s", 0, true, true).add_place("q").add_transition("t", "a", mk({{"s", 1}}), mk({{"q", 1}}));
  for (auto _ : state) benchmark::DoNotOptimize(build_lts(z, Mode::Firing, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_InputOpenChain)->RangeMultiplier(2)->Range(4, 64);

void BM_CheckBisimStrong(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  OpenNet a = replicate(agency_a(), n), b = replicate(agency_b(), n);
  BisimOptions o;
  o.cap = 2;
  for (auto _ : state) benchmark::DoNotOptimize(check_bisim(a, b, Correspondence{}, o));
}
BENCHMARK(BM_CheckBisimStrong)->DenseRange(1, 3);

void BM_CheckBisimWeakService(benchmark::State& state) {
  auto p = service_rule();
  BisimOptions o;
  o.kind = {Strength::Weak, Mode::Firing};
  o.tau = {"planJourney", "searchConnections", "composeItinerary"};
  o.cap = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_behaviour_preserving(p, o));
}
BENCHMARK(BM_CheckBisimWeakService)->DenseRange(1, 4);

void BM_FindMatches(benchmark::State& state) {
  auto p = service_rule();
  auto z = std::make_shared<const OpenNet>(replicate(service_host(), static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(find_matches(p.l.target, z));
}
BENCHMARK(BM_FindMatches)->RangeMultiplier(2)->Range(1, 16);

}  // namespace

BENCHMARK_MAIN();

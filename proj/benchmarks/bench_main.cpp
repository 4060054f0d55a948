#include <benchmark/benchmark.h>

#include "ppn/constants.hpp"
#include "ppn/factorize.hpp"
#include "ppn/pocklington.hpp"
#include "ppn/prefix_search.hpp"
#include "ppn/primality.hpp"
#include "ppn/sieve.hpp"

using namespace ppn;

namespace {

void BM_FactorizeN10Plus1(benchmark::State& state) {
  const Int n = parse_int(known::kN10Plus1);
  for (auto _ : state) benchmark::DoNotOptimize(factorize(n));
}
BENCHMARK(BM_FactorizeN10Plus1)->Unit(benchmark::kMillisecond);

void BM_ExactSqrt(benchmark::State& state) {
  const Int r = parse_int(known::kN10);
  const Int sq = r * r;
  for (auto _ : state) benchmark::DoNotOptimize(exact_sqrt(sq));
}
BENCHMARK(BM_ExactSqrt);

void BM_ScanKeyPort(benchmark::State& state) {
  const auto problem = build_discriminant_problem(known::key_port(), 101);
  for (auto _ : state) benchmark::DoNotOptimize(scan_last_two(problem));
}
BENCHMARK(BM_ScanKeyPort);

// Long interval: the scan cost per t dominates the prefix search.
void BM_ScanPerT(benchmark::State& state) {
  const auto problem = build_discriminant_problem(Port(6, 1), 5);
  const Int hi = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(scan_last_two_stats(problem, 0, hi, true));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScanPerT)->Arg(10'000)->Arg(100'000);

void BM_SieveAllowedClasses(benchmark::State& state) {
  const auto problem = build_discriminant_problem(known::key_port(), 101);
  for (auto _ : state)
    for (auto l : default_sieve_moduli()) benchmark::DoNotOptimize(sieve_allowed_classes(problem, l));
}
BENCHMARK(BM_SieveAllowedClasses);

void BM_FirstSurvivingT(benchmark::State& state) {
  const auto problem = build_discriminant_problem(known::key_port(), 101);
  std::vector<SieveModulus> moduli;
  for (auto l : default_sieve_moduli()) moduli.push_back(sieve_allowed_classes(problem, l));
  const Int T("1000000000000");
  for (auto _ : state) benchmark::DoNotOptimize(first_surviving_t(T, moduli));
}
BENCHMARK(BM_FirstSurvivingT);

void BM_FirstPrimeLayer(benchmark::State& state) {
  PrefixSearchConfig config{known::key_port()};
  config.depth = 1;
  for (auto _ : state) {
    std::size_t n = 0;
    enumerate_prefixes(config, [&](const PrefixNode&) { return ++n, true; });
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_FirstPrimeLayer);

void BM_PrefixSearchK4(benchmark::State& state) {
  PrefixSearchConfig config{known::key_port()};
  config.k = 4;
  config.t_cap = 100'000;
  RunOptions options;
  options.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_prefix_search(config, options));
}
BENCHMARK(BM_PrefixSearchK4)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_CertifyP10(benchmark::State& state) {
  const Int p = parse_int(known::kP10);
  for (auto _ : state) benchmark::DoNotOptimize(certify_prime(p));
}
BENCHMARK(BM_CertifyP10)->Unit(benchmark::kMillisecond);

void BM_VerifyCertificate(benchmark::State& state) {
  const auto cert = certify_prime(Int("1701301706648581"));
  for (auto _ : state) benchmark::DoNotOptimize(pocklington_verify(cert));
}
BENCHMARK(BM_VerifyCertificate)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

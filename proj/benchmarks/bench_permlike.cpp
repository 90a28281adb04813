#include <benchmark/benchmark.h>

#include <random>

#include "permlike/certify.hpp"
#include "permlike/cyclooracle.hpp"
#include "permlike/permsim.hpp"
#include "sweep.hpp"

using namespace permlike;

namespace {

std::map<i64, i64> trivial_phases(i64 d, i64 r) {
  std::map<i64, i64> out;
  for (const Orbit& o : mu_orbits(d, Residue(r, d)).orbits) out[o.rep] = 0;
  return out;
}

MonoMatrix random_mono(std::mt19937_64& rng, i64 d, i64 m) {
  std::vector<i64> sigma(static_cast<std::size_t>(d));
  for (i64 j = 0; j < d; ++j) sigma[static_cast<std::size_t>(j)] = j;
  std::shuffle(sigma.begin(), sigma.end(), rng);
  std::vector<i64> phase(static_cast<std::size_t>(d));
  for (auto& e : phase) e = static_cast<i64>(rng() % static_cast<std::uint64_t>(m));
  return MonoMatrix(std::move(sigma), std::move(phase), m);
}

void BM_CharFactors(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const MonoMatrix x = random_mono(rng, state.range(0), 36);
  for (auto _ : state) benchmark::DoNotOptimize(char_factors(x));
}
BENCHMARK(BM_CharFactors)->Arg(9)->Arg(27)->Arg(81);

void BM_CharPolyDense(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const MonoMatrix x = random_mono(rng, state.range(0), 18);
  const DenseMatrix dense = realize(x, CycloField::get(18));
  for (auto _ : state) benchmark::DoNotOptimize(char_poly_dense(dense));
}
BENCHMARK(BM_CharPolyDense)->Arg(3)->Arg(6)->Arg(9);

void BM_GroupVerdict(benchmark::State& state) {
  const i64 n = state.range(0);
  const i64 d = checked_pow(3, static_cast<int>(n));
  const GroupSpec g = GroupSpec::from_phases(3, static_cast<int>(n), Residue(1 + d / 3, d), trivial_phases(d, 1 + d / 3), 2 * d);
  for (auto _ : state) benchmark::DoNotOptimize(is_permutation_like_group(g, false));
}
BENCHMARK(BM_GroupVerdict)->Arg(2)->Arg(3)->Arg(4);

void BM_CosetPrefilter(benchmark::State& state) {
  const i64 d = 27;
  std::mt19937_64 rng(3);
  auto phases = trivial_phases(d, 10);
  for (auto& [rep, e] : phases) e = static_cast<i64>(rng() % 54);
  const MonoMatrix a = normalizer_A(3, 3, Residue(10, d), phases, 54);
  for (auto _ : state) benchmark::DoNotOptimize(coset_failure(a));
}
BENCHMARK(BM_CosetPrefilter);

void BM_BuildCertificate(benchmark::State& state) {
  const i64 n = state.range(0);
  const i64 d = checked_pow(3, static_cast<int>(n));
  const GroupSpec g = GroupSpec::from_phases(3, static_cast<int>(n), Residue(2, d), trivial_phases(d, 2), 2 * d);
  for (auto _ : state) benchmark::DoNotOptimize(build_certificate(g));
}
BENCHMARK(BM_BuildCertificate)->Arg(1)->Arg(2)->Arg(3);

void BM_VerifyCertificate(benchmark::State& state) {
  const i64 n = state.range(0);
  const bool exact = state.range(1) != 0;
  const i64 d = checked_pow(3, static_cast<int>(n));
  const GroupSpec g = GroupSpec::from_phases(3, static_cast<int>(n), Residue(2, d), trivial_phases(d, 2), 2 * d);
  const Certificate cert = build_certificate(g);
  VerifyOptions opts;
  opts.exact_determinant = exact;
  for (auto _ : state) benchmark::DoNotOptimize(verify_certificate(cert, opts));
}
BENCHMARK(BM_VerifyCertificate)->Args({1, 0})->Args({2, 0})->Args({2, 1})->Args({3, 0})->Unit(benchmark::kMillisecond);

void BM_SweepBlock(benchmark::State& state) {
  cli::SweepConfig cfg;
  cfg.primes = {3};
  cfg.ns = {2};
  cfg.r_values = {state.range(0)};
  for (auto _ : state) benchmark::DoNotOptimize(cli::run_sweep(cfg));
}
BENCHMARK(BM_SweepBlock)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

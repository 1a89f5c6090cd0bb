#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "cplx/assembly.hpp"
#include "cplx/bdm.hpp"
#include "cplx/coding.hpp"

namespace {

std::string random_string(std::size_t n, int alphabet, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::string s(n, 'A');
  for (char& c : s) c = static_cast<char>('A' + rng() % alphabet);
  return s;
}

std::string random_bits(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::string s(n, '0');
  for (char& c : s) c = rng() & 1 ? '1' : '0';
  return s;
}

void BM_AssemblyExact(benchmark::State& state) {
  const auto s = random_string(state.range(0), 2, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cplx::assembly::assembly_index_exact(s).index);
  }
}
BENCHMARK(BM_AssemblyExact)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

void BM_AssemblyExactAbracadabra(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cplx::assembly::assembly_index_exact("ABRACADABRA").index);
  }
}
BENCHMARK(BM_AssemblyExactAbracadabra)->Unit(benchmark::kMillisecond);

void BM_AssemblySplit(benchmark::State& state) {
  const auto s = random_string(state.range(0), 4, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cplx::assembly::assembly_index_split(s).index);
  }
}
BENCHMARK(BM_AssemblySplit)->RangeMultiplier(4)->Range(16, 1024);

void BM_Huffman(benchmark::State& state) {
  const auto s = random_string(state.range(0), 16, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cplx::coding::huffman(s).total_bits);
  }
}
BENCHMARK(BM_Huffman)->RangeMultiplier(8)->Range(64, 1 << 15);

void BM_CtmEnumerate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(cplx::bdm::ctm_enumerate(2, 2, 30).size());
  }
}
BENCHMARK(BM_CtmEnumerate)->Unit(benchmark::kMillisecond);

void BM_Bdm1d(benchmark::State& state) {
  const auto table = cplx::bdm::toy_table_1d();
  const auto s = random_bits(state.range(0), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cplx::bdm::bdm_1d(s, table).bits);
  }
}
BENCHMARK(BM_Bdm1d)->RangeMultiplier(8)->Range(64, 1 << 15);

void BM_Bdm2d(benchmark::State& state) {
  const auto table = cplx::bdm::toy_table_2d();
  const std::size_t n = state.range(0);
  cplx::BinaryMatrix m(n, n);
  std::mt19937_64 rng(5);
  for (auto& v : m.data) v = rng() & 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cplx::bdm::bdm_2d(m, table).bits);
  }
}
BENCHMARK(BM_Bdm2d)->RangeMultiplier(4)->Range(8, 256);

}  // namespace

#include <benchmark/benchmark.h>

#include <random>

#include "qproj/dynamics.hpp"

namespace {

using namespace qproj;

Quaternion rand_quat(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), n(rng), n(rng), n(rng)};
}

QMatrix rand_matrix(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  QMatrix m(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m.at(r, c) = rand_quat(rng);
  return m;
}

void BM_phi_embed(benchmark::State& state) {
  const QMatrix a = rand_matrix(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi_embed(a));
  }
}
BENCHMARK(BM_phi_embed)->Arg(4)->Arg(8);

void BM_right_eigenvalues(benchmark::State& state) {
  const QMatrix a = rand_matrix(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(right_eigenvalues(a));
  }
}
BENCHMARK(BM_right_eigenvalues)->Arg(4)->Arg(8);

void BM_qsvd(benchmark::State& state) {
  const QMatrix a = rand_matrix(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsvd(a));
  }
}
BENCHMARK(BM_qsvd)->Arg(4)->Arg(8);

void BM_jordan_numeric(benchmark::State& state) {
  // Conjugated mixed structure at dim 4.
  const QMatrix j = QMatrix::block_diag(
      {QMatrix::jordan_block(1.0, 2), QMatrix::diagonal({Quaternion(0.5), Quaternion(2.0)})});
  std::mt19937_64 rng(4);
  QMatrix s(4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) s.at(r, c) = rand_quat(rng) * 0.3;
  for (int i = 0; i < 4; ++i) s.at(i, i) += 1.0;
  const QMatrix a = s * j * inverse(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(jordan_analyze_numeric(a));
  }
}
BENCHMARK(BM_jordan_numeric);

void BM_classify(benchmark::State& state) {
  const QMatrix g = QMatrix::diagonal(
      {Quaternion(0.5), Quaternion(1.0), Quaternion(2.0), Quaternion(4.0)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_element(g, {}));
  }
}
BENCHMARK(BM_classify);

void BM_orbit_10k(benchmark::State& state) {
  const QMatrix g = QMatrix::block_diag(
      {QMatrix::jordan_block(1.0, 3), QMatrix(1, {Quaternion(0, 1, 0, 0)})});
  std::mt19937_64 rng(7);
  std::vector<Quaternion> x(4);
  for (auto& q : x) q = rand_quat(rng);
  const ProjPoint seed(std::move(x));
  for (auto _ : state) {
    benchmark::DoNotOptimize(iterate_orbit(g, seed, 10000, +1));
  }
}
BENCHMARK(BM_orbit_10k);

void BM_pseudo_limit(benchmark::State& state) {
  const QMatrix g = QMatrix::jordan_block(1.0, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pseudo_projective_limit(g, 42, +1));
  }
}
BENCHMARK(BM_pseudo_limit);

}  // namespace

// Serial reference vs OpenMP kernels on matrices larger than any real input.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "smi/kernels.hpp"

namespace {

using namespace smi;

Matrix random_matrix(std::size_t rows, std::size_t cols) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = u(rng);
  }
  return m;
}

std::vector<Direction> directions(std::size_t cols) {
  std::vector<Direction> d(cols);
  for (std::size_t c = 0; c < cols; ++c) d[c] = c % 3 ? Direction::Positive : Direction::Negative;
  return d;
}

template <auto Ranges, auto Normalize>
void BM_Normalize(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const auto cols = static_cast<std::size_t>(state.range(1));
  const Matrix x = random_matrix(rows, cols);
  const auto dirs = directions(cols);
  Matrix out(rows, cols);
  for (auto _ : state) {
    const auto ranges = Ranges(x);
    Normalize(x, dirs, ranges, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(rows * cols));
}

template <auto Kernel>
void BM_Matrix(benchmark::State& state) {
  const Matrix x = random_matrix(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    Matrix m = Kernel(x);
    benchmark::DoNotOptimize(m.data());
  }
}

template <auto Kernel>
void BM_RowMeans(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const auto cols = static_cast<std::size_t>(state.range(1));
  const Matrix x = random_matrix(rows, cols);
  std::vector<double> w(cols, 1.0);
  for (auto _ : state) {
    auto s = Kernel(x, w);
    benchmark::DoNotOptimize(s.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(rows * cols));
}

void sizes(benchmark::internal::Benchmark* b) {
  b->Args({22, 31})->Args({1000, 100})->Args({5000, 200})->Unit(benchmark::kMicrosecond);
}

}  // namespace

BENCHMARK(BM_Normalize<kernels::serial::column_ranges, kernels::serial::normalize_columns>)
    ->Name("normalize/serial")->Apply(sizes);
BENCHMARK(BM_Normalize<kernels::omp::column_ranges, kernels::omp::normalize_columns>)
    ->Name("normalize/omp")->Apply(sizes);
BENCHMARK(BM_Matrix<kernels::serial::covariance>)->Name("covariance/serial")->Apply(sizes);
BENCHMARK(BM_Matrix<kernels::omp::covariance>)->Name("covariance/omp")->Apply(sizes);
BENCHMARK(BM_Matrix<kernels::serial::correlation>)->Name("correlation/serial")->Apply(sizes);
BENCHMARK(BM_Matrix<kernels::omp::correlation>)->Name("correlation/omp")->Apply(sizes);
BENCHMARK(BM_RowMeans<kernels::serial::weighted_row_means>)->Name("row_means/serial")->Apply(sizes);
BENCHMARK(BM_RowMeans<kernels::omp::weighted_row_means>)->Name("row_means/omp")->Apply(sizes);

BENCHMARK_MAIN();

#include <doctest.h>

#include <random>

#include "smi/kernels.hpp"
#include "support.hpp"

using namespace smi;

// The OpenMP kernels must reproduce the serial reference bit for bit.
TEST_CASE("omp kernels match the serial reference exactly") {
  std::mt19937_64 rng(42);
  for (auto [n, p] : {std::pair<std::size_t, std::size_t>{3, 2}, {22, 31}, {257, 19}, {1000, 64}}) {
    CAPTURE(n);
    CAPTURE(p);
    const Matrix x = test::random_matrix(rng, n, p, -3, 7);
    std::vector<Direction> dirs(p);
    for (std::size_t c = 0; c < p; ++c) dirs[c] = c % 3 ? Direction::Positive : Direction::Negative;

    const auto rs = kernels::serial::column_ranges(x);
    const auto ro = kernels::omp::column_ranges(x);
    REQUIRE(rs.size() == ro.size());
    for (std::size_t c = 0; c < p; ++c) {
      CHECK(rs[c].min == ro[c].min);
      CHECK(rs[c].max == ro[c].max);
    }

    Matrix ns(n, p), no(n, p);
    kernels::serial::normalize_columns(x, dirs, rs, ns);
    kernels::omp::normalize_columns(x, dirs, ro, no);
    CHECK(ns == no);

    CHECK(kernels::serial::covariance(ns) == kernels::omp::covariance(no));
    CHECK(kernels::serial::correlation(ns) == kernels::omp::correlation(no));

    std::vector<double> w(p);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (double& v : w) v = u(rng);
    CHECK(kernels::serial::weighted_row_means(ns, w) == kernels::omp::weighted_row_means(no, w));
  }
}

TEST_CASE("correlation kernel: unit diagonal, symmetric, bounded") {
  std::mt19937_64 rng(9);
  const Matrix x = test::random_matrix(rng, 30, 8);
  const Matrix r = kernels::serial::correlation(x);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(r(i, i) == 1.0);
    for (std::size_t j = 0; j < 8; ++j) {
      CHECK(r(i, j) == r(j, i));
      CHECK(std::abs(r(i, j)) <= 1.0);
    }
  }
}

#pragma once

// Data-parallel inner loops of the pipeline. Every kernel exists twice: a
// plain serial reference and an OpenMP version. Each output element is
// produced by exactly one thread with the same summation order as the serial
// code, so the two agree bit for bit.

#include <span>
#include <vector>

#include "smi/dataset.hpp"
#include "smi/matrix.hpp"

namespace smi::kernels {

struct ColumnRange {
  double min = 0.0;
  double max = 0.0;
};

namespace serial {

std::vector<ColumnRange> column_ranges(const Matrix& x);

// out(r,c) = normalized x(r,c); out must already be shaped like x and
// ranges must have max > min for every column.
void normalize_columns(const Matrix& x, std::span<const Direction> directions,
                       std::span<const ColumnRange> ranges, Matrix& out);

// Sample covariance (n - 1 denominator) of the columns of x.
Matrix covariance(const Matrix& x);

// Pearson correlation of the columns of x; unit diagonal, entries clamped to [-1,1].
// Requires every column to have nonzero variance.
Matrix correlation(const Matrix& x);

// Per-row sum_i x(r,i) w_i / sum_i w_i, accumulated left to right.
std::vector<double> weighted_row_means(const Matrix& x, std::span<const double> weights);

}  // namespace serial

namespace omp {

std::vector<ColumnRange> column_ranges(const Matrix& x);
void normalize_columns(const Matrix& x, std::span<const Direction> directions,
                       std::span<const ColumnRange> ranges, Matrix& out);
Matrix covariance(const Matrix& x);
Matrix correlation(const Matrix& x);
std::vector<double> weighted_row_means(const Matrix& x, std::span<const double> weights);

int max_threads();

}  // namespace omp

}  // namespace smi::kernels

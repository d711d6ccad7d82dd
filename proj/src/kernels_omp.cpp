#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "smi/kernels.hpp"

namespace smi::kernels::omp {

int max_threads() { return omp_get_max_threads(); }

std::vector<ColumnRange> column_ranges(const Matrix& x) {
  const auto p = static_cast<std::int64_t>(x.cols());
  std::vector<ColumnRange> out(x.cols());
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < p; ++c) {
    ColumnRange r{x(0, c), x(0, c)};
    for (std::size_t i = 1; i < x.rows(); ++i) {
      r.min = std::min(r.min, x(i, c));
      r.max = std::max(r.max, x(i, c));
    }
    out[c] = r;
  }
  return out;
}

void normalize_columns(const Matrix& x, std::span<const Direction> directions,
                       std::span<const ColumnRange> ranges, Matrix& out) {
  const auto n = static_cast<std::int64_t>(x.rows());
  const std::size_t p = x.cols();
  // Rows are contiguous, so split over rows and walk columns inside.
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < p; ++c) {
      const double lo = ranges[c].min;
      const double hi = ranges[c].max;
      const double span = hi - lo;
      out(i, c) = directions[c] == Direction::Positive ? (x(i, c) - lo) / span
                                                       : (hi - x(i, c)) / span;
    }
  }
}

Matrix covariance(const Matrix& x) {
  const std::size_t n = x.rows();
  const auto p = static_cast<std::int64_t>(x.cols());
  std::vector<double> mean(x.cols(), 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < p; ++c) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x(i, c);
    mean[c] = s / static_cast<double>(n);
  }
  Matrix cov(x.cols(), x.cols());
  // Upper-triangle rows shrink with a, so hand them out dynamically.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t a = 0; a < p; ++a) {
    for (std::int64_t b = a; b < p; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += (x(i, a) - mean[a]) * (x(i, b) - mean[b]);
      const double v = s / static_cast<double>(n - 1);
      cov(a, b) = v;
      cov(b, a) = v;
    }
  }
  return cov;
}

Matrix correlation(const Matrix& x) {
  Matrix m = covariance(x);
  const auto p = static_cast<std::int64_t>(m.rows());
  std::vector<double> sd(m.rows());
  for (std::int64_t c = 0; c < p; ++c) sd[c] = std::sqrt(m(c, c));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t a = 0; a < p; ++a) {
    for (std::int64_t b = a + 1; b < p; ++b) {
      const double r = std::clamp(m(a, b) / (sd[a] * sd[b]), -1.0, 1.0);
      m(a, b) = r;
      m(b, a) = r;
    }
    m(a, a) = 1.0;
  }
  return m;
}

std::vector<double> weighted_row_means(const Matrix& x, std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  const auto n = static_cast<std::int64_t>(x.rows());
  std::vector<double> out(x.rows());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t c = 0; c < x.cols(); ++c) s += x(i, c) * weights[c];
    out[i] = s / total;
  }
  return out;
}

}  // namespace smi::kernels::omp

#include <algorithm>
#include <cmath>

#include "smi/kernels.hpp"

namespace smi::kernels::serial {

std::vector<ColumnRange> column_ranges(const Matrix& x) {
  std::vector<ColumnRange> out(x.cols());
  for (std::size_t c = 0; c < x.cols(); ++c) {
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
  for (std::size_t c = 0; c < x.cols(); ++c) {
    const double lo = ranges[c].min;
    const double hi = ranges[c].max;
    const double span = hi - lo;
    const bool positive = directions[c] == Direction::Positive;
    for (std::size_t i = 0; i < x.rows(); ++i) {
      out(i, c) = positive ? (x(i, c) - lo) / span : (hi - x(i, c)) / span;
    }
  }
}

Matrix covariance(const Matrix& x) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  std::vector<double> mean(p, 0.0);
  for (std::size_t c = 0; c < p; ++c) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x(i, c);
    mean[c] = s / static_cast<double>(n);
  }
  Matrix cov(p, p);
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = a; b < p; ++b) {
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
  const std::size_t p = m.rows();
  std::vector<double> sd(p);
  for (std::size_t c = 0; c < p; ++c) sd[c] = std::sqrt(m(c, c));
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = a + 1; b < p; ++b) {
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
  std::vector<double> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double s = 0.0;
    for (std::size_t c = 0; c < x.cols(); ++c) s += x(i, c) * weights[c];
    out[i] = s / total;
  }
  return out;
}

}  // namespace smi::kernels::serial

#include "smi/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "smi/csv.hpp"
#include "smi/error.hpp"
#include "smi/kernels.hpp"

namespace smi {

SymmetricMatrix::SymmetricMatrix(Matrix m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw ValidationError("matrix is not square and non-empty");
  }
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    for (std::size_t j = i + 1; j < m_.cols(); ++j) {
      if (!(std::abs(m_(i, j) - m_(j, i)) <= tol)) {
        throw ValidationError("matrix is not symmetric at (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
      }
    }
  }
}

double SymmetricMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < size(); ++i) t += m_(i, i);
  return t;
}

double SymmetricMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : m_.data()) s += v * v;
  return std::sqrt(s);
}

double Spectrum::total() const {
  return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
}

SymmetricMatrix correlation_matrix(const NormalizedMatrix& norm, Basis basis) {
  const Matrix& x = norm.values();
  if (x.rows() < 3) throw ValidationError("correlation needs at least 3 rows");
  if (x.cols() < 1) throw ValidationError("correlation needs at least 1 column");
  const auto ranges = kernels::omp::column_ranges(x);
  std::vector<std::string> constant;
  for (std::size_t c = 0; c < x.cols(); ++c) {
    if (!(ranges[c].max > ranges[c].min)) constant.push_back(norm.indicator_ids()[c]);
  }
  if (!constant.empty()) throw DegenerateColumnError(std::move(constant));
  return SymmetricMatrix(basis == Basis::Correlation ? kernels::omp::correlation(x)
                                                     : kernels::omp::covariance(x));
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  }
  return std::sqrt(2.0 * s);
}

// One Jacobi rotation annihilating a(p,q); accumulates into v.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const std::size_t n = a.rows();
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t = 0.0;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    const double g = a(r, p);
    const double h = a(r, q);
    const double rp = g - s * (h + g * tau);
    const double rq = h + s * (g - h * tau);
    a(r, p) = rp;
    a(p, r) = rp;
    a(r, q) = rq;
    a(q, r) = rq;
  }
  for (std::size_t r = 0; r < n; ++r) {
    const double g = v(r, p);
    const double h = v(r, q);
    v(r, p) = g - s * (h + g * tau);
    v(r, q) = h + s * (g - h * tau);
  }
}

}  // namespace

Spectrum eigendecompose(const SymmetricMatrix& m, JacobiOptions options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("eigendecompose: tol must be > 0");
  if (options.max_sweeps < 1) throw std::invalid_argument("eigendecompose: max_sweeps must be >= 1");

  const std::size_t n = m.size();
  Matrix a = m.matrix();
  Matrix v = Matrix::identity(n);

  int sweeps = 0;
  double off = off_diagonal_norm(a);
  while (off >= options.tol) {
    if (sweeps == options.max_sweeps) {
      throw NumericalError("Jacobi eigensolver did not converge in " +
                               std::to_string(options.max_sweeps) +
                               " sweeps; off-diagonal norm " + csv::full(off),
                           off);
    }
    ++sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Once an element is below the rounding level of both diagonal
        // entries it can only contribute noise; drop it.
        const double g = 100.0 * std::abs(apq);
        if (sweeps > 4 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
    off = off_diagonal_norm(a);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  out.sweeps = sweeps;
  out.off_norm = off;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.eigenvalues[k] = a(src, src);
    std::size_t lead = 0;
    for (std::size_t r = 1; r < n; ++r) {
      if (std::abs(v(r, src)) > std::abs(v(lead, src))) lead = r;
    }
    const double sign = v(lead, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = sign * v(r, src);
  }
  return out;
}

ComponentSelection select_components(const Spectrum& spectrum, double eigen_threshold,
                                     double variance_target) {
  const std::size_t n = spectrum.size();
  if (n == 0) throw ValidationError("cannot select components from an empty spectrum");
  const double total = spectrum.total();

  ComponentSelection sel;
  while (sel.threshold_count < n && spectrum.eigenvalues[sel.threshold_count] > eigen_threshold) {
    ++sel.threshold_count;
  }
  std::size_t k = sel.threshold_count;
  if (k == 0) {
    k = 1;
    sel.minimum_prefix_applied = true;
  }
  auto ratio_of = [&](std::size_t count) {
    double s = 0.0;
    for (std::size_t j = 0; j < count; ++j) s += spectrum.eigenvalues[j];
    return total > 0.0 ? s / total : 1.0;
  };
  double ratio = ratio_of(k);
  while (ratio < variance_target && k < n) {
    ++k;
    sel.extension_applied = true;
    ratio = ratio_of(k);
  }
  sel.selected.resize(k);
  std::iota(sel.selected.begin(), sel.selected.end(), std::size_t{0});
  sel.explained_variance_ratio = ratio;
  return sel;
}

std::vector<double> selected_eigenvalues(const Spectrum& spectrum, const ComponentSelection& sel) {
  std::vector<double> out;
  out.reserve(sel.count());
  for (std::size_t j : sel.selected) out.push_back(spectrum.eigenvalues.at(j));
  return out;
}

LoadingMatrix loadings(const Spectrum& spectrum, const ComponentSelection& sel,
                       std::vector<std::string> indicator_ids, LoadingConvention convention) {
  const std::size_t p = spectrum.size();
  if (indicator_ids.size() != p) {
    throw ValidationError("loadings: " + std::to_string(indicator_ids.size()) +
                          " indicator ids for a spectrum of size " + std::to_string(p));
  }
  LoadingMatrix l{std::move(indicator_ids), Matrix(p, sel.count()), convention};
  for (std::size_t j = 0; j < sel.count(); ++j) {
    const std::size_t comp = sel.selected[j];
    const double scale = convention == LoadingConvention::UnitEigenvector
                             ? 1.0
                             : std::sqrt(std::max(spectrum.eigenvalues[comp], 0.0));
    for (std::size_t i = 0; i < p; ++i) l.values(i, j) = scale * spectrum.eigenvectors(i, comp);
  }
  return l;
}

void write_correlation(std::ostream& out, const SymmetricMatrix& m,
                       const std::vector<std::string>& ids) {
  std::vector<std::string> header{"indicator_id"};
  header.insert(header.end(), ids.begin(), ids.end());
  csv::write_row(out, header);
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<std::string> row{ids[i]};
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(csv::fixed6(m(i, j)));
    csv::write_row(out, row);
  }
}

void write_spectrum(std::ostream& out, const Spectrum& spectrum, const ComponentSelection& sel) {
  csv::write_row(out, {"component", "eigenvalue", "explained_ratio", "cumulative_ratio", "selected"});
  const double total = spectrum.total();
  double cumulative = 0.0;
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    const double ev = spectrum.eigenvalues[j];
    cumulative += ev;
    const bool chosen = j < sel.count();
    csv::write_row(out, {std::to_string(j + 1), csv::full(ev), csv::full(ev / total),
                         csv::full(cumulative / total), chosen ? "1" : "0"});
  }
}

void write_loadings(std::ostream& out, const LoadingMatrix& l) {
  std::vector<std::string> header{"indicator_id"};
  for (std::size_t j = 0; j < l.values.cols(); ++j) header.push_back("Comp" + std::to_string(j + 1));
  csv::write_row(out, header);
  for (std::size_t i = 0; i < l.values.rows(); ++i) {
    std::vector<std::string> row{l.indicator_ids[i]};
    for (std::size_t j = 0; j < l.values.cols(); ++j) row.push_back(csv::full(l.values(i, j)));
    csv::write_row(out, row);
  }
}

std::vector<double> load_selected_eigenvalues(const std::filesystem::path& path) {
  const csv::Table table = csv::read_file(path);
  const std::vector<std::string> expected{"component", "eigenvalue", "explained_ratio",
                                          "cumulative_ratio", "selected"};
  if (table.header != expected) {
    throw ValidationError(path.string() +
                          ": header must be component,eigenvalue,explained_ratio,"
                          "cumulative_ratio,selected");
  }
  std::vector<std::string> issues;
  std::vector<double> out;
  bool gap = false;
  for (const auto& row : table.rows) {
    const std::string where = path.string() + " line " + std::to_string(row.line) + ": ";
    if (row.fields.size() != expected.size()) {
      issues.push_back(where + "wrong field count");
      continue;
    }
    auto ev = csv::parse_real(row.fields[1]);
    if (!ev) {
      issues.push_back(where + "non-numeric eigenvalue");
      continue;
    }
    if (row.fields[4] == "1") {
      if (gap) issues.push_back(where + "selected components must form a prefix");
      out.push_back(*ev);
    } else if (row.fields[4] == "0") {
      gap = true;
    } else {
      issues.push_back(where + "selected must be 0 or 1");
    }
  }
  if (out.empty()) issues.push_back(path.string() + ": no selected components");
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return out;
}

LoadingMatrix load_loadings(const std::filesystem::path& path) {
  const csv::Table table = csv::read_file(path);
  if (table.header.size() < 2 || table.header.front() != "indicator_id") {
    throw ValidationError(path.string() + ": header must be indicator_id,Comp1,...");
  }
  const std::size_t k = table.header.size() - 1;
  std::vector<std::string> issues;
  std::vector<std::string> ids;
  Matrix values(table.rows.size(), k);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::string where = path.string() + " line " + std::to_string(row.line) + ": ";
    if (row.fields.size() != k + 1) {
      issues.push_back(where + "wrong field count");
      continue;
    }
    ids.push_back(row.fields[0]);
    for (std::size_t j = 0; j < k; ++j) {
      if (auto v = csv::parse_real(row.fields[j + 1])) {
        values(i, j) = *v;
      } else {
        issues.push_back(where + "non-numeric loading in column " + table.header[j + 1]);
      }
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return LoadingMatrix{std::move(ids), std::move(values), LoadingConvention::UnitEigenvector};
}

}  // namespace smi

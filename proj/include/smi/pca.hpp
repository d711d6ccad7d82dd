#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "smi/matrix.hpp"
#include "smi/normalize.hpp"

namespace smi {

enum class Basis { Correlation, Covariance };
enum class LoadingConvention { UnitEigenvector, SqrtEigenvalueScaled };

// Dense symmetric matrix, validated on construction.
class SymmetricMatrix {
 public:
  // Throws ValidationError if `m` is not square or |m(i,j) - m(j,i)| > tol.
  explicit SymmetricMatrix(Matrix m, double tol = 1e-12);

  std::size_t size() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }
  double trace() const;
  double frobenius_norm() const;

 private:
  Matrix m_;
};

// Eigenpairs sorted by descending eigenvalue; column j of `eigenvectors`
// is the unit eigenvector of eigenvalues[j], signed so that its
// largest-magnitude entry is positive (lowest index wins ties).
struct Spectrum {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
  int sweeps = 0;           // Jacobi sweeps performed
  double off_norm = 0.0;    // off-diagonal Frobenius norm at exit

  std::size_t size() const noexcept { return eigenvalues.size(); }
  double total() const;
};

struct JacobiOptions {
  double tol = 1e-12;   // target off-diagonal Frobenius norm
  int max_sweeps = 100;
};

struct ComponentSelection {
  std::vector<std::size_t> selected;  // 0-based, always a prefix 0..k-1
  double explained_variance_ratio = 0.0;
  std::size_t threshold_count = 0;    // components with eigenvalue > threshold
  bool minimum_prefix_applied = false;  // threshold rule kept nothing
  bool extension_applied = false;       // grown past the threshold to reach the variance target

  std::size_t count() const noexcept { return selected.size(); }
};

// p x k, entry (i,j) = loading of indicator i on selected component j.
struct LoadingMatrix {
  std::vector<std::string> indicator_ids;
  Matrix values;
  LoadingConvention convention = LoadingConvention::UnitEigenvector;
};

// Requires >= 3 rows and no zero-variance column (ValidationError otherwise).
SymmetricMatrix correlation_matrix(const NormalizedMatrix& norm, Basis basis = Basis::Correlation);

// Cyclic Jacobi. Throws std::invalid_argument for tol <= 0 or max_sweeps < 1,
// NumericalError (carrying the off-diagonal norm) when the sweep cap is hit.
Spectrum eigendecompose(const SymmetricMatrix& m, JacobiOptions options = {});

// Keeps the prefix with eigenvalue > eigen_threshold (at least one component),
// then extends it until the explained ratio reaches variance_target.
ComponentSelection select_components(const Spectrum& spectrum, double eigen_threshold = 1.0,
                                     double variance_target = 0.85);

std::vector<double> selected_eigenvalues(const Spectrum& spectrum, const ComponentSelection& sel);

LoadingMatrix loadings(const Spectrum& spectrum, const ComponentSelection& sel,
                       std::vector<std::string> indicator_ids,
                       LoadingConvention convention = LoadingConvention::UnitEigenvector);

// correlation.csv: indicator_id,<ids...>
void write_correlation(std::ostream& out, const SymmetricMatrix& m,
                       const std::vector<std::string>& ids);

// spectrum.csv: component,eigenvalue,explained_ratio,cumulative_ratio,selected
void write_spectrum(std::ostream& out, const Spectrum& spectrum, const ComponentSelection& sel);

// loadings.csv: indicator_id,Comp1,...,Compk
void write_loadings(std::ostream& out, const LoadingMatrix& l);

// Reads spectrum.csv back as the eigenvalues flagged selected, in component order.
std::vector<double> load_selected_eigenvalues(const std::filesystem::path& path);
LoadingMatrix load_loadings(const std::filesystem::path& path);

}  // namespace smi

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smi/dataset.hpp"
#include "smi/matrix.hpp"

namespace smi {

// Directionally min-max normalized observations; every entry lies in [0,1].
class NormalizedMatrix {
 public:
  // Throws ValidationError if shapes disagree or any entry falls outside [0,1].
  NormalizedMatrix(std::vector<std::string> states, std::vector<std::string> indicator_ids,
                   Matrix values);

  const std::vector<std::string>& states() const noexcept { return states_; }
  const std::vector<std::string>& indicator_ids() const noexcept { return ids_; }
  const Matrix& values() const noexcept { return values_; }

 private:
  std::vector<std::string> states_;
  std::vector<std::string> ids_;
  Matrix values_;
};

// Positive: (x - min) / (max - min). Negative: (max - x) / (max - min).
// Throws DegenerateColumnError naming `indicator` when max == min.
std::vector<double> normalize_column(std::span<const double> values, Direction direction,
                                     std::string_view indicator = "<unnamed>");

// Column-wise normalize_column using each indicator's registry direction.
// Runs on the OpenMP kernel; the result is bit-identical to the serial one.
NormalizedMatrix normalize_matrix(const DataMatrix& matrix);

// normalized.csv shares the observations.csv schema. Values are written with
// 17 significant digits so downstream stages see exactly what was computed.
void write_normalized(std::ostream& out, const NormalizedMatrix& matrix);
NormalizedMatrix load_normalized(const std::filesystem::path& path);

}  // namespace smi

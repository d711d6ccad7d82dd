#include "smi/normalize.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "smi/csv.hpp"
#include "smi/error.hpp"
#include "smi/kernels.hpp"

namespace smi {

NormalizedMatrix::NormalizedMatrix(std::vector<std::string> states,
                                   std::vector<std::string> indicator_ids, Matrix values)
    : states_(std::move(states)), ids_(std::move(indicator_ids)), values_(std::move(values)) {
  std::vector<std::string> issues;
  if (values_.rows() != states_.size() || values_.cols() != ids_.size()) {
    issues.push_back("normalized matrix shape does not match its labels");
  } else {
    for (std::size_t r = 0; r < values_.rows(); ++r) {
      for (std::size_t c = 0; c < values_.cols(); ++c) {
        const double v = values_(r, c);
        if (!(v >= 0.0 && v <= 1.0)) {
          issues.push_back("normalized value at (" + states_[r] + ", " + ids_[c] +
                           ") is outside [0,1]: " + csv::full(v));
        }
      }
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

std::vector<double> normalize_column(std::span<const double> values, Direction direction,
                                     std::string_view indicator) {
  if (values.empty()) throw DegenerateColumnError({std::string(indicator)});
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) throw DegenerateColumnError({std::string(indicator)});
  const double span = hi - lo;
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = direction == Direction::Positive ? (values[i] - lo) / span : (hi - values[i]) / span;
  }
  return out;
}

NormalizedMatrix normalize_matrix(const DataMatrix& matrix) {
  const Matrix& x = matrix.values();
  const auto ranges = kernels::omp::column_ranges(x);
  std::vector<std::string> degenerate;
  std::vector<Direction> directions;
  for (std::size_t c = 0; c < x.cols(); ++c) {
    if (!(ranges[c].max > ranges[c].min)) degenerate.push_back(matrix.registry()[c].id);
    directions.push_back(matrix.registry()[c].direction);
  }
  if (!degenerate.empty()) throw DegenerateColumnError(std::move(degenerate));

  Matrix out(x.rows(), x.cols());
  kernels::omp::normalize_columns(x, directions, ranges, out);
  return NormalizedMatrix(matrix.states(), matrix.registry().ids(), std::move(out));
}

void write_normalized(std::ostream& out, const NormalizedMatrix& matrix) {
  std::vector<std::string> header{"state"};
  header.insert(header.end(), matrix.indicator_ids().begin(), matrix.indicator_ids().end());
  csv::write_row(out, header);
  for (std::size_t r = 0; r < matrix.states().size(); ++r) {
    std::vector<std::string> fields{matrix.states()[r]};
    for (double v : matrix.values().row(r)) fields.push_back(csv::full(v));
    csv::write_row(out, fields);
  }
}

NormalizedMatrix load_normalized(const std::filesystem::path& path) {
  const csv::Table table = csv::read_file(path);
  if (table.header.empty()) throw ValidationError(path.string() + ": file is empty");
  if (table.header.front() != "state") {
    throw ValidationError(path.string() + ": first column must be 'state'");
  }
  std::vector<std::string> ids(table.header.begin() + 1, table.header.end());
  std::vector<std::string> issues;
  if (ids.size() < 2) issues.push_back(path.string() + ": at least 2 indicator columns required");
  std::set<std::string> unique_ids(ids.begin(), ids.end());
  if (unique_ids.size() != ids.size()) issues.push_back(path.string() + ": duplicate column names");
  if (table.rows.size() < 3) issues.push_back(path.string() + ": at least 3 states required");
  if (!issues.empty()) throw ValidationError(std::move(issues));

  std::vector<std::string> states;
  Matrix values(table.rows.size(), ids.size());
  std::set<std::string> seen;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = path.string() + " line " + std::to_string(row.line) + ": ";
    if (row.fields.size() != ids.size() + 1) {
      issues.push_back(where + "wrong field count");
      states.push_back(row.fields.front());
      continue;
    }
    if (!seen.insert(row.fields[0]).second) issues.push_back(where + "duplicate state " + row.fields[0]);
    for (std::size_t c = 0; c < ids.size(); ++c) {
      if (auto v = csv::parse_real(row.fields[c + 1])) {
        values(r, c) = *v;
      } else {
        issues.push_back(where + "non-numeric value at (" + row.fields[0] + ", " + ids[c] + ")");
      }
    }
    states.push_back(row.fields[0]);
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return NormalizedMatrix(std::move(states), std::move(ids), std::move(values));
}

}  // namespace smi

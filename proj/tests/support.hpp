#pragma once

// Shared helpers for the test binaries: scratch directories, fixture
// writers, seeded generators and the published ranking table.

#include <array>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "smi/dataset.hpp"
#include "smi/matrix.hpp"
#include "smi/scoring.hpp"

namespace smi::test {

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::mt19937_64 rng{std::random_device{}()};
    path_ = std::filesystem::temp_directory_path() /
            ("smi-" + tag + "-" + std::to_string(rng() % 1000000000ULL));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

  std::filesystem::path write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::filesystem::path data_dir() { return SMI_DATA_DIR; }
inline std::string cli_path() { return SMI_CLI_PATH; }

// Runs the CLI with stderr/stdout discarded; returns the exit code.
inline int run_cli(const std::string& args) {
  const std::string cmd = "SMI_NO_COLOR=1 \"" + cli_path() + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double lo = -1.0,
                            double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (double& v : m.data()) v = u(rng);
  return m;
}

// Entries U[-1,1], symmetrized as (A + A^T)/2.
inline Matrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
  Matrix a = random_matrix(rng, n, n);
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
  }
  return s;
}

inline std::shared_ptr<const IndicatorRegistry> make_registry(const std::vector<Direction>& dirs) {
  std::vector<IndicatorSpec> specs;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    specs.push_back({"I" + std::to_string(i + 1), "indicator " + std::to_string(i + 1),
                     kAllPillars[i % kAllPillars.size()], dirs[i]});
  }
  return std::make_shared<const IndicatorRegistry>(std::move(specs));
}

inline std::vector<std::string> state_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("S" + std::to_string(100 + i));
  return out;
}

struct PublishedRow {
  const char* state;
  double smi;
  Category category;
  std::size_t rank;
};

// Published ranking table: 22 states, 3-decimal scores, labels and ranks as printed.
inline const std::array<PublishedRow, 22>& published_table() {
  static const std::array<PublishedRow, 22> rows{{
      {"Andhra Pradesh", 0.252, Category::Low, 19},
      {"Assam", 0.352, Category::Medium, 12},
      {"Bihar", 0.260, Category::Low, 17},
      {"Chhattisgarh", 0.195, Category::Low, 22},
      {"Delhi", 0.853, Category::High, 1},
      {"Gujarat", 0.321, Category::Medium, 13},
      {"Haryana", 0.548, Category::Medium, 6},
      {"Himachal Pradesh", 0.642, Category::High, 3},
      {"J and K", 0.602, Category::High, 5},
      {"Jharkhand", 0.282, Category::Low, 14},
      {"Karnataka", 0.360, Category::Medium, 11},
      {"Kerala", 0.746, Category::High, 2},
      {"Madhya Pradesh", 0.213, Category::Low, 20},
      {"Maharashtra", 0.513, Category::Medium, 8},
      {"Odisha", 0.211, Category::Low, 21},
      {"Punjab", 0.522, Category::Medium, 7},
      {"Rajasthan", 0.260, Category::Low, 16},
      {"Tamil Nadu", 0.450, Category::Medium, 9},
      {"Telangana", 0.403, Category::Medium, 10},
      {"Uttar Pradesh", 0.275, Category::Medium, 15},
      {"Uttarakhand", 0.633, Category::High, 4},
      {"West Bengal", 0.255, Category::Low, 18},
  }};
  return rows;
}

inline ScoreMap published_scores() {
  ScoreMap m;
  for (const auto& r : published_table()) m.emplace(r.state, r.smi);
  return m;
}

}  // namespace smi::test

#include <doctest.h>

#include <algorithm>
#include <random>

#include "smi/error.hpp"
#include "smi/kernels.hpp"
#include "smi/normalize.hpp"
#include "support.hpp"

using namespace smi;

TEST_CASE("normalize_column examples") {
  CHECK(normalize_column(std::vector<double>{2, 4, 6}, Direction::Positive) ==
        std::vector<double>{0.0, 0.5, 1.0});
  CHECK(normalize_column(std::vector<double>{10, 20}, Direction::Negative) ==
        std::vector<double>{1.0, 0.0});
  try {
    normalize_column(std::vector<double>{5, 5, 5}, Direction::Positive, "LIFE_EXP");
    FAIL("expected DegenerateColumnError");
  } catch (const DegenerateColumnError& e) {
    CHECK(e.indicators() == std::vector<std::string>{"LIFE_EXP"});
    CHECK(std::string(e.what()).find("LIFE_EXP") != std::string::npos);
  }
}

TEST_CASE("ties at the extremes map to exactly 0 and 1") {
  const auto out = normalize_column(std::vector<double>{3, 1, 3, 1, 2}, Direction::Positive);
  CHECK(out == std::vector<double>{1, 0, 1, 0, 0.5});
}

TEST_CASE("normalize_matrix") {
  SUBCASE("one positive and one negative indicator at their endpoints") {
    auto reg = test::make_registry({Direction::Positive, Direction::Negative});
    Matrix v(3, 2);
    v(0, 0) = 1; v(0, 1) = 1;
    v(1, 0) = 3; v(1, 1) = 3;
    v(2, 0) = 2; v(2, 1) = 2;
    const auto n = normalize_matrix(DataMatrix(test::state_names(3), v, reg));
    CHECK(n.values()(0, 0) == 0.0);
    CHECK(n.values()(0, 1) == 1.0);
    CHECK(n.values()(1, 0) == 1.0);
    CHECK(n.values()(1, 1) == 0.0);
  }

  SUBCASE("constant column propagates the degenerate error") {
    auto reg = test::make_registry({Direction::Positive, Direction::Negative});
    Matrix v(3, 2, 4.0);
    v(0, 0) = 1;
    CHECK_THROWS_AS(normalize_matrix(DataMatrix(test::state_names(3), v, reg)), DegenerateColumnError);
  }

  SUBCASE("idempotent on positive columns") {
    std::mt19937_64 rng(3);
    auto reg = test::make_registry(std::vector<Direction>(4, Direction::Positive));
    const DataMatrix m(test::state_names(6), test::random_matrix(rng, 6, 4, -5, 5), reg);
    const auto once = normalize_matrix(m);
    const auto twice = normalize_matrix(DataMatrix(once.states(), once.values(), reg));
    CHECK(once.values() == twice.values());
  }

  SUBCASE("shipped fixture: every column spans exactly [0,1]") {
    auto reg = std::make_shared<const IndicatorRegistry>(
        load_indicator_metadata(test::data_dir() / "indicators.csv"));
    const auto data = load_observations(test::data_dir() / "observations.csv", reg);
    const auto n = normalize_matrix(data);
    const Matrix& x = n.values();
    REQUIRE(x.rows() * x.cols() == 682);
    for (std::size_t c = 0; c < x.cols(); ++c) {
      const auto col = x.column(c);
      CHECK(*std::min_element(col.begin(), col.end()) == 0.0);
      CHECK(*std::max_element(col.begin(), col.end()) == 1.0);
    }
    // Spot columns against the formula applied by hand to the raw fixture.
    for (std::size_t c : {0u, 1u, 30u}) {
      const auto raw = data.values().column(c);
      const double lo = *std::min_element(raw.begin(), raw.end());
      const double hi = *std::max_element(raw.begin(), raw.end());
      for (std::size_t r = 0; r < raw.size(); ++r) {
        const double expect = reg->specs()[c].direction == Direction::Positive
                                  ? (raw[r] - lo) / (hi - lo)
                                  : (hi - raw[r]) / (hi - lo);
        CHECK(x(r, c) == doctest::Approx(expect).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("NormalizedMatrix rejects out-of-range entries") {
  Matrix v(3, 2, 0.5);
  v(2, 1) = 1.0000001;
  CHECK_THROWS_AS(NormalizedMatrix(test::state_names(3), {"A", "B"}, v), ValidationError);
}

TEST_CASE("normalized.csv round-trips exactly") {
  std::mt19937_64 rng(11);
  auto reg = test::make_registry({Direction::Positive, Direction::Negative, Direction::Positive});
  const auto n = normalize_matrix(DataMatrix(test::state_names(7), test::random_matrix(rng, 7, 3), reg));
  test::TempDir dir("norm");
  std::ostringstream out;
  write_normalized(out, n);
  const auto back = load_normalized(dir.write("normalized.csv", out.str()));
  CHECK(back.values() == n.values());
  CHECK(back.states() == n.states());
  CHECK(back.indicator_ids() == n.indicator_ids());
}

TEST_CASE("monotonicity: positive keeps order, negative reverses it") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-100, 100);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(9);
    for (double& v : x) v = u(rng);
    const auto pos = normalize_column(x, Direction::Positive);
    const auto neg = normalize_column(x, Direction::Negative);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[i] < x[j]) {
          CHECK(pos[i] <= pos[j]);
          CHECK(neg[i] >= neg[j]);
        }
      }
    }
  }
}

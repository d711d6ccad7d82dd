#include <doctest.h>

#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "smi/csv.hpp"
#include "smi/dataset.hpp"
#include "smi/error.hpp"
#include "support.hpp"

using namespace smi;
using smi::test::TempDir;

namespace {

const char* kMetaHeader = "indicator_id,name,pillar,direction\n";

std::string issues_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("csv parser handles quotes, CRLF, BOM and blank lines") {
  const auto t = csv::parse("\xEF\xBB\xBF" "a,b\r\n\"x, y\",\"he said \"\"hi\"\"\"\r\n\r\n1,2");
  REQUIRE(t.header == std::vector<std::string>{"a", "b"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].fields == std::vector<std::string>{"x, y", "he said \"hi\""});
  CHECK(t.rows[0].line == 2);
  CHECK(t.rows[1].line == 4);
  CHECK(csv::parse("").header.empty());
  CHECK_THROWS_AS(csv::parse("a\n\"open"), ValidationError);
}

TEST_CASE("parse_real accepts finite decimals only") {
  CHECK(csv::parse_real("1.5") == 1.5);
  CHECK(csv::parse_real(" -2e3 ") == -2000.0);
  CHECK(csv::parse_real("+0.25") == 0.25);
  CHECK_FALSE(csv::parse_real("NA"));
  CHECK_FALSE(csv::parse_real("nan"));
  CHECK_FALSE(csv::parse_real("inf"));
  CHECK_FALSE(csv::parse_real("1.5x"));
  CHECK_FALSE(csv::parse_real(""));
  CHECK(csv::fixed6(-1e-9) == "0.000000");
}

TEST_CASE("pillar and direction parsing") {
  CHECK(parse_pillar("health") == Pillar::Health);
  CHECK(parse_pillar("Education Quality and Equity") == Pillar::EducationQualityEquity);
  CHECK_FALSE(parse_pillar("Sports"));
  CHECK(parse_direction("NEGATIVE") == Direction::Negative);
  CHECK_FALSE(parse_direction("up"));
  for (Pillar p : kAllPillars) CHECK(parse_pillar(to_string(p)) == p);
}

TEST_CASE("load_indicator_metadata") {
  TempDir dir("meta");

  SUBCASE("shipped 31-indicator registry") {
    const auto reg = load_indicator_metadata(test::data_dir() / "indicators.csv");
    CHECK(reg.size() == 31);
    CHECK(reg[0].id == "LIFE_EXP");
    CHECK(reg[1].direction == Direction::Negative);
    std::set<Pillar> pillars;
    for (const auto& s : reg.specs()) pillars.insert(s.pillar);
    CHECK(pillars.size() == 10);
  }

  SUBCASE("single row loads; downstream matrix needs two indicators") {
    const auto meta = dir.write("m.csv", std::string(kMetaHeader) +
                                             "LIFE_EXP,Life Expectancy,Health,positive\n");
    auto reg = std::make_shared<const IndicatorRegistry>(load_indicator_metadata(meta));
    CHECK(reg->size() == 1);
    const auto obs = dir.write("o.csv", "state,LIFE_EXP\nA,1\nB,2\nC,3\n");
    const std::string msg = issues_of([&] { load_observations(obs, reg); });
    CHECK(msg.find("at least 2 indicators") != std::string::npos);
  }

  SUBCASE("duplicate id names the id and both rows") {
    const auto meta = dir.write("m.csv", std::string(kMetaHeader) +
                                             "A,a,Health,positive\nB,b,Health,positive\n"
                                             "A,again,Health,negative\n");
    const std::string msg = issues_of([&] { load_indicator_metadata(meta); });
    CHECK(msg.find("duplicate indicator id A") != std::string::npos);
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("line 4") != std::string::npos);
  }

  SUBCASE("unknown pillar and direction are both reported with row numbers") {
    const auto meta = dir.write("m.csv", std::string(kMetaHeader) +
                                             "A,a,Sports,positive\nB,b,Health,sideways\n");
    try {
      load_indicator_metadata(meta);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      REQUIRE(e.issues().size() == 2);
      CHECK(e.issues()[0].find("line 2") != std::string::npos);
      CHECK(e.issues()[0].find("unknown pillar") != std::string::npos);
      CHECK(e.issues()[1].find("line 3") != std::string::npos);
      CHECK(e.issues()[1].find("unknown direction") != std::string::npos);
    }
  }

  SUBCASE("empty file") {
    const auto meta = dir.write("m.csv", "");
    CHECK(issues_of([&] { load_indicator_metadata(meta); }).find("empty") != std::string::npos);
  }
}

TEST_CASE("load_observations") {
  TempDir dir("obs");
  auto reg = std::make_shared<const IndicatorRegistry>(
      load_indicator_metadata(test::data_dir() / "indicators.csv"));

  SUBCASE("shipped 22x31 fixture") {
    const auto m = load_observations(test::data_dir() / "observations.csv", reg);
    CHECK(m.states().size() == 22);
    CHECK(m.values().cols() == 31);
    CHECK(m.states().front() == "Andhra Pradesh");
  }

  auto small = std::make_shared<const IndicatorRegistry>(std::vector<IndicatorSpec>{
      {"X", "x", Pillar::Health, Direction::Positive}, {"Y", "y", Pillar::FairWages, Direction::Negative}});

  SUBCASE("header missing a registry id lists it") {
    const auto obs = dir.write("o.csv", "state,X\nA,1\nB,2\nC,3\n");
    const std::string msg = issues_of([&] { load_observations(obs, small); });
    CHECK(msg.find("missing columns: Y") != std::string::npos);
  }

  SUBCASE("extra and reordered columns") {
    CHECK(issues_of([&] { load_observations(dir.write("o.csv", "state,X,Y,Z\nA,1,2,3\n"), small); })
              .find("extra columns: Z") != std::string::npos);
    CHECK(issues_of([&] { load_observations(dir.write("o.csv", "state,Y,X\nA,1,2\n"), small); })
              .find("registry order") != std::string::npos);
  }

  SUBCASE("NA cell reported at (state, indicator); all problems listed") {
    const auto obs = dir.write("o.csv", "state,X,Y\nA,1,NA\nB,oops,2\nB,3,4\n");
    try {
      load_observations(obs, small);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      const std::string all = e.what();
      CHECK(all.find("(A, Y)") != std::string::npos);
      CHECK(all.find("(B, X)") != std::string::npos);
      CHECK(all.find("duplicate state B") != std::string::npos);
    }
  }

  SUBCASE("fewer than three states") {
    const auto obs = dir.write("o.csv", "state,X,Y\nA,1,2\nB,2,3\n");
    CHECK(issues_of([&] { load_observations(obs, small); }).find("at least 3 states") !=
          std::string::npos);
  }

  SUBCASE("write then reload is exact and order preserving") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 1e3);
    for (int trial = 0; trial < 50; ++trial) {
      Matrix v(5, 2);
      for (double& x : v.data()) x = g(rng);
      DataMatrix m(test::state_names(5), v, small);
      std::ostringstream out;
      write_observations(out, m);
      const auto path = dir.write("rt.csv", out.str());
      const DataMatrix back = load_observations(path, small);
      CHECK(back.states() == m.states());
      CHECK(back.values() == m.values());
    }
  }
}

TEST_CASE("load_gini") {
  TempDir dir("gini");
  CHECK(load_gini(dir.write("g.csv", "state,gini\nDelhi,0.25\n")).find("Delhi") == 0.25);
  CHECK(issues_of([&] { load_gini(dir.write("g.csv", "state,gini\nX,1.3\n")); })
            .find("outside [0,1]") != std::string::npos);
  CHECK(issues_of([&] { load_gini(dir.write("g.csv", "state,gini\nX,0.3\nX,0.4\n")); })
            .find("duplicate state X") != std::string::npos);
  CHECK(load_gini(dir.write("g.csv", "")).empty());
  CHECK(load_gini(test::data_dir() / "gini.csv").size() == 20);
}

TEST_CASE("validate flags constant columns as fatal") {
  auto reg = test::make_registry({Direction::Positive, Direction::Positive});
  Matrix v(3, 2);
  const double a[] = {2, 4, 6};
  for (int r = 0; r < 3; ++r) {
    v(r, 0) = a[r];
    v(r, 1) = 5;
  }
  const auto report = validate(DataMatrix(test::state_names(3), v, reg));
  CHECK(report.columns[0].min == 2);
  CHECK(report.columns[0].max == 6);
  CHECK_FALSE(report.columns[0].constant);
  CHECK(report.columns[1].constant);
  CHECK(report.fatal_indicators() == std::vector<std::string>{"I2"});

  auto full_reg = std::make_shared<const IndicatorRegistry>(
      load_indicator_metadata(test::data_dir() / "indicators.csv"));
  CHECK_FALSE(validate(load_observations(test::data_dir() / "observations.csv", full_reg)).has_fatal());
}

TEST_CASE("DataMatrix rejects non-finite values") {
  auto reg = test::make_registry({Direction::Positive, Direction::Positive});
  Matrix v(3, 2, 1.0);
  v(1, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(DataMatrix(test::state_names(3), v, reg), ValidationError);
}

#include <doctest.h>

#include <algorithm>
#include <random>

#include "smi/analysis.hpp"
#include "smi/error.hpp"
#include "support.hpp"

using namespace smi;

TEST_CASE("classify_inequality") {
  CHECK(classify_inequality(0.29) == InequalityClass::LowInequality);
  CHECK(classify_inequality(0.31) == InequalityClass::HighInequality);
  CHECK(classify_inequality(0.30) == InequalityClass::HighInequality);
  CHECK(classify_inequality(0.40, 0.45) == InequalityClass::LowInequality);
}

TEST_CASE("scenario_table") {
  std::map<std::string, Category> cats{{"Delhi", Category::High},
                                       {"J and K", Category::High},
                                       {"Kerala", Category::High},
                                       {"Bihar", Category::Low},
                                       {"Telangana", Category::Medium}};
  const GiniTable gini({{"Delhi", 0.28}, {"J and K", 0.25}, {"Kerala", 0.38}, {"Bihar", 0.21}});
  std::vector<std::string> states;
  for (const auto& [s, c] : cats) states.push_back(s);

  SUBCASE("cells and unclassified") {
    const auto t = scenario_table(cats, classify_states(states, gini));
    CHECK(t.cell(Category::High, InequalityClass::LowInequality) == std::set<std::string>{"Delhi", "J and K"});
    CHECK(t.cell(Category::High, InequalityClass::HighInequality) == std::set<std::string>{"Kerala"});
    CHECK(t.cell(Category::Low, InequalityClass::LowInequality) == std::set<std::string>{"Bihar"});
    CHECK(t.unclassified == std::set<std::string>{"Telangana"});
    CHECK(t.cells.size() == 6);
  }

  SUBCASE("empty gini table leaves every cell empty") {
    const auto t = scenario_table(cats, classify_states(states, GiniTable{}));
    for (const auto& [key, members] : t.cells) CHECK(members.empty());
    CHECK(t.unclassified.size() == cats.size());
  }

  SUBCASE("cells partition the states and ignore input order") {
    std::mt19937_64 rng(1);
    std::vector<std::string> shuffled = states;
    for (int k = 0; k < 10; ++k) {
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      const auto t = scenario_table(cats, classify_states(shuffled, gini));
      std::size_t total = t.unclassified.size();
      std::set<std::string> seen(t.unclassified.begin(), t.unclassified.end());
      for (const auto& [key, members] : t.cells) {
        total += members.size();
        seen.insert(members.begin(), members.end());
      }
      CHECK(total == cats.size());
      CHECK(seen.size() == cats.size());
      CHECK(scenarios_json(t) == scenarios_json(scenario_table(cats, classify_states(states, gini))));
    }
  }
}

TEST_CASE("scatter_data") {
  const GiniTable gini({{"Delhi", 0.25}, {"Assam", 0.24}});
  const auto d = scatter_data({{"Delhi", 0.853}, {"Telangana", 0.403}, {"Assam", 0.352}}, gini);
  REQUIRE(d.points.size() == 2);
  CHECK(d.points[0].state == "Assam");
  CHECK(d.points[1].state == "Delhi");
  CHECK(d.points[1].gini == 0.25);
  CHECK(d.points[1].smi == 0.853);
  CHECK(d.omitted == std::vector<std::string>{"Telangana"});
  CHECK(scatter_data({}, gini).points.empty());
}

TEST_CASE("pillar_scores") {
  IndicatorRegistry reg({{"H1", "h1", Pillar::Health, Direction::Positive},
                         {"H2", "h2", Pillar::Health, Direction::Positive},
                         {"W1", "w1", Pillar::FairWages, Direction::Positive},
                         {"S1", "s1", Pillar::SocialProtection, Direction::Positive}});
  Matrix x(3, 4);
  const double vals[3][4] = {{1, 1, 0.2, 0.5}, {1, 0, 0.9, 0.5}, {0, 0.5, 0.1, 0.5}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 4; ++c) x(r, c) = vals[r][c];
  const NormalizedMatrix norm(test::state_names(3), reg.ids(), x);

  SUBCASE("weighted means per pillar with best flags") {
    const WeightVector w(reg.ids(), {3, 1, 2, 0.5});
    const auto b = pillar_scores(norm, w, reg);
    REQUIRE(b.scores.size() == 9);
    CHECK(b.scores[0].pillar == Pillar::Health);
    CHECK(b.scores[0].value == 1.0);     // all ones
    CHECK(b.scores[3].value == 0.75);    // X = [1,0], W = [3,1]
    CHECK(b.scores[0].is_best);          // ties with nobody above 1.0
    CHECK(b.scores[4].is_best);          // S101 has the best fair-wage value
    // Social protection is tied at 0.5 for everyone: earliest name wins.
    CHECK(b.scores[2].is_best);
    CHECK_FALSE(b.scores[5].is_best);
    CHECK(b.pillar_weights.at(Pillar::Health) == 4.0);
  }

  SUBCASE("zero-weight pillar is skipped with a warning") {
    const WeightVector w(reg.ids(), {3, 1, 0, 0.5});
    const auto b = pillar_scores(norm, w, reg);
    CHECK(b.scores.size() == 6);
    REQUIRE(b.warnings.size() == 1);
    CHECK(b.warnings[0].find("Fair Wages") != std::string::npos);
  }

  SUBCASE("pillar scores decompose the composite index") {
    const WeightVector w(reg.ids(), {0.7, 1.3, 2.1, 0.4});
    const auto b = pillar_scores(norm, w, reg);
    const auto smi = composite_index(norm, w);
    for (std::size_t r = 0; r < 3; ++r) {
      double num = 0.0, den = 0.0;
      for (std::size_t k = 0; k < 3; ++k) {
        const auto& ps = b.scores[r * 3 + k];
        num += b.pillar_weights.at(ps.pillar) * ps.value;
        den += b.pillar_weights.at(ps.pillar);
        CHECK(ps.value >= 0.0);
        CHECK(ps.value <= 1.0);
      }
      CHECK(std::abs(num / den - smi.at(norm.states()[r])) < 1e-12);
    }
  }
}

#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "pref/experiment.hpp"
#include "support.hpp"

using namespace pref;

namespace {

ExperimentSpec small_spec() {
  ExperimentSpec spec;
  spec.strategy = ObserverStrategy::Hubs;
  spec.q_grid = {0.1, 0.3};
  spec.rd_grid = {0.0, 0.5, 1.0};
  spec.beta_grid = {0.5};
  spec.epsilon_grid = {0.1, 0.3};
  spec.localize.samples = 2000;
  spec.jordan = JordanMode::Rank;
  spec.trials = 12;
  spec.seed = 17;
  return spec;
}

bool same_rows(const TrialRow& a, const TrialRow& b) {
  return a.q == b.q && a.rd == b.rd && a.beta == b.beta && a.epsilon == b.epsilon && a.trial == b.trial &&
         a.source == b.source && a.outbreak == b.outbreak && a.retries == b.retries &&
         a.primary_size == b.primary_size && a.final_size == b.final_size && a.phi == b.phi &&
         a.estimate == b.estimate && a.error_distance == b.error_distance && a.jordan_size == b.jordan_size;
}

}  // namespace

TEST_CASE("grid layout and soundness") {
  auto g = LabeledGraph::with_numeric_labels(testing::random_graph(800, 2400, 3));
  auto spec = small_spec();
  auto result = run_experiment(g, spec);
  CHECK(result.rows.size() == 2 * 2 * 3 * 12);
  CHECK(result.aggregates.size() == 2 * 2 * 3);
  for (const auto& row : result.rows) {
    CHECK(row.source_in_primary);
    CHECK(row.final_size <= row.primary_size);
    CHECK(row.phi == doctest::Approx(static_cast<double>(row.final_size) / 800.0));
    CHECK(row.outbreak >= row.epsilon);
    CHECK(row.jordan_size.has_value());
  }
  for (const auto& agg : result.aggregates) {
    CHECK(agg.trials == 12);
    CHECK(agg.soundness == doctest::Approx(1.0));
    CHECK(agg.ci95_phi >= 0.0);
  }
}

TEST_CASE("results do not depend on the thread count") {
  auto g = LabeledGraph::with_numeric_labels(testing::random_graph(600, 1800, 4));
  auto spec = small_spec();
  spec.strategy = ObserverStrategy::Random;
  spec.rd_mode = DirectionalMode::Random;
  auto one = run_experiment(g, spec);
  spec.threads = 4;
  auto four = run_experiment(g, spec);
  REQUIRE(one.rows.size() == four.rows.size());
  for (std::size_t i = 0; i < one.rows.size(); ++i) CHECK(same_rows(one.rows[i], four.rows[i]));
  std::ostringstream a, b;
  write_csv(a, one, g);
  write_csv(b, four, g);
  CHECK(a.str() == b.str());
}

TEST_CASE("every node an observer leaves nothing to localize") {
  auto g = LabeledGraph::with_numeric_labels(make_grid(6, 6));
  ExperimentSpec spec;
  spec.strategy = ObserverStrategy::Hubs;
  spec.q_grid = {1.0};
  spec.rd_grid = {0.0};
  spec.epsilon_grid = {0.05};
  spec.trials = 5;
  spec.localize.samples = 100;
  auto result = run_experiment(g, spec);
  for (const auto& row : result.rows) {
    CHECK(row.primary_size == 1);
    CHECK(row.final_size == 1);
    CHECK(row.source_in_final);
  }
}

TEST_CASE("directional observers never enlarge the candidate set") {
  auto g = LabeledGraph::with_numeric_labels(testing::random_graph(800, 2400, 5));
  auto spec = small_spec();
  spec.rd_grid = {0.0, 1.0};
  spec.rd_mode = DirectionalMode::Importance;
  spec.jordan = JordanMode::Off;
  auto result = run_experiment(g, spec);
  for (std::size_t i = 0; i + 1 < result.rows.size(); i += 2) {
    REQUIRE(result.rows[i].rd == 0.0);
    REQUIRE(result.rows[i + 1].rd == 1.0);
    CHECK(result.rows[i].source == result.rows[i + 1].source);
    CHECK(result.rows[i + 1].primary_size <= result.rows[i].primary_size);
  }
}

TEST_CASE("CSV output") {
  auto g = LabeledGraph::with_numeric_labels(testing::random_graph(300, 900, 6));
  auto spec = small_spec();
  spec.trials = 3;
  auto result = run_experiment(g, spec);
  std::ostringstream out;
  write_csv(out, result, g);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  std::string expected;
  for (const auto& c : csv_columns()) expected += (expected.empty() ? "" : ",") + c;
  CHECK(header == expected);
  CHECK(header.rfind("network,strategy,q,rd,model,beta,epsilon,trial,source", 0) == 0);
  std::size_t count = 0;
  std::string line;
  while (std::getline(lines, line)) {
    ++count;
    CHECK(std::count(line.begin(), line.end(), ',') == std::count(header.begin(), header.end(), ','));
  }
  CHECK(count == result.rows.size());

  std::ostringstream summary;
  write_summary_csv(summary, result);
  CHECK(summary.str().rfind("q,rd,beta,epsilon,trials,mean_phi,ci95_phi", 0) == 0);
  auto j = to_json(result, g);
  CHECK(j.at("rows").size() == result.rows.size());
  CHECK(j.at("sequence").at("length") == 300);
}

TEST_CASE("specification validation") {
  auto g = LabeledGraph::with_numeric_labels(make_path(10));
  auto bad = [&](auto mutate) {
    auto spec = small_spec();
    mutate(spec);
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  };
  bad([](ExperimentSpec& s) { s.q_grid.clear(); });
  bad([](ExperimentSpec& s) { s.q_grid = {1.5}; });
  bad([](ExperimentSpec& s) { s.rd_grid = {-0.1}; });
  bad([](ExperimentSpec& s) { s.epsilon_grid = {0.0}; });
  bad([](ExperimentSpec& s) { s.trials = 0; });
  bad([](ExperimentSpec& s) { s.threads = 0; });
  bad([](ExperimentSpec& s) { s.beta_grid = {1.2}; });
  bad([](ExperimentSpec& s) { s.strategy = ObserverStrategy::External; });
  CHECK(parse_strategy("hubs") == ObserverStrategy::Hubs);
  CHECK(to_string(ObserverStrategy::PrEF) == "pref");
  CHECK(parse_jordan_mode("matched") == JordanMode::Matched);
  CHECK(parse_directional_mode("importance") == DirectionalMode::Importance);
  CHECK_THROWS_AS(parse_strategy("best"), std::invalid_argument);
}

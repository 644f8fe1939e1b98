#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <sstream>

#include "vpt/datasets.hpp"
#include "vpt/error.hpp"

using namespace vpt;

namespace {

std::string csv(const Table& t) {
  std::ostringstream os;
  write_csv(t, os);
  return os.str();
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);)
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

double col(const Table& t, std::size_t row, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    if (t.columns[i] == name) return std::get<double>(t.rows[row][i]);
  FAIL("no column " << name);
  return 0;
}

RunConfig small(int points) {
  RunConfig c;
  c.points = points;
  return c;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.625, 6.694220850500332, 1e-300, 123456789.0}) {
    const auto s = format_number(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(-2.625) == "-2.625");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("coefficient table") {
  const auto t = coefficients_table(5);
  const auto lines = data_lines(csv(t));
  REQUIRE(lines.size() == 7);
  CHECK(lines[0] == "n,rational,decimal");
  CHECK(lines[3] == "2,-21/8,-2.625");
  CHECK(lines[6] == "5,916731/256,3580.98046875");
  CHECK(data_lines(csv(coefficients_table(0)))[1] == "0,1/2,0.5");
}

TEST_CASE("JSON mirrors the CSV fields") {
  const auto t = coefficients_table(3);
  std::ostringstream os;
  write_json(t, os);
  const auto j = nlohmann::json::parse(os.str());
  REQUIRE(j["rows"].size() == 4);
  CHECK(j["columns"] == nlohmann::json({"n", "rational", "decimal"}));
  CHECK(j["rows"][2]["rational"] == "-21/8");
  CHECK(j["rows"][2]["decimal"].get<double>() == -2.625);
  CHECK(j["rows"][2]["n"].get<int>() == 2);
  Table nan_table;
  nan_table.columns = {"x"};
  nan_table.rows = {{std::nan("")}};
  std::ostringstream n;
  write_json(nan_table, n);
  CHECK(nlohmann::json::parse(n.str())["rows"][0]["x"].is_null());
}

TEST_CASE("outputs are deterministic") {
  auto cfg = small(7);
  CHECK(csv(resummation_table(cfg)) == csv(resummation_table(cfg)));
  CHECK(csv(figure_table(4, small(5))) == csv(figure_table(4, small(5))));
}

TEST_CASE("figure 1 limits") {
  RunConfig cfg;
  cfg.g_min = 1e-4;
  cfg.g_max = 1000.0;
  cfg.points = 5;
  const auto t = figure_table(1, cfg);
  REQUIRE(t.rows.size() == 5);
  CHECK(col(t, 0, "W1_ratio") == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(col(t, 0, "Wbar1_ratio") == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(col(t, 4, "W1_ratio") == doctest::Approx(1.02).epsilon(2e-3));
  CHECK(col(t, 4, "g_reduced") == 1000.0);
}

TEST_CASE("figure 2 reduced imaginary part tends to one at weak coupling") {
  RunConfig cfg;
  cfg.g_min = -0.05;
  cfg.g_max = -0.004;
  cfg.points = 4;
  const auto t = figure_table(2, cfg);
  for (std::size_t i = 0; i < t.rows.size(); ++i) CHECK(col(t, i, "r_Wbar1") == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(col(t, 3, "r_W1") == 0.0);  // inside the real window of W1
}

TEST_CASE("figure datasets have their documented shape") {
  for (int id = 1; id <= 5; ++id) {
    const auto t = figure_table(id, small(4));
    CHECK(t.rows.size() == 4);
    CHECK_FALSE(t.notes.empty());
    for (const auto& r : t.rows) CHECK(r.size() == t.columns.size());
  }
  const auto neg = figure_table(5, small(4));
  CHECK(col(neg, 0, "g_reduced") == -1.0);
  CHECK(col(neg, 3, "g_reduced") == -0.25);  // open upper end
  for (std::size_t i = 0; i < 4; ++i) CHECK(col(figure_table(4, small(4)), i, "im_reference") < 0.0);
}

TEST_CASE("frequency scaling of datasets") {
  auto a = small(4), b = small(4);
  b.omega = 2.0;
  const auto ta = figure_table(3, a), tb = figure_table(3, b);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(col(tb, i, "W3_ratio") == doctest::Approx(col(ta, i, "W3_ratio")).epsilon(1e-10));
    CHECK(col(tb, i, "Wbar3_ratio") == doctest::Approx(col(ta, i, "Wbar3_ratio")).epsilon(1e-8));
  }
}

TEST_CASE("iteration table") {
  RunConfig cfg;
  const auto s = PerturbationSeries::anharmonic_oscillator(4);
  const auto t = iteration_table(fixed_point_cutoff(1, s, DiscontinuityModel::anharmonic_oscillator()));
  CHECK(t.columns.size() == 8);
  CHECK(std::get<long long>(t.rows[0][0]) == 0);
  CHECK(col(t, t.rows.size() - 1, "cutoff") == doctest::Approx(0.0661475885).epsilon(1e-8));
}

TEST_CASE("invalid requests") {
  CHECK_THROWS_AS(figure_table(0, RunConfig{}), DomainError);
  CHECK_THROWS_AS(figure_table(6, RunConfig{}), DomainError);
  RunConfig bad;
  bad.g_min = 2.0;
  bad.g_max = 1.0;
  CHECK_THROWS_AS(resummation_table(bad), DomainError);
  bad = RunConfig{};
  bad.points = 1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = RunConfig{};
  bad.corrections = 9;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  RunConfig positive;
  positive.g_min = 0.1;
  positive.g_max = 1.0;
  CHECK_THROWS_AS(figure_table(2, positive), DomainError);
}

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "streamlens/core.hpp"
#include "streamlens/error.hpp"
#include "streamlens/io.hpp"

using namespace streamlens;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "streamlens_test_core";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

} // namespace

TEST_CASE("time series rejects invalid construction") {
  CHECK_THROWS_AS(TimeSeries(Eigen::VectorXd()), Error);
  CHECK_THROWS_AS(TimeSeries(Eigen::VectorXd::Ones(3), 0.0, 0.0), Error);
  Eigen::VectorXd bad = Eigen::VectorXd::Ones(3);
  bad[1] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(TimeSeries{bad}, Error);
  const TimeSeries ts(Eigen::VectorXd::LinSpaced(5, 0, 4), 10.0, 0.5, "x");
  CHECK(ts.time_at(4) == doctest::Approx(12.0));
  CHECK(ts.slice(1, 3).start() == doctest::Approx(10.5));
  CHECK_THROWS_AS(ts.slice(3, 3), Error);
}

TEST_CASE("bin_events counts per bin") {
  const TimeSeries b = bin_events({{0.5, 1.5, 1.7}, 0.0, 2.0}, 1.0);
  REQUIRE(b.size() == 2);
  CHECK(b.values()[0] == 1.0);
  CHECK(b.values()[1] == 2.0);
  CHECK_THROWS_WITH_AS(bin_events({{}, 0.0, 2.0}, 1.0), "no events", Error);
  CHECK_THROWS_WITH_AS(bin_events({{1.0, 0.5}, 0.0, 2.0}, 1.0), "unsorted events", Error);
  CHECK_THROWS_AS(bin_events({{3.0}, 0.0, 2.0}, 1.0), Error);
}

TEST_CASE("bin_events matches a direct count") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> t(10000);
    for (auto& v : t) v = u(rng);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    const TimeSeries b = bin_events({t, 0.0, 100.0}, 1.0);
    REQUIRE(b.size() == 100);
    std::vector<double> counts(100, 0.0);
    for (double v : t) counts[static_cast<std::size_t>(std::floor(v))] += 1;
    for (int i = 0; i < 100; ++i) CHECK(b.values()[i] == counts[static_cast<std::size_t>(i)]);
    CHECK(b.values().sum() == doctest::Approx(static_cast<double>(t.size())));
  }
}

TEST_CASE("an event at the span end lands in the last bin") {
  const TimeSeries b = bin_events({{0.1, 2.0}, 0.0, 2.0}, 1.0);
  CHECK(b.values()[1] == 1.0);
}

TEST_CASE("profile accumulates, with optional centering") {
  const TimeSeries p = profile(TimeSeries(Eigen::VectorXd::Ones(3)), false);
  CHECK(p.values()[0] == 1.0);
  CHECK(p.values()[2] == 3.0);

  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Eigen::VectorXd x(500);
  for (auto& v : x) v = g(rng);
  const TimeSeries c = profile(TimeSeries(x));
  CHECK(std::abs(c.values()[499]) < 1e-12);

  const TimeSeries raw = profile(TimeSeries(x), false);
  CHECK(std::abs(raw.values()[0] - x[0]) < 1e-15);
  for (Eigen::Index i = 1; i < x.size(); ++i) CHECK(std::abs(raw.values()[i] - raw.values()[i - 1] - x[i]) < 1e-12);
}

TEST_CASE("read_csv takes the last column and the header label") {
  const fs::path p = scratch("week.csv");
  std::string text = "Week,trump\n";
  for (int i = 0; i < 40; ++i) text += "2016-01-" + std::to_string(i) + "," + std::to_string(i * 2) + "\n";
  write_text(p, text);
  const TimeSeries ts = read_csv(p);
  CHECK(ts.size() == 40);
  CHECK(ts.label() == "trump");
  CHECK(ts.values()[39] == 78.0);
}

TEST_CASE("read_csv without header uses the file stem") {
  const fs::path p = scratch("plain.csv");
  write_text(p, "1\n2\n3\n");
  const TimeSeries ts = read_csv(p);
  CHECK(ts.size() == 3);
  CHECK(ts.label() == "plain");
}

TEST_CASE("read_csv names the offending row") {
  const fs::path p = scratch("bad.csv");
  write_text(p, "t,v\n0,1\n1,2\n2,3\n3,4\n4,5\n5,abc\n");
  try {
    read_csv(p);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("row 7") != std::string::npos);
  }
}

TEST_CASE("read_csv uses a numeric time column for start and step") {
  const fs::path p = scratch("timed.csv");
  write_text(p, "time,v\n10,1\n10.5,2\n11,3\n");
  const TimeSeries ts = read_csv(p);
  CHECK(ts.start() == doctest::Approx(10.0));
  CHECK(ts.step() == doctest::Approx(0.5));
  write_text(p, "time,v\n10,1\n10.5,2\n12,3\n");
  CHECK_THROWS_AS(read_csv(p), Error);
}

TEST_CASE("csv and json round trips are exact") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  Eigen::VectorXd x(64);
  for (auto& v : x) v = g(rng) * 1e-3;
  const TimeSeries ts(x, 0.25, 0.125, "signal");
  const fs::path p = scratch("round.csv");
  write_csv(ts, p);
  const TimeSeries back = read_csv(p);
  CHECK(back.label() == "signal");
  CHECK(back.start() == ts.start());
  CHECK(back.step() == ts.step());
  CHECK((back.values() - x).cwiseAbs().maxCoeff() == 0.0);

  const TimeSeries j = time_series_from_json(to_json(ts));
  CHECK((j.values() - x).cwiseAbs().maxCoeff() == 0.0);
  CHECK(j.step() == ts.step());
}

TEST_CASE("tables round trip") {
  Table t{{"a", "b"}, Eigen::MatrixXd(2, 2)};
  t.rows << 1.0 / 3.0, -2e-300, 1e300, 0.1;
  const fs::path p = scratch("table.csv");
  write_table(t, p);
  const Table back = read_table(p);
  CHECK(back.header == t.header);
  CHECK((back.rows - t.rows).cwiseAbs().maxCoeff() == 0.0);
}

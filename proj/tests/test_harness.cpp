#include "catperc/catalan.hpp"
#include "catperc/errors.hpp"
#include "catperc/harness.hpp"
#include "catperc/report.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

using namespace catperc;

namespace {

std::string csv_of(const RunResult& r) {
  std::ostringstream os;
  write_csv(os, r);
  return os.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

const ResultRow& find(const RunResult& r, const std::string& experiment) {
  for (const auto& row : r.rows) {
    if (row.experiment == experiment) return row;
  }
  FAIL("missing row " << experiment);
  return r.rows.front();
}

}  // namespace

TEST_CASE("runs replay byte for byte, whatever the thread count") {
  ExperimentSpec s;
  s.kind = ExperimentKind::truncated_pc;
  s.n = 40;
  s.L = {1, 3, 9};
  s.reps = 60;
  s.seed = 42;
  const RunResult a = run(s);
  const RunResult b = run(s);
  s.threads = 3;
  const RunResult c = run(s);
  CHECK(a.complete);
  CHECK(csv_of(a) == csv_of(b));
  CHECK(csv_of(a) == csv_of(c));
  s.seed = 43;
  CHECK(csv_of(a) != csv_of(run(s)));
}

TEST_CASE("phi curve at n = 100") {
  ExperimentSpec s;
  s.kind = ExperimentKind::phi_curve;
  s.n = 100;
  s.reps = 10000;
  const RunResult r = run(s);
  REQUIRE(r.rows.size() == 21);
  for (std::size_t k = 1; k < r.rows.size(); ++k) CHECK(r.rows[k].estimate >= r.rows[k - 1].estimate);
  CHECK(r.rows[6].p == doctest::Approx(0.3));
  CHECK(r.rows[6].estimate < 0.1);
  CHECK(r.rows[12].p == doctest::Approx(0.6));
  CHECK(r.rows[12].estimate > 0.9);
  CHECK(r.rows.front().estimate == 0.0);
  CHECK(r.rows.back().estimate == 1.0);
  for (const auto& row : r.rows) {
    CHECK(row.reps == 10000);
    CHECK(row.std_error == doctest::Approx(std::sqrt(row.estimate * (1 - row.estimate) / 9999.0)));
  }
}

TEST_CASE("standard errors halve when reps quadruple") {
  double ratio_sum = 0;
  const int runs = 4;
  for (int k = 0; k < runs; ++k) {
    ExperimentSpec s;
    s.kind = ExperimentKind::pc_tilde;
    s.n = 30;
    s.seed = 100 + static_cast<std::uint64_t>(k);
    s.reps = 400;
    const double small = run(s).rows.at(0).std_error;
    s.reps = 1600;
    const double big = run(s).rows.at(0).std_error;
    ratio_sum += small / big;
  }
  const double ratio = ratio_sum / runs;
  CHECK(ratio > 1.6);
  CHECK(ratio < 2.4);
}

TEST_CASE("truncated thresholds sit above the full one on every field") {
  ExperimentSpec s;
  s.kind = ExperimentKind::truncated_pc;
  s.n = 60;
  s.reps = 200;
  const RunResult r = run(s);
  CHECK(find(r, "truncated_pc.order_violations").estimate == 0.0);
  const double full = find(r, "truncated_pc.full").estimate;
  double prev = 2.0;
  int rows = 0;
  for (const auto& row : r.rows) {
    if (row.experiment != "truncated_pc" || !row.L) continue;
    CHECK(row.estimate >= full);
    CHECK(row.estimate <= prev);
    prev = row.estimate;
    ++rows;
  }
  CHECK(rows == 6);
  for (std::uint64_t key = 0; key < 50; ++key) {
    const auto t = conditioned_thresholds(50, {1, 2, 5, 50}, key);
    REQUIRE(t.size() == 5);
    for (std::size_t c = 1; c < t.size(); ++c) CHECK(t[0] <= t[c]);
    // L = n is never binding.
    CHECK(t[4] == t[0]);
  }
}

TEST_CASE("theta sampler tracks exact theta") {
  const ThetaSampler ts(5, 4000, 7);
  for (int n = 1; n <= 5; ++n) {
    const RationalPoly exact = exact_theta_poly(n);
    for (double p : {0.2, 0.4, 0.6, 0.8}) {
      const double se = ts.std_error(n, p);
      CHECK(std::abs(ts.theta(n, p) - exact.eval(p)) <= 4 * se + 1e-12);
    }
  }
  CHECK(ts.theta(1, 0.3) == 1.0);
  const auto table = ts.table({0.25, 0.5});
  CHECK(table.size() == 10);
}

TEST_CASE("lower bound runs") {
  ExperimentSpec s;
  s.kind = ExperimentKind::lower_bound_mc;
  s.n0 = {1, 3};
  s.exact_theta = true;
  const RunResult r = run(s);
  REQUIRE(r.rows.size() == 6);
  CHECK(r.rows[0].n0 == 1);
  CHECK(std::abs(r.rows[0].estimate - 0.25) < 1e-3);
  CHECK(r.rows[1].experiment == "lower_bound_mc.lo");
  CHECK(r.rows[3].estimate == doctest::Approx(0.2542).epsilon(1e-3));
  CHECK(r.rows[0].reps == 0);
  s.theta_table = std::vector<ThetaEstimate>{};
  CHECK_THROWS_AS(run(s), InvalidArgument);
}

TEST_CASE("oriented experiments report counters") {
  ExperimentSpec e;
  e.kind = ExperimentKind::edge_speed;
  e.n = 50;
  e.reps = 20;
  const RunResult er = run(e);
  REQUIRE(er.rows.size() == 3);
  for (const auto& row : er.rows) CHECK(row.reps + row.truncated == 20);

  ExperimentSpec c;
  c.kind = ExperimentKind::crossing;
  c.m = 40;
  c.p_grid = {1.0};
  c.reps = 5;
  const RunResult cr = run(c);
  CHECK(find(cr, "crossing.up").estimate == 1.0);

  ExperimentSpec d;
  d.kind = ExperimentKind::defects;
  d.n = 100;
  d.reps = 20;
  d.p_grid = {1.0};
  d.delta = 0.0;
  CHECK(find(run(d), "defects").estimate == 1.0);

  ExperimentSpec k;
  k.kind = ExperimentKind::coupling_check;
  k.n = 20;
  k.reps = 200;
  const RunResult kr = run(k);
  for (const auto& row : kr.rows) {
    if (row.experiment.find("violations") != std::string::npos) CHECK(row.estimate == 0.0);
  }
}

TEST_CASE("time budget yields a partial, flagged result") {
  ExperimentSpec s;
  s.kind = ExperimentKind::pc_tilde;
  s.n = 400;
  s.reps = 100000;
  s.max_seconds = 0.05;
  const RunResult r = run(s);
  CHECK_FALSE(r.complete);
  CHECK_FALSE(r.note.empty());
  CHECK(csv_of(r).find("# complete: false") != std::string::npos);
}

TEST_CASE("invalid specs are rejected") {
  ExperimentSpec s;
  s.kind = ExperimentKind::pc_tilde;
  s.n = 1;
  CHECK_THROWS_AS(run(s), InvalidArgument);
  s.n = 10;
  s.reps = 0;
  CHECK_THROWS_AS(run(s), InvalidArgument);
}

TEST_CASE("csv and json carry the same numbers") {
  ExperimentSpec s;
  s.kind = ExperimentKind::phi_curve;
  s.n = 30;
  s.reps = 300;
  s.p_grid = {0.1, 0.35, 0.4, 1.0 / 3.0};
  const RunResult r = run(s);
  std::ostringstream js;
  write_json(js, r);
  const auto doc = nlohmann::json::parse(js.str());
  const auto rows = csv_rows(csv_of(r));
  REQUIRE(rows.size() == doc["rows"].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& j = doc["rows"][i];
    CHECK(rows[i][0] == j["experiment"].get<std::string>());
    CHECK(std::stod(rows[i][3]) == j["p"].get<double>());
    CHECK(std::stod(rows[i][6]) == j["estimate"].get<double>());
    CHECK(std::stod(rows[i][7]) == j["stderr"].get<double>());
    CHECK(std::stoi(rows[i][8]) == j["reps"].get<int>());
    CHECK(rows[i][2].empty());
    CHECK(j["L"].is_null());
  }
  CHECK(doc["config"]["spec_hash"].get<std::string>() == r.spec_hash);
  CHECK(r.spec_hash == fnv1a_hex([&] {
          std::string text;
          for (const auto& [k, v] : s.describe()) text += k + "=" + v + "\n";
          return text;
        }()));
}

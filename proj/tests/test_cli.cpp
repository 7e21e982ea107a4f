#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "golden_gaps/analytic.hpp"
#include "golden_gaps/commands.hpp"

using namespace golden_gaps;
using cli::RunConfig;

namespace {

struct Output {
  int code;
  std::string out;
  std::string err;
};

Output run(const RunConfig& c) {
  std::ostringstream out, err;
  const int code = cli::run(c, out, err);
  return {code, out.str(), err.str()};
}

RunConfig command(const std::string& name) {
  RunConfig c;
  c.command = name;
  return c;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

}  // namespace

TEST_CASE("enumerate") {
  RunConfig c = command("enumerate");
  c.radius = 2;
  Output o = run(c);
  CHECK(o.code == cli::kExitOk);
  CHECK(o.out.find("1.6180339887498949,1.6180339887498949,0/1+1/1*phi,0/1+1/1*phi") != std::string::npos);
  c.radius = 1;
  o = run(c);
  CHECK(o.code == cli::kExitOk);
  CHECK(o.out.find("\n1,0,1/1+0/1*phi,0/1+0/1*phi\n") != std::string::npos);
  c.radius = 0;
  o = run(c);
  CHECK(o.code == cli::kExitConfig);
  CHECK_FALSE(o.err.empty());
}

TEST_CASE("gaps: methods agree and min gap is at least one") {
  RunConfig c = command("gaps");
  c.radius = 20;
  const Output bcz = run(c);
  c.method = "direct";
  const Output direct = run(c);
  CHECK(bcz.code == 0);
  CHECK(bcz.out == direct.out);
  const auto summary = nlohmann::json::parse(bcz.err);
  CHECK(summary["min_gap"].get<double>() >= 1.0);
  CHECK(summary["slope_count"] == 110);

  c.method = "bcz";
  c.radius = 6000;
  c.mode = "exact";
  CHECK(run(c).code == cli::kExitConfig);
  c.method = "nope";
  c.radius = 10;
  CHECK(run(c).code == cli::kExitConfig);
}

TEST_CASE("curve examples") {
  RunConfig c = command("curve");
  c.alpha_min = 0.5;
  c.alpha_max = 2.0;
  c.alpha_steps = 4;
  const auto rows = lines(run(c).out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "alpha,pdf,cdf");
  CHECK(rows[1] == "0.5,0,0");
  const auto last = split(rows[4]);
  const double expected = (2 / kPhi) * (0.25 * std::log(2.0) + 0.5 * std::log(2 * kPhiBar));
  CHECK(std::stod(last[1]) == doctest::Approx(expected).epsilon(1e-15));

  c.alpha_min = 1e6;
  c.alpha_max = 2e6;
  c.alpha_steps = 2;
  const auto far = split(lines(run(c).out)[1]);
  CHECK(std::abs(std::stod(far[2]) - 1.0) < 1e-5);

  c = command("curve");
  c.kinks = true;
  const auto kinks = lines(run(c).out);
  CHECK(kinks.size() == 9);
}

TEST_CASE("compare: analytic column is the curve at bin midpoints") {
  RunConfig c = command("compare");
  c.radius = 200;
  c.bins = 8;
  c.alpha_min = 0;
  c.alpha_max = 8;
  const Output o = run(c);
  REQUIRE(o.code == 0);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() == 9);
  CHECK(rows[0] == "bin_left,bin_right,count,density,analytic_pdf_at_midpoint");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = split(rows[i]);
    RunConfig curve = command("curve");
    const double mid = 0.5 * (std::stod(f[0]) + std::stod(f[1]));
    curve.alpha_min = mid;
    curve.alpha_max = mid + 1;
    curve.alpha_steps = 2;
    CHECK(split(lines(run(curve).out)[1])[1] == f[4]);
  }
  const auto summary = nlohmann::json::parse(o.err);
  CHECK(summary.contains("ks_distance"));
  CHECK(summary["ks_distance"].get<double>() < 0.1);
}

TEST_CASE("volume") {
  const Output o = run(command("volume"));
  REQUIRE(o.code == 0);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["total"]["closed_form"].get<double>() == doctest::Approx(2.9608813).epsilon(1e-8));
  CHECK(j["max_discrepancy"].get<double>() <= 1e-6);
  RunConfig c = command("volume");
  c.format = "csv";
  CHECK(lines(run(c).out).size() == 5);
}

TEST_CASE("hspacing") {
  RunConfig c = command("hspacing");
  c.samples = 20000;
  const Output o = run(c);
  REQUIRE(o.code == 0);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["estimate"].get<double>() == 1.0);
  CHECK(j["seed"] == 1);
  c.thresholds = {0.0};
  CHECK(run(c).code == cli::kExitConfig);
}

TEST_CASE("orbit") {
  RunConfig c = command("orbit");
  c.steps = 1;
  const auto rows = lines(run(c).out);
  REQUIRE(rows.size() == 2);
  const auto f = split(rows[1]);
  CHECK(f[3] == "Zinf");
  CHECK(f[4] == "1");
  CHECK(f[7] == "1/1+0/1*phi");
  c.a = "2";
  CHECK(run(c).code == cli::kExitConfig);
  c.a = "x";
  CHECK(run(c).code == cli::kExitConfig);
  c.a = "1/2";
  c.b = "1/2";
  c.mode = "float";
  c.steps = 3;
  CHECK(lines(run(c).out).size() == 4);
}

TEST_CASE("outputs are deterministic") {
  RunConfig c = command("hspacing");
  c.samples = 10000;
  c.thresholds = {1.5, 2.0};
  c.seed = 5;
  CHECK(run(c).out == run(c).out);
  RunConfig g = command("compare");
  g.radius = 150;
  g.mode = "float";
  const Output a = run(g), b = run(g);
  CHECK(a.out == b.out);
  CHECK(a.err == b.err);
}

TEST_CASE("unknown command and bad format") {
  CHECK(run(command("bogus")).code == cli::kExitConfig);
  RunConfig c = command("volume");
  c.format = "xml";
  CHECK(run(c).code == cli::kExitConfig);
}

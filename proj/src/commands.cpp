#include "golden_gaps/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>

#include <json.hpp>

#include "golden_gaps/analytic.hpp"
#include "golden_gaps/errors.hpp"
#include "golden_gaps/lattice.hpp"
#include "golden_gaps/stats.hpp"

namespace golden_gaps::cli {

using nlohmann::ordered_json;

namespace {

// Tabular commands default to CSV, report commands to JSON.
bool is_csv(const RunConfig& c) {
  if (!c.format.empty()) return c.format == "csv";
  return c.command != "volume" && c.command != "hspacing";
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool uses_radius(const std::string& command) {
  return command == "enumerate" || command == "gaps" || command == "compare";
}

std::vector<double> alpha_grid(const RunConfig& c) {
  std::vector<double> grid(c.alpha_steps);
  for (std::size_t i = 0; i < c.alpha_steps; ++i) {
    grid[i] = c.alpha_steps == 1 ? c.alpha_min
                                 : c.alpha_min + (c.alpha_max - c.alpha_min) * double(i) / double(c.alpha_steps - 1);
  }
  if (c.alpha_steps > 1) grid.back() = c.alpha_max;
  return grid;
}

GapSample collect_gaps(const RunConfig& c) {
  const bcz::Mode mode = resolve_mode(c);
  if (c.method == "direct") return lattice::gaps_direct(c.radius);
  return bcz::gaps_via_bcz(c.radius, mode);
}

struct GapSummary {
  std::size_t slope_count = 0;
  double min_gap = 0;
  double max_gap = 0;
  double mean_gap = 0;
};

GapSummary summarize(const GapSample& s) {
  GapSummary g;
  g.slope_count = s.slope_count;
  if (s.gaps.empty()) return g;
  g.min_gap = s.gaps.front();
  g.max_gap = s.gaps.front();
  double sum = 0;
  for (double x : s.gaps) {
    g.min_gap = std::min(g.min_gap, x);
    g.max_gap = std::max(g.max_gap, x);
    sum += x;
  }
  g.mean_gap = sum / double(s.gaps.size());
  return g;
}

ordered_json summary_json(const RunConfig& c, const GapSample& s) {
  const GapSummary g = summarize(s);
  ordered_json j;
  j["radius"] = c.radius;
  j["method"] = std::string(to_string(s.method));
  j["mode"] = s.exact_gaps ? "exact" : "float";
  j["slope_count"] = g.slope_count;
  j["gap_count"] = s.gaps.size();
  j["min_gap"] = g.min_gap;
  j["max_gap"] = g.max_gap;
  j["mean_gap"] = g.mean_gap;
  j["expected_mean_gap"] = analytic::gap_mean_closed_form();
  return j;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void validate(const RunConfig& c) {
  static const std::vector<std::string> commands{"enumerate", "gaps", "curve", "compare", "volume", "hspacing", "orbit"};
  require(std::find(commands.begin(), commands.end(), c.command) != commands.end(), "unknown command '" + c.command + "'");
  require(c.format.empty() || c.format == "csv" || c.format == "json", "--format must be csv or json");
  require(c.mode == "auto" || c.mode == "exact" || c.mode == "float", "--mode must be auto, exact or float");
  if (uses_radius(c.command)) {
    const long min_radius = c.command == "enumerate" ? 1 : 2;
    require(c.radius >= min_radius, "--radius must be >= " + std::to_string(min_radius));
  }
  if (c.command == "gaps" || c.command == "compare") {
    require(c.method == "bcz" || c.method == "direct", "--method must be bcz or direct");
  }
  if (c.command == "curve" || c.command == "compare") {
    require(std::isfinite(c.alpha_min) && std::isfinite(c.alpha_max) && c.alpha_min >= 0 && c.alpha_max > c.alpha_min,
            "need 0 <= --alpha-min < --alpha-max");
  }
  if (c.command == "curve") require(c.alpha_steps >= 2, "--alpha-steps must be >= 2");
  if (c.command == "compare") require(c.bins >= 1, "--bins must be >= 1");
  if (c.command == "hspacing") {
    require(!c.thresholds.empty(), "--thresholds needs at least one value");
    for (double t : c.thresholds) require(t > 0 && std::isfinite(t), "--thresholds must be positive");
    require(c.samples >= 1000, "--samples must be >= 1000");
  }
  if (uses_radius(c.command)) resolve_mode(c);
}

bcz::Mode resolve_mode(const RunConfig& c) {
  const bool exact_path = c.mode == "exact" || (c.mode == "auto" && c.radius <= kAutoExactRadius) ||
                          c.command == "enumerate" || ((c.command == "gaps" || c.command == "compare") && c.method == "direct");
  if (exact_path && c.radius > kExactRadiusLimit && !c.force_exact) {
    throw ConfigError("exact computation at R = " + std::to_string(c.radius) + " exceeds the cost guard R <= " +
                      std::to_string(kExactRadiusLimit) + "; use --mode float (bcz only) or --force-exact");
  }
  return exact_path ? bcz::Mode::Exact : bcz::Mode::Float;
}

void cmd_enumerate(const RunConfig& c, std::ostream& out) {
  const std::vector<IntegerVector> vs = lattice::enumerate_integer_vectors(c.radius);
  if (is_csv(c)) {
    out << "x,y,x_exact,y_exact\n";
    for (const IntegerVector& v : vs) {
      out << format_double(v.re.to_double()) << ',' << format_double(v.im.to_double()) << ','
          << v.re.to_golden().to_fraction_string() << ',' << v.im.to_golden().to_fraction_string() << '\n';
    }
    return;
  }
  ordered_json j;
  j["radius"] = c.radius;
  j["count"] = vs.size();
  ordered_json rows = ordered_json::array();
  for (const IntegerVector& v : vs) {
    rows.push_back({{"x", v.re.to_double()},
                    {"y", v.im.to_double()},
                    {"x_exact", v.re.to_golden().to_fraction_string()},
                    {"y_exact", v.im.to_golden().to_fraction_string()}});
  }
  j["vectors"] = std::move(rows);
  out << j.dump(2) << '\n';
}

void cmd_gaps(const RunConfig& c, std::ostream& out, std::ostream& summary) {
  const GapSample s = collect_gaps(c);
  const ordered_json sj = summary_json(c, s);
  if (is_csv(c)) {
    out << (s.exact_gaps ? "index,gap,exact\n" : "index,gap\n");
    for (std::size_t i = 0; i < s.gaps.size(); ++i) {
      out << i << ',' << format_double(s.gaps[i]);
      if (s.exact_gaps) out << ',' << (*s.exact_gaps)[i].to_fraction_string();
      out << '\n';
    }
    summary << sj.dump(2) << '\n';
    return;
  }
  ordered_json j = sj;
  j["gaps"] = s.gaps;
  out << j.dump(2) << '\n';
}

void cmd_curve(const RunConfig& c, std::ostream& out) {
  if (c.kinks) {
    const auto report = analytic::pdf_smoothness();
    if (is_csv(c)) {
      out << "point,left_derivative,right_derivative,unbounded,differentiable\n";
      for (const auto& r : report) {
        out << format_double(r.point) << ',' << format_double(r.left_derivative) << ','
            << format_double(r.right_derivative) << ',' << (r.unbounded ? 1 : 0) << ',' << (r.differentiable ? 1 : 0)
            << '\n';
      }
      return;
    }
    ordered_json rows = ordered_json::array();
    for (const auto& r : report) {
      rows.push_back({{"point", r.point},
                      {"left_derivative", r.left_derivative},
                      {"right_derivative", r.right_derivative},
                      {"unbounded", r.unbounded},
                      {"differentiable", r.differentiable}});
    }
    out << ordered_json{{"kinks", rows}}.dump(2) << '\n';
    return;
  }
  const std::vector<double> grid = alpha_grid(c);
  if (is_csv(c)) {
    out << "alpha,pdf,cdf\n";
    for (double a : grid) {
      out << format_double(a) << ',' << format_double(analytic::gap_pdf(a)) << ',' << format_double(analytic::gap_cdf(a))
          << '\n';
    }
    return;
  }
  ordered_json rows = ordered_json::array();
  for (double a : grid) rows.push_back({{"alpha", a}, {"pdf", analytic::gap_pdf(a)}, {"cdf", analytic::gap_cdf(a)}});
  out << ordered_json{{"curve", rows}}.dump(2) << '\n';
}

void cmd_compare(const RunConfig& c, std::ostream& out, std::ostream& summary) {
  const GapSample s = collect_gaps(c);
  stats::Histogram h = stats::Histogram::uniform(c.alpha_min, c.alpha_max, c.bins);
  h.add(s.gaps);
  const double ks = stats::ks_distance(stats::EmpiricalCdf(s), analytic::gap_cdf);
  ordered_json sj = summary_json(c, s);
  sj["bins"] = c.bins;
  sj["alpha_min"] = c.alpha_min;
  sj["alpha_max"] = c.alpha_max;
  sj["ks_distance"] = ks;
  sj["outside_range"] = h.underflow() + h.overflow();
  if (is_csv(c)) {
    out << "bin_left,bin_right,count,density,analytic_pdf_at_midpoint\n";
    for (std::size_t i = 0; i < h.bins(); ++i) {
      out << format_double(h.edges()[i]) << ',' << format_double(h.edges()[i + 1]) << ',' << h.counts()[i] << ','
          << format_double(h.density(i)) << ',' << format_double(analytic::gap_pdf(h.midpoint(i))) << '\n';
    }
    summary << sj.dump(2) << '\n';
    return;
  }
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < h.bins(); ++i) {
    rows.push_back({{"bin_left", h.edges()[i]},
                    {"bin_right", h.edges()[i + 1]},
                    {"count", h.counts()[i]},
                    {"density", h.density(i)},
                    {"analytic_pdf_at_midpoint", analytic::gap_pdf(h.midpoint(i))}});
  }
  sj["histogram"] = std::move(rows);
  out << sj.dump(2) << '\n';
}

void cmd_volume(const RunConfig& c, std::ostream& out) {
  const analytic::VolumeReport v = analytic::volumes();
  if (is_csv(c)) {
    out << "zone,closed_form,numeric\n";
    out << "Z1," << format_double(v.v1) << ',' << format_double(v.v1_numeric) << '\n';
    out << "Zphi," << format_double(v.vphi) << ',' << format_double(v.vphi_numeric) << '\n';
    out << "Zinf," << format_double(v.vinf) << ',' << format_double(v.vinf_numeric) << '\n';
    out << "total," << format_double(v.total) << ',' << format_double(v.total_numeric) << '\n';
    return;
  }
  ordered_json j;
  j["V1"] = {{"closed_form", v.v1}, {"numeric", v.v1_numeric}};
  j["Vphi"] = {{"closed_form", v.vphi}, {"numeric", v.vphi_numeric}};
  j["Vinf"] = {{"closed_form", v.vinf}, {"numeric", v.vinf_numeric}};
  j["total"] = {{"closed_form", v.total}, {"numeric", v.total_numeric}};
  j["expected_total"] = v.expected_total;
  j["max_discrepancy"] = v.max_discrepancy();
  j["mean_gap"] = analytic::gap_mean_closed_form();
  out << j.dump(2) << '\n';
}

void cmd_hspacing(const RunConfig& c, std::ostream& out) {
  const stats::Estimate e = stats::h_spacing_mc({c.thresholds, c.samples, c.seed});
  ordered_json j;
  j["h"] = c.thresholds.size();
  j["thresholds"] = c.thresholds;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["streams"] = stats::kStreams;
  j["estimate"] = e.value;
  j["standard_error"] = e.standard_error;
  if (c.thresholds.size() == 1) j["analytic"] = analytic::gap_survival(c.thresholds.front());
  if (is_csv(c)) {
    out << "h,samples,seed,estimate,standard_error\n"
        << c.thresholds.size() << ',' << c.samples << ',' << c.seed << ',' << format_double(e.value) << ','
        << format_double(e.standard_error) << '\n';
    return;
  }
  out << j.dump(2) << '\n';
}

void cmd_orbit(const RunConfig& c, std::ostream& out) {
  GoldenNumber a, b;
  try {
    a = GoldenNumber::parse(c.a);
    b = GoldenNumber::parse(c.b);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("--a/--b: ") + e.what());
  }
  const bcz::ExactPoint start{a, b};
  require(bcz::in_omega(start), "(a, b) must satisfy 0 < a <= 1 and 1 - a phi < b <= 1");
  const bool exact = c.mode != "float";
  if (exact) {
    const auto t = bcz::orbit(start, c.steps);
    if (is_csv(c)) {
      out << "step,a,b,zone,return_time,a_exact,b_exact,return_time_exact\n";
      for (std::size_t i = 0; i < t.points.size(); ++i) {
        out << i << ',' << format_double(t.points[i].a.to_double()) << ',' << format_double(t.points[i].b.to_double())
            << ',' << bcz::zone_name(t.zones[i]) << ',' << format_double(t.return_times[i].to_double()) << ','
            << t.points[i].a.to_fraction_string() << ',' << t.points[i].b.to_fraction_string() << ','
            << t.return_times[i].to_fraction_string() << '\n';
      }
      return;
    }
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < t.points.size(); ++i) {
      rows.push_back({{"step", i},
                      {"a", t.points[i].a.to_double()},
                      {"b", t.points[i].b.to_double()},
                      {"zone", bcz::zone_name(t.zones[i])},
                      {"return_time", t.return_times[i].to_double()},
                      {"a_exact", t.points[i].a.to_fraction_string()},
                      {"b_exact", t.points[i].b.to_fraction_string()},
                      {"return_time_exact", t.return_times[i].to_fraction_string()}});
    }
    ordered_json j{{"closed", t.closed}, {"trace", rows}};
    if (t.period) j["period"] = *t.period;
    out << j.dump(2) << '\n';
    return;
  }
  const auto t = bcz::orbit(bcz::FloatPoint{a.to_double(), b.to_double()}, c.steps);
  if (is_csv(c)) {
    out << "step,a,b,zone,return_time\n";
    for (std::size_t i = 0; i < t.points.size(); ++i) {
      out << i << ',' << format_double(t.points[i].a) << ',' << format_double(t.points[i].b) << ','
          << bcz::zone_name(t.zones[i]) << ',' << format_double(t.return_times[i]) << '\n';
    }
    return;
  }
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    rows.push_back({{"step", i},
                    {"a", t.points[i].a},
                    {"b", t.points[i].b},
                    {"zone", bcz::zone_name(t.zones[i])},
                    {"return_time", t.return_times[i]}});
  }
  out << ordered_json{{"closed", t.closed}, {"guarded_steps", t.guarded_steps}, {"trace", rows}}.dump(2) << '\n';
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    std::unique_ptr<std::ofstream> file;
    std::ostream* target = &out;
    if (!c.out.empty()) {
      file = std::make_unique<std::ofstream>(c.out);
      if (!*file) throw ConfigError("cannot open --out file '" + c.out + "'");
      target = file.get();
    }
    std::unique_ptr<std::ofstream> summary_file;
    std::ostream* summary = &err;
    if (!c.summary.empty()) {
      summary_file = std::make_unique<std::ofstream>(c.summary);
      if (!*summary_file) throw ConfigError("cannot open --summary file '" + c.summary + "'");
      summary = summary_file.get();
    }
    if (c.command == "enumerate") cmd_enumerate(c, *target);
    if (c.command == "gaps") cmd_gaps(c, *target, *summary);
    if (c.command == "curve") cmd_curve(c, *target);
    if (c.command == "compare") cmd_compare(c, *target, *summary);
    if (c.command == "volume") cmd_volume(c, *target);
    if (c.command == "hspacing") cmd_hspacing(c, *target);
    if (c.command == "orbit") cmd_orbit(c, *target);
    target->flush();
    if (!*target) throw std::runtime_error("write failed");
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvariantError& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace golden_gaps::cli

// golden-gaps: slope gap statistics of the golden L.

#include <iostream>

#include <CLI11.hpp>

#include "golden_gaps/commands.hpp"

int main(int argc, char** argv) {
  using golden_gaps::cli::RunConfig;
  RunConfig config;

  CLI::App app{"Slope gap distribution of the golden L: enumeration, BCZ map, closed forms and statistics"};
  app.set_config("--config", "", "Flat 'key = value' file; flags override it");
  app.require_subcommand(1);

  // Options live on the top-level app so a flat config file can set them;
  // subcommands fall through to them.
  app.add_option("--radius,-R", config.radius, "Horizontal cutoff R")->capture_default_str();
  app.add_option("--method", config.method, "Gap method: bcz | direct")->capture_default_str();
  app.add_option("--bins", config.bins, "Histogram bins (compare)")->capture_default_str();
  app.add_option("--alpha-min", config.alpha_min, "Lower end of the alpha range")->capture_default_str();
  app.add_option("--alpha-max", config.alpha_max, "Upper end of the alpha range")->capture_default_str();
  app.add_option("--alpha-steps", config.alpha_steps, "Number of alpha grid points (curve)")->capture_default_str();
  app.add_option("--mode", config.mode, "auto | exact | float")->capture_default_str();
  app.add_option("--seed", config.seed, "RNG seed (hspacing)")->capture_default_str();
  app.add_option("--out,-o", config.out, "Output file (default stdout)");
  app.add_option("--format", config.format, "csv | json (default: json for volume/hspacing, csv otherwise)");
  app.add_flag("--force-exact", config.force_exact, "Allow exact computation above R = 5000");
  app.add_option("--summary", config.summary, "Summary JSON file for gaps/compare (default stderr)");
  app.add_option("--thresholds,-t", config.thresholds, "h-spacing thresholds t_1 .. t_h")->capture_default_str();
  app.add_option("--samples", config.samples, "Monte Carlo samples (hspacing)")->capture_default_str();
  app.add_option("--a", config.a, "Orbit start a (exact, e.g. 1/2 or -1+phi)")->capture_default_str();
  app.add_option("--b", config.b, "Orbit start b")->capture_default_str();
  app.add_option("--steps", config.steps, "Orbit length")->capture_default_str();
  app.add_flag("--kinks", config.kinks, "curve: report one-sided derivatives at the breakpoints");

  const auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    s->callback([&config, name] { config.command = name; });
    return s;
  };
  sub("enumerate", "Saddle-connection vectors with 0 <= y <= x <= R");
  sub("gaps", "Scaled slope gaps and their summary");
  sub("curve", "Limiting pdf and cdf on an alpha grid");
  sub("compare", "Histogram of gaps against the limiting pdf, with the KS distance");
  sub("volume", "Zone volumes: closed forms and quadrature");
  sub("hspacing", "Monte Carlo h-spacing probability");
  sub("orbit", "Trace of the BCZ map from (a, b)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : golden_gaps::cli::kExitConfig;
  }
  return golden_gaps::cli::run(config, std::cout, std::cerr);
}

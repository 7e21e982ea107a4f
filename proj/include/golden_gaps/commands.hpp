#pragma once

// Subcommands of the golden-gaps tool. They write to streams so tests can
// drive them without a process.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "golden_gaps/bcz.hpp"
#include "golden_gaps/golden.hpp"

namespace golden_gaps::cli {

/// Invalid user input; exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInvariant = 3;

/// Exact mode is refused above this radius unless forced.
inline constexpr long kExactRadiusLimit = 5000;
/// `auto` mode runs exactly up to this radius.
inline constexpr long kAutoExactRadius = 1000;

struct RunConfig {
  std::string command;
  long radius = 100;
  std::string method = "bcz";  // bcz | direct
  std::size_t bins = 100;
  double alpha_min = 0.0;
  double alpha_max = 10.0;
  std::size_t alpha_steps = 201;  // grid points, both ends included
  std::string mode = "auto";      // auto | exact | float
  std::uint64_t seed = 1;
  std::string out;      // empty: stdout
  std::string format;  // csv | json; empty: json for volume/hspacing, csv otherwise
  bool force_exact = false;
  std::string summary;  // gaps / compare summary JSON path; empty: stderr
  // hspacing
  std::vector<double> thresholds{1.0};
  std::size_t samples = 1'000'000;
  // orbit
  std::string a = "1";
  std::string b = "1";
  std::size_t steps = 10;
  // curve
  bool kinks = false;
};

/// Throws ConfigError.
void validate(const RunConfig& config);
/// Mode for radius-driven commands after `auto` resolution and the cost guard.
bcz::Mode resolve_mode(const RunConfig& config);

/// 17 significant digits.
std::string format_double(double x);

void cmd_enumerate(const RunConfig& config, std::ostream& out);
void cmd_gaps(const RunConfig& config, std::ostream& out, std::ostream& summary);
void cmd_curve(const RunConfig& config, std::ostream& out);
void cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& summary);
void cmd_volume(const RunConfig& config, std::ostream& out);
void cmd_hspacing(const RunConfig& config, std::ostream& out);
void cmd_orbit(const RunConfig& config, std::ostream& out);

/// Validates, opens --out / --summary, dispatches and maps exceptions to exit
/// codes, reporting errors on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace golden_gaps::cli

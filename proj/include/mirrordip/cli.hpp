#ifndef MIRRORDIP_CLI_HPP
#define MIRRORDIP_CLI_HPP

#include <cstdint>
#include <string>
#include <vector>

// Command-line front end. Subcommands: rates, sweep, lifetime, evolve,
// trajectories, crossing. Each accepts an optional flat key=value config
// file via --config; command-line flags override file values. Artifacts go
// to --output (default standard output) as CSV (tables) or JSON (single
// results and any table via --format json). JSON artifacts echo the
// resolved configuration under "config"; writing those key/value pairs back
// to a config file reproduces the run byte for byte.
//
// Exit status: 0 success, 2 usage error (bad flag or precondition
// violation), 1 runtime error.

namespace mirrordip {

struct RunConfig {
  std::string subcommand;
  std::string output;  // empty = standard output
  std::string format;  // "csv" or "json"

  // rates
  double xi = 6.283185307179586;
  std::string dipole_a = "0,1,0";
  std::string dipole_b = "0,1,0";
  double ta = 0.5;
  double rb = 1.0;
  std::string method = "auto";  // auto | quadrature | angular

  // sweep
  double xi_min = 0.1;
  double xi_max = 20.0;
  int points = 400;
  std::string spacing = "log";  // log | linear
  std::string orientations = "0,0.5,0.75,1";
  double coupling = 0.5;
  std::string backend = "auto";  // auto | quadrature | angular

  // lifetime + crossing
  double re_gamma = 0.05;
  std::string p_list = "0.05,0.1,0.2";
  double t_max = 5.0;
  int steps = 500;

  // evolve + trajectories
  double im_gamma = 0.0;
  std::string initial = "mixture";  // plus | minus | doubly-excited | ground | mixture
  double p = 0.1;
  bool conditional = false;
  long n_traj = 10000;
  std::uint64_t seed = 1;
  int workers = 0;
};

// Parses arguments (without the program name) into a RunConfig; usage
// problems surface as ConstraintViolation.
RunConfig parse_args(const std::vector<std::string>& args);

// Executes a parsed config and emits the artifact; throws on failure.
int run(const RunConfig& config);

// Full parse + dispatch with the documented exit-status mapping.
int cli_main(int argc, const char* const* argv);

}  // namespace mirrordip

#endif  // MIRRORDIP_CLI_HPP

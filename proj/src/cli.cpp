#include "mirrordip/cli.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "mirrordip/dynamics.hpp"
#include "mirrordip/errors.hpp"
#include "mirrordip/experiments.hpp"
#include "mirrordip/geometry.hpp"
#include "mirrordip/rates.hpp"
#include "mirrordip/table.hpp"
#include "mirrordip/trajectories.hpp"

namespace mirrordip {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kDipoleWarnThreshold = 1e-6;

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string token =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      std::size_t used = 0;
      const double value = std::stod(token, &used);
      while (used < token.size() &&
             std::isspace(static_cast<unsigned char>(token[used]))) {
        ++used;
      }
      if (used != token.size()) throw std::invalid_argument(token);
      out.push_back(value);
    } catch (const std::exception&) {
      throw ConstraintViolation(what + ": cannot parse '" + token + "' as a number");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

DipoleOrientation parse_dipole(const std::string& text, const std::string& flag) {
  const std::vector<double> v = parse_double_list(text, flag);
  if (v.size() != 3) {
    throw ConstraintViolation(flag + ": expected a comma-separated triple");
  }
  const DipoleOrientation d(v[0], v[1], v[2]);
  if (d.renormalization() > kDipoleWarnThreshold) {
    std::cerr << "warning: " << flag << " was renormalized (length deviated from 1 by "
              << format_double(d.renormalization()) << ")\n";
  }
  return d;
}

InitialState parse_initial(const std::string& name, double p) {
  if (name == "plus") return InitialState::plus();
  if (name == "minus") return InitialState::minus();
  if (name == "doubly-excited") return InitialState::doubly_excited();
  if (name == "ground") return InitialState::ground();
  if (name == "mixture") return InitialState::product_mixture(p);
  throw ConstraintViolation("--initial: unknown state '" + name + "'");
}

RateBackend parse_backend(const std::string& name) {
  if (name == "quadrature") return RateBackend::Quadrature;
  if (name == "angular") return RateBackend::Angular;
  return RateBackend::Auto;
}

// A run's payload: a table, rendered as CSV rows or a JSON "data" object of
// column arrays; scalar artifacts (single-row tables) render as a JSON
// "result" object instead.
struct Artifact {
  Table table;
  bool scalar = false;
};

ordered_json config_echo(const RunConfig& cfg) {
  ordered_json echo;
  const auto put = [&echo](const char* key, double v) { echo[key] = format_double(v); };
  if (cfg.subcommand == "rates") {
    put("xi", cfg.xi);
    echo["dipole-a"] = cfg.dipole_a;
    echo["dipole-b"] = cfg.dipole_b;
    put("ta", cfg.ta);
    put("rb", cfg.rb);
    echo["method"] = cfg.method;
  } else if (cfg.subcommand == "sweep") {
    put("xi-min", cfg.xi_min);
    put("xi-max", cfg.xi_max);
    echo["points"] = std::to_string(cfg.points);
    echo["spacing"] = cfg.spacing;
    echo["orientations"] = cfg.orientations;
    put("coupling", cfg.coupling);
    echo["backend"] = cfg.backend;
  } else if (cfg.subcommand == "lifetime") {
    put("re-gamma", cfg.re_gamma);
    echo["p"] = cfg.p_list;
    put("t-max", cfg.t_max);
    echo["steps"] = std::to_string(cfg.steps);
  } else if (cfg.subcommand == "evolve") {
    put("re-gamma", cfg.re_gamma);
    put("im-gamma", cfg.im_gamma);
    echo["initial"] = cfg.initial;
    put("p", cfg.p);
    put("t-max", cfg.t_max);
    echo["steps"] = std::to_string(cfg.steps);
    echo["conditional"] = cfg.conditional ? "true" : "false";
  } else if (cfg.subcommand == "trajectories") {
    put("re-gamma", cfg.re_gamma);
    put("im-gamma", cfg.im_gamma);
    echo["initial"] = cfg.initial;
    put("p", cfg.p);
    put("t-max", cfg.t_max);
    echo["steps"] = std::to_string(cfg.steps);
    echo["n"] = std::to_string(cfg.n_traj);
    echo["seed"] = std::to_string(cfg.seed);
    echo["workers"] = std::to_string(cfg.workers);
  } else if (cfg.subcommand == "crossing") {
    put("re-gamma", cfg.re_gamma);
  }
  echo["format"] = cfg.format;
  return echo;
}

std::string render(const RunConfig& cfg, const Artifact& artifact) {
  if (cfg.format == "csv") {
    std::ostringstream out;
    write_csv(artifact.table, out);
    return out.str();
  }
  ordered_json root;
  root["config"] = config_echo(cfg);
  ordered_json payload;
  for (std::size_t k = 0; k < artifact.table.columns.size(); ++k) {
    if (artifact.scalar) {
      payload[artifact.table.columns[k]] = artifact.table.cols[k].front();
    } else {
      payload[artifact.table.columns[k]] = artifact.table.cols[k];
    }
  }
  root[artifact.scalar ? "result" : "data"] = payload;
  return root.dump(2) + "\n";
}

Artifact run_rates(const RunConfig& cfg) {
  const DipoleOrientation da = parse_dipole(cfg.dipole_a, "--dipole-a");
  const DipoleOrientation db = parse_dipole(cfg.dipole_b, "--dipole-b");
  const GeometryConfig geo(cfg.xi, da, db, AsymmetricMirror(1.0 - cfg.ta, cfg.rb));
  ComplexRate g;
  if (cfg.method == "quadrature") {
    g = gamma_ab_quadrature(geo);
  } else if (cfg.method == "angular") {
    g = gamma_ab_angular(geo);
  } else {
    g = gamma_ab(geo);
  }
  const CollectiveRates rates = collective_rates(g);

  Artifact art;
  art.scalar = true;
  art.table.add_column("xi") = {cfg.xi};
  art.table.add_column("re_gamma_ab") = {g.real()};
  art.table.add_column("delta_mir") = {level_shift(g)};
  art.table.add_column("gamma_plus") = {rates.gamma_plus};
  art.table.add_column("gamma_minus") = {rates.gamma_minus};
  return art;
}

Artifact run_sweep(const RunConfig& cfg) {
  SweepSpec spec;
  spec.xi_min = cfg.xi_min;
  spec.xi_max = cfg.xi_max;
  spec.n_points = cfg.points;
  spec.spacing = cfg.spacing == "linear" ? Spacing::Linear : Spacing::Log;
  spec.orientation_list = parse_double_list(cfg.orientations, "--orientations");
  spec.coupling = cfg.coupling;
  spec.backend = parse_backend(cfg.backend);
  return {sweep_xi(spec), false};
}

Artifact run_lifetime(const RunConfig& cfg) {
  LifetimeSpec spec;
  spec.p_list = parse_double_list(cfg.p_list, "--p");
  spec.re_gamma = cfg.re_gamma;
  spec.t_max = cfg.t_max;
  spec.n_steps = cfg.steps;
  return {lifetime_curves(spec), false};
}

Table series_table(const TimeSeries& ts, bool with_p0, bool with_sem) {
  Table table;
  table.add_column("t") = ts.t;
  table.add_column("pop_11") = ts.pop_11;
  if (with_sem) table.add_column("pop_11_sem") = ts.pop_11_sem;
  table.add_column("pop_plus") = ts.pop_plus;
  if (with_sem) table.add_column("pop_plus_sem") = ts.pop_plus_sem;
  table.add_column("pop_minus") = ts.pop_minus;
  if (with_sem) table.add_column("pop_minus_sem") = ts.pop_minus_sem;
  table.add_column("pop_22") = ts.pop_22;
  if (with_sem) table.add_column("pop_22_sem") = ts.pop_22_sem;
  if (with_p0) {
    table.add_column("p0") = ts.p0;
    if (with_sem) table.add_column("p0_sem") = ts.p0_sem;
  }
  return table;
}

Artifact run_evolve(const RunConfig& cfg) {
  const LindbladGenerator gen = build_generator({cfg.re_gamma, cfg.im_gamma});
  const InitialState init = parse_initial(cfg.initial, cfg.p);
  const std::vector<double> grid =
      make_grid(0.0, cfg.t_max, cfg.steps + 1, Spacing::Linear);
  const TimeSeries ts = cfg.conditional ? evolve_conditional(gen, init.density(), grid)
                                        : evolve_master(gen, init.density(), grid);
  return {series_table(ts, cfg.conditional, false), false};
}

Artifact run_trajectories(const RunConfig& cfg) {
  const LindbladGenerator gen = build_generator({cfg.re_gamma, cfg.im_gamma});
  const InitialState init = parse_initial(cfg.initial, cfg.p);
  const std::vector<double> grid =
      make_grid(0.0, cfg.t_max, cfg.steps + 1, Spacing::Linear);
  McOptions opt;
  opt.n_workers = cfg.workers;
  const TimeSeries ts = mc_trajectories(gen, init, grid, cfg.n_traj, cfg.seed, opt);
  return {series_table(ts, true, true), false};
}

Artifact run_crossing(const RunConfig& cfg) {
  Artifact art;
  art.scalar = true;
  art.table.add_column("re_gamma") = {cfg.re_gamma};
  art.table.add_column("t_star") = {ratio_crossing_time(cfg.re_gamma)};
  return art;
}

// Reads a flat key=value file and attributes every key to the subcommand
// that was named on the command line, so the same keys work as flags and as
// config entries.  Command-line flags keep precedence because values from a
// config file only land on options that are still unset.
class FlatKeyConfig : public CLI::ConfigBase {
 public:
  explicit FlatKeyConfig(const CLI::App* root) : root_(root) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::vector<CLI::ConfigItem> items = CLI::ConfigBase::from_config(input);
    const std::vector<CLI::App*> active = root_->get_subcommands();
    if (active.empty()) return items;
    const std::string name = active.front()->get_name();
    for (CLI::ConfigItem& item : items) {
      if (item.parents.empty()) item.parents = {name};
    }
    return items;
  }

 private:
  const CLI::App* root_;
};

void build_app(CLI::App& app, RunConfig& cfg) {
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value config file; flags override");
  app.config_formatter(std::make_shared<FlatKeyConfig>(&app));

  const auto add_common = [&cfg](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("--output", cfg.output, "output path (default: standard output)");
    sub->add_option("--format", cfg.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* rates = app.add_subcommand("rates", "evaluate the coupling at one geometry");
  rates->add_option("--xi", cfg.xi, "effective distance k0(x_a + |x_b|)")
      ->capture_default_str();
  rates->add_option("--dipole-a", cfg.dipole_a, "dipole of atom a as x,y,z")
      ->capture_default_str()
      ->join(',');
  rates->add_option("--dipole-b", cfg.dipole_b, "dipole of atom b as x,y,z")
      ->capture_default_str()
      ->join(',');
  rates->add_option("--ta", cfg.ta, "mirror transmission rate, atom-a side")
      ->capture_default_str();
  rates->add_option("--rb", cfg.rb, "mirror reflection rate, atom-b side")
      ->capture_default_str();
  rates->add_option("--coupling", cfg.coupling, "shortcut for --ta <value> --rb 1");
  rates->add_option("--method", cfg.method, "auto | quadrature | angular")
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "quadrature", "angular"}));
  add_common(rates);
  rates->callback([&cfg, rates] {
    cfg.subcommand = "rates";
    if (rates->count("--coupling") > 0) {
      cfg.ta = cfg.coupling;
      cfg.rb = 1.0;
    }
    if (cfg.format.empty()) cfg.format = "json";
  });

  CLI::App* sweep = app.add_subcommand("sweep", "coupling versus effective distance");
  sweep->add_option("--xi-min", cfg.xi_min, "smallest xi")->capture_default_str();
  sweep->add_option("--xi-max", cfg.xi_max, "largest xi")->capture_default_str();
  sweep->add_option("--points", cfg.points, "number of xi values")->capture_default_str();
  sweep->add_option("--spacing", cfg.spacing, "log | linear")
      ->capture_default_str()
      ->check(CLI::IsMember({"log", "linear"}));
  sweep->add_option("--orientations", cfg.orientations,
                    "comma list of |d.x| values in [0, 1]")
      ->capture_default_str()
      ->join(',');
  sweep->add_option("--coupling", cfg.coupling, "t_a r_b product")->capture_default_str();
  sweep->add_option("--backend", cfg.backend, "auto | quadrature | angular")
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "quadrature", "angular"}));
  add_common(sweep);
  sweep->callback([&cfg] {
    cfg.subcommand = "sweep";
    if (cfg.format.empty()) cfg.format = "csv";
  });

  CLI::App* lifetime = app.add_subcommand("lifetime", "emission rate and I/I0 curves");
  lifetime->add_option("--re-gamma", cfg.re_gamma, "Re(gamma_ab)")->capture_default_str();
  lifetime->add_option("--p", cfg.p_list, "comma list of excitation probabilities")
      ->capture_default_str()
      ->join(',');
  lifetime->add_option("--t-max", cfg.t_max, "end of the time grid")->capture_default_str();
  lifetime->add_option("--steps", cfg.steps, "number of time steps")->capture_default_str();
  add_common(lifetime);
  lifetime->callback([&cfg] {
    cfg.subcommand = "lifetime";
    if (cfg.format.empty()) cfg.format = "csv";
  });

  const auto add_dynamics_options = [&cfg](CLI::App* sub) {
    sub->add_option("--re-gamma", cfg.re_gamma, "Re(gamma_ab)")->capture_default_str();
    sub->add_option("--im-gamma", cfg.im_gamma, "Im(gamma_ab), the level shift")
        ->capture_default_str();
    sub->add_option("--initial", cfg.initial,
                    "plus | minus | doubly-excited | ground | mixture")
        ->capture_default_str()
        ->check(CLI::IsMember({"plus", "minus", "doubly-excited", "ground", "mixture"}));
    sub->add_option("--p", cfg.p, "per-atom excitation probability (mixture)")
        ->capture_default_str();
    sub->add_option("--t-max", cfg.t_max, "end of the time grid")->capture_default_str();
    sub->add_option("--steps", cfg.steps, "number of time steps")->capture_default_str();
  };

  CLI::App* evolve = app.add_subcommand("evolve", "master-equation populations");
  add_dynamics_options(evolve);
  evolve->add_flag("--conditional", cfg.conditional,
                   "no-jump evolution instead (adds the p0 column)");
  add_common(evolve);
  evolve->callback([&cfg] {
    cfg.subcommand = "evolve";
    if (cfg.format.empty()) cfg.format = "csv";
  });

  CLI::App* traj = app.add_subcommand("trajectories", "Monte Carlo jump unraveling");
  add_dynamics_options(traj);
  traj->add_option("--n", cfg.n_traj, "number of trajectories")->capture_default_str();
  traj->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  traj->add_option("--workers", cfg.workers, "worker threads, 0 = hardware")
      ->capture_default_str();
  add_common(traj);
  traj->callback([&cfg] {
    cfg.subcommand = "trajectories";
    if (cfg.format.empty()) cfg.format = "csv";
  });

  CLI::App* crossing = app.add_subcommand("crossing", "time where I/I0 returns to 1");
  crossing->add_option("--re-gamma", cfg.re_gamma, "Re(gamma_ab), nonzero")
      ->capture_default_str();
  add_common(crossing);
  crossing->callback([&cfg] {
    cfg.subcommand = "crossing";
    if (cfg.format.empty()) cfg.format = "json";
  });
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"mirror-mediated two-atom decay toolkit"};
  build_app(app, cfg);
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("mirrordip");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    throw ConstraintViolation(std::string("usage error: ") + e.what());
  }
  return cfg;
}

int run(const RunConfig& cfg) {
  Artifact artifact;
  if (cfg.subcommand == "rates") {
    artifact = run_rates(cfg);
  } else if (cfg.subcommand == "sweep") {
    artifact = run_sweep(cfg);
  } else if (cfg.subcommand == "lifetime") {
    artifact = run_lifetime(cfg);
  } else if (cfg.subcommand == "evolve") {
    artifact = run_evolve(cfg);
  } else if (cfg.subcommand == "trajectories") {
    artifact = run_trajectories(cfg);
  } else if (cfg.subcommand == "crossing") {
    artifact = run_crossing(cfg);
  } else {
    throw ConstraintViolation("unknown subcommand '" + cfg.subcommand + "'");
  }

  const std::string text = render(cfg, artifact);
  if (cfg.output.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("failed writing to standard output");
  } else {
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + cfg.output);
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("failed writing output file: " + cfg.output);
  }
  return 0;
}

int cli_main(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"mirror-mediated two-atom decay toolkit"};
  build_app(app, cfg);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return run(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace mirrordip

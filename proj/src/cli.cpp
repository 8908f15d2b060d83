#include "uas/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "uas/cell_packing.hpp"
#include "uas/config.hpp"
#include "uas/coverage.hpp"
#include "uas/reliability.hpp"
#include "uas/scenario.hpp"

namespace uas {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::optional<int> trials;
};

// Raised for command-level precondition failures that map to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

fs::path output_dir(const GlobalOptions& opts) {
  fs::path dir = opts.out_dir;
  if (const char* env = std::getenv("UAS_PLANNER_OUT"); env != nullptr && *env != '\0') {
    dir = env;
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

RunConfig resolve_config(const GlobalOptions& opts) {
  RunConfig cfg = opts.config_path.empty() ? default_run_config()
                                           : load_run_config(opts.config_path);
  if (opts.seed) cfg.scenario.seed = *opts.seed;
  if (opts.trials) {
    if (*opts.trials < 1) throw ConfigError("--trials", "must be at least 1");
    cfg.scenario.trials = *opts.trials;
  }
  return cfg;
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<GroundNode> read_gn_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read GN file " + path.string());
  std::vector<GroundNode> gns;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("x,y", 0) != 0) {
        throw ValidationError(fmt::format("{}:{}: expected header 'x,y'", path.string(), line_no));
      }
      continue;
    }
    std::istringstream row(line);
    std::string xs, ys;
    if (!std::getline(row, xs, ',') || !std::getline(row, ys, ',')) {
      throw ValidationError(fmt::format("{}:{}: expected two columns", path.string(), line_no));
    }
    try {
      double x = std::stod(xs);
      double y = std::stod(ys);
      gns.push_back({{x, y}, gns.size()});
    } catch (const std::exception&) {
      throw ValidationError(fmt::format("{}:{}: non-numeric coordinate", path.string(), line_no));
    }
  }
  if (in.bad()) throw IoError("error reading GN file " + path.string());
  return gns;
}

int cmd_coverage(const GlobalOptions& opts, std::ostream& out) {
  RunConfig cfg = resolve_config(opts);
  const ScenarioConfig& sc = cfg.scenario;
  CoverageSpec spec = coverage_spec(sc.radio, sc.environment);
  out << fmt::format("environment            {}\n", sc.environment_name);
  out << fmt::format("downlink radius R_p^d  {:.3f} m\n", spec.radius_dl);
  out << fmt::format("uplink radius R_p^u    {:.3f} m\n", spec.radius_ul);
  out << fmt::format("coverage radius R_p    {:.3f} m ({}-limited)\n", spec.radius,
                     spec.radius_dl <= spec.radius_ul ? "downlink" : "uplink");
  out << fmt::format("hover height h_p       {:.3f} m\n", spec.hover_height);
  out << fmt::format("target arrival P_a     {:.6e} W\n", spec.target_arrival_power);

  json doc = {{"environment", sc.environment_name},
              {"radius_dl_m", spec.radius_dl},
              {"radius_ul_m", spec.radius_ul},
              {"radius_m", spec.radius},
              {"hover_height_m", spec.hover_height},
              {"target_arrival_power_w", spec.target_arrival_power},
              {"config_hash", config_hash(cfg)}};
  fs::path path = output_dir(opts) / "coverage.json";
  write_text_file(path, doc.dump(2) + "\n");
  out << "wrote " << path.string() << "\n";
  return kExitOk;
}

int cmd_pack(const GlobalOptions& opts, const std::string& gn_file, std::ostream& out) {
  RunConfig cfg = resolve_config(opts);
  const ScenarioConfig& sc = cfg.scenario;
  std::vector<GroundNode> gns;
  if (!gn_file.empty()) {
    gns = read_gn_file(gn_file);
  } else {
    auto rng = trial_rng(sc.seed, 0);
    gns = sample_gns(sc.n_gns, sc.region_radius, rng);
  }
  for (const auto& gn : gns) {
    if (std::hypot(gn.pos.x, gn.pos.y) > sc.region_radius * (1.0 + kCoverageRelTol)) {
      throw ValidationError(fmt::format("GN {} at ({}, {}) lies outside the region of radius {} m",
                                        gn.id, gn.pos.x, gn.pos.y, sc.region_radius));
    }
  }
  CoverageSpec spec = coverage_spec(sc.radio, sc.environment);
  CellLayout layout = pack(sc.region_radius, spec, gns);
  if (std::size_t missed = uncovered_count(layout, gns); missed != 0) {
    throw std::logic_error(fmt::format("layout leaves {} GNs uncovered", missed));
  }

  std::ostringstream csv;
  write_layout_csv(csv, layout);
  fs::path path = output_dir(opts) / "layout.csv";
  write_text_file(path, csv.str());

  out << fmt::format("ground nodes           {}\n", gns.size());
  out << fmt::format("coverage radius R_p    {:.3f} m\n", layout.cell_radius);
  out << fmt::format("packed circle radius   {:.3f} m\n", layout.circle_radius);
  out << fmt::format("levels l_max           {}\n", layout.levels);
  out << fmt::format("candidates             {}\n", layout.candidate_count);
  out << fmt::format("cells n                {}\n", layout.size());
  out << "wrote " << path.string() << "\n";
  return kExitOk;
}

int cmd_availability(int n, double lambda, double kappa, std::optional<double> rho,
                     std::ostream& out) {
  if (n < 1) throw ValidationError("--n must be at least 1");
  if (!(kappa > 0.0)) throw ValidationError("--kappa must be positive");
  if (!(lambda >= 0.0)) throw ValidationError("--lambda must be non-negative");
  if (rho && !(*rho > 0.0 && *rho <= 1.0)) throw ValidationError("--rho must lie in (0, 1]");

  TrafficModel traffic{lambda, kappa};
  out << fmt::format("# n={} lambda={} kappa={} delta={}\n", n, lambda, kappa,
                     traffic.intensity());
  out << "u,u_over_n,A,eta\n";
  for (const CurveRow& r : availability_curve(n, traffic)) {
    out << fmt::format("{},{},{},{}\n", r.paps, r.normalized_cost, r.availability,
                       r.utilization);
  }
  if (rho) out << fmt::format("u_opt = {}\n", optimal_pap_count(n, traffic, *rho));
  return kExitOk;
}

int cmd_figure(const GlobalOptions& opts, const std::string& name, std::ostream& out,
               std::ostream& err) {
  if (name != "fig4" && name != "fig5" && name != "fig6") {
    throw ValidationError("unknown figure '" + name + "' (expected fig4, fig5 or fig6)");
  }
  RunConfig cfg = resolve_config(opts);
  fs::path dir = output_dir(opts);
  auto start = std::chrono::steady_clock::now();

  std::ostringstream csv;
  std::size_t rows = 0;
  if (name == "fig4") {
    std::vector<NamedEnvironment> envs;
    for (const auto& env : cfg.fig4.environments) {
      envs.push_back({env, resolve_environment(env, "experiment.fig4.environments")});
    }
    auto table = cell_count_grid(cfg.scenario, envs, cfg.fig4.radii, cfg.fig4.gn_counts);
    write_fig4_csv(csv, table);
    rows = table.size();
    auto issues = check_cell_count_trends(table);
    for (const auto& issue : issues) err << "trend warning: " << issue << "\n";
    out << (issues.empty() ? "trend check: ok\n"
                           : fmt::format("trend check: {} violation(s)\n", issues.size()));
  } else if (name == "fig5") {
    auto table = availability_table(cfg.fig5.n_cells, cfg.fig5.deltas);
    write_fig5_csv(csv, table);
    rows = table.size();
  } else {
    ScenarioConfig sc = cfg.scenario;
    sc.environment_name = cfg.fig6.environment;
    sc.environment = resolve_environment(cfg.fig6.environment, "experiment.fig6.environment");
    sc.n_gns = cfg.fig6.n_gns;
    auto table = cost_vs_radius(sc, cfg.fig6.radii, cfg.fig6.deltas, cfg.fig6.thresholds);
    write_fig6_csv(csv, table);
    rows = table.size();
  }

  fs::path csv_path = dir / (name + ".csv");
  write_text_file(csv_path, csv.str());
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json manifest = {{"config_hash", config_hash(cfg)},
                   {"tool_version", kToolVersion},
                   {"figure", name},
                   {"outputs", {csv_path.string()}},
                   {"wall_time", wall}};
  fs::path manifest_path = dir / (name + ".manifest.json");
  write_text_file(manifest_path, manifest.dump(2) + "\n");
  out << fmt::format("{}: {} rows -> {}\n", name, rows, csv_path.string());
  out << "manifest -> " << manifest_path.string() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deployment planner for UAV-mounted portable access points", "uas_planner"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opts;
  std::uint64_t seed = 0;
  int trials = 0;
  app.add_option("--config", opts.config_path, "JSON configuration file");
  auto* seed_opt = app.add_option("--seed", seed, "Random seed (overrides experiment.seed)");
  app.add_option("--out", opts.out_dir, "Output directory (UAS_PLANNER_OUT overrides)");
  auto* trials_opt =
      app.add_option("--trials", trials, "Monte Carlo trials (overrides experiment.trials)");

  auto* coverage = app.add_subcommand("coverage", "PAP coverage radius and hover height");

  std::string gn_file;
  auto* pack_cmd = app.add_subcommand("pack", "Cell layout for one GN placement");
  pack_cmd->add_option("--gn-file", gn_file, "CSV of GN positions (header x,y)");

  int n = 0;
  double lambda = 0.0;
  double kappa = 1.0;
  double rho = 0.0;
  auto* avail = app.add_subcommand("availability", "Availability curve and optimal PAP count");
  avail->add_option("--n", n, "Number of cells")->required();
  avail->add_option("--lambda", lambda, "Arrival rate per idle cell")->required();
  avail->add_option("--kappa", kappa, "Service rate per busy PAP");
  auto* rho_opt = avail->add_option("--rho", rho, "Availability threshold");

  std::string figure_name;
  auto* figure = app.add_subcommand("figure", "Regenerate a figure dataset");
  figure->add_option("name", figure_name, "fig4, fig5 or fig6")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }
  if (seed_opt->count() > 0) opts.seed = seed;
  if (trials_opt->count() > 0) opts.trials = trials;

  try {
    if (coverage->parsed()) return cmd_coverage(opts, out);
    if (pack_cmd->parsed()) return cmd_pack(opts, gn_file, out);
    if (avail->parsed()) {
      std::optional<double> threshold;
      if (rho_opt->count() > 0) threshold = rho;
      return cmd_availability(n, lambda, kappa, threshold, out);
    }
    if (figure->parsed()) return cmd_figure(opts, figure_name, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace uas

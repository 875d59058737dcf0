// ferrowrite: mean-field magnetization sweeps and the pulse-angle
// tables that write the corresponding thermal states into a two-qubit
// register.  See README.md for the subcommand reference.

#include <exception>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ferrowrite/commands.hpp"

namespace {

using ferrowrite::cli::Overrides;

struct CommonArgs {
  std::optional<std::string> config_path;
  Overrides overrides;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path,
                  "JSON config file; flags override its values");
  cmd->add_option("--spin", args.overrides.spin, "spin S (half-integer)");
  cmd->add_option("--lande-g", args.overrides.lande_g, "Lande g factor");
  cmd->add_option("--neighbors", args.overrides.neighbors,
                  "coordination number z");
  cmd->add_option("--exchange-energy", args.overrides.exchange_energy,
                  "exchange energy J_ex in joule");
  cmd->add_option("--lambda", args.overrides.lambda,
                  "molecular-field coefficient (excludes --exchange-energy)");
  cmd->add_option("--lambda-prime-ratio", args.overrides.lambda_prime_ratio,
                  "cubic coupling as molar lambda'/lambda");
  cmd->add_option("--epsilon", args.overrides.epsilon,
                  "pseudo-pure polarization");
  cmd->add_option("--t-min", args.overrides.t_min, "grid start");
  cmd->add_option("--t-max", args.overrides.t_max, "grid end");
  cmd->add_option("--steps", args.overrides.steps, "grid point count");
  cmd->add_option("--units", args.overrides.units,
                  "grid units: reduced (of T_c) or kelvin");
  cmd->add_option("--b0", args.overrides.applied_fields,
                  "applied field in tesla (repeatable)");
  cmd->add_option("--out", args.overrides.out_path, "output file path");
  cmd->add_option("--format", args.overrides.format, "csv or json");
}

int run_guarded(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const ferrowrite::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  } catch (const ferrowrite::SolverError& err) {
    std::cerr << "solver error: " << err.what() << "\n";
    return 2;
  } catch (const ferrowrite::CertificationError& err) {
    std::cerr << "certification error: " << err.what() << "\n";
    return 3;
  } catch (const ferrowrite::RepresentationError& err) {
    std::cerr << "certification error: " << err.what() << "\n";
    return 3;
  } catch (const ferrowrite::BracketError& err) {
    std::cerr << "scan error: " << err.what() << "\n";
    return 1;
  } catch (const ferrowrite::IoError& err) {
    std::cerr << "io error: " << err.what() << "\n";
    return 4;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Thermal-state writing for a four-level spin register backed by a "
      "mean-field ferromagnet"};
  app.require_subcommand(1);

  // brillouin
  auto* brillouin_cmd =
      app.add_subcommand("brillouin", "tabulate the thermal-average function");
  ferrowrite::cli::BrillouinParams bp;
  std::string brillouin_out;
  std::string brillouin_format = "csv";
  brillouin_cmd->add_option("--spin", bp.spin, "spin S (half-integer)");
  brillouin_cmd->add_option("--y-min", bp.y_min, "argument range start");
  brillouin_cmd->add_option("--y-max", bp.y_max, "argument range end");
  brillouin_cmd->add_option("--steps", bp.steps, "sample count");
  brillouin_cmd->add_option("--out", brillouin_out, "output file path");
  brillouin_cmd->add_option("--format", brillouin_format, "csv or json");

  // curve
  auto* curve_cmd = app.add_subcommand(
      "curve", "second-order magnetization curves with write angles");
  CommonArgs curve_args;
  add_common_options(curve_cmd, curve_args);

  // hysteresis
  auto* hys_cmd = app.add_subcommand(
      "hysteresis", "first-order heating/cooling branches");
  CommonArgs hys_args;
  add_common_options(hys_cmd, hys_args);

  // critical-field
  auto* crit_cmd = app.add_subcommand(
      "critical-field", "smallest field that closes the hysteresis loop");
  CommonArgs crit_args;
  ferrowrite::cli::FieldScanParams scan;
  add_common_options(crit_cmd, crit_args);
  crit_cmd->add_option("--b-scan-min", scan.b_min, "field scan start, tesla");
  crit_cmd->add_option("--b-scan-max", scan.b_max, "field scan end, tesla");
  crit_cmd->add_option("--b-scan-steps", scan.b_steps, "field scan points");

  // angle-table
  auto* table_cmd = app.add_subcommand(
      "angle-table", "certified pulse angles along one sweep branch");
  CommonArgs table_args;
  std::string table_direction = "up";
  add_common_options(table_cmd, table_args);
  table_cmd->add_option("--direction", table_direction, "up or down");

  // roundtrip
  auto* round_cmd = app.add_subcommand(
      "roundtrip", "single-point write/read consistency check");
  CommonArgs round_args;
  double round_t = 0.5;
  double round_seed = 1.0;
  add_common_options(round_cmd, round_args);
  round_cmd->add_option("--t", round_t,
                        "temperature (in --units, default reduced)");
  round_cmd->add_option("--seed", round_seed, "branch seed in [-1, 1]");

  CLI11_PARSE(app, argc, argv);

  using ferrowrite::cli::resolve_config;

  if (brillouin_cmd->parsed()) {
    return run_guarded([&] {
      ferrowrite::cli::run_brillouin_command(
          bp, brillouin_out, ferrowrite::cli::parse_format(brillouin_format));
    });
  }
  if (curve_cmd->parsed()) {
    return run_guarded([&] {
      ferrowrite::cli::run_curve_command(
          resolve_config(curve_args.config_path, curve_args.overrides));
    });
  }
  if (hys_cmd->parsed()) {
    return run_guarded([&] {
      ferrowrite::cli::run_hysteresis_command(
          resolve_config(hys_args.config_path, hys_args.overrides));
    });
  }
  if (crit_cmd->parsed()) {
    return run_guarded([&] {
      ferrowrite::cli::run_critical_field_command(
          resolve_config(crit_args.config_path, crit_args.overrides), scan);
    });
  }
  if (table_cmd->parsed()) {
    return run_guarded([&] {
      ferrowrite::SweepDirection dir;
      if (table_direction == "up") {
        dir = ferrowrite::SweepDirection::up;
      } else if (table_direction == "down") {
        dir = ferrowrite::SweepDirection::down;
      } else {
        throw ferrowrite::ConfigError(
            "direction must be 'up' or 'down', got '" + table_direction +
            "'");
      }
      ferrowrite::cli::run_angle_table_command(
          resolve_config(table_args.config_path, table_args.overrides), dir);
    });
  }
  if (round_cmd->parsed()) {
    return run_guarded([&] {
      ferrowrite::cli::run_roundtrip_command(
          resolve_config(round_args.config_path, round_args.overrides),
          round_t, round_seed);
    });
  }
  return 0;
}

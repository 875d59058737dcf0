#pragma once

#include <iostream>
#include <span>
#include <string>
#include <vector>

#include "ferrowrite/config.hpp"
#include "ferrowrite/table_io.hpp"

namespace ferrowrite::cli {

namespace detail {

inline void emit_curve(const RunConfig& cfg,
                       std::span<const CurvePoint> points) {
  if (cfg.out_path.empty()) throw ConfigError("missing --out path");
  const std::filesystem::path path = resolve_out_path(cfg.out_path);
  const std::string body = cfg.format == OutputFormat::csv
                               ? curve_csv(points)
                               : curve_json(points);
  write_atomic(path, body);
  std::cout << "wrote " << points.size() << " rows to " << path.string()
            << "\n";
}

}  // namespace detail

// `curve`: continuous-transition magnetization curves, one group of
// rows per applied field, heating order, branch = single.
inline void run_curve_command(const RunConfig& cfg) {
  if (cfg.lambda_prime_ratio != 0.0)
    throw ConfigError(
        "curve requires lambda_prime_ratio = 0; use the hysteresis command");
  const MaterialModel model = build_material(cfg);
  const std::vector<double> grid = temperature_grid(cfg, model);
  const std::vector<SecondOrderRun> runs =
      run_second_order(model, grid, cfg.applied_fields, cfg.epsilon);

  std::vector<CurvePoint> rows;
  for (const SecondOrderRun& run : runs) {
    rows.insert(rows.end(), run.points.begin(), run.points.end());
    std::cout << "B0 = " << format_double(run.applied_b)
              << " T: up/down branch gap " << format_double(run.branch_gap)
              << "\n";
  }
  detail::emit_curve(cfg, rows);
}

// `hysteresis`: first-order branches, heating rows then cooling rows
// per applied field.
inline void run_hysteresis_command(const RunConfig& cfg) {
  if (cfg.lambda_prime_ratio == 0.0)
    throw ConfigError(
        "hysteresis requires lambda_prime_ratio > 0; use the curve command");
  const MaterialModel model = build_material(cfg);
  const std::vector<double> grid = temperature_grid(cfg, model);
  const std::vector<FirstOrderRun> runs =
      run_first_order(model, grid, cfg.applied_fields, cfg.epsilon);

  std::vector<CurvePoint> rows;
  for (const FirstOrderRun& run : runs) {
    rows.insert(rows.end(), run.heating.begin(), run.heating.end());
    rows.insert(rows.end(), run.cooling.begin(), run.cooling.end());
    std::cout << "B0 = " << format_double(run.applied_b) << " T: "
              << run.heating_transitions.size() << " heating / "
              << run.cooling_transitions.size()
              << " cooling transitions, branch gap "
              << format_double(run.max_branch_gap) << "\n";
    for (const Transition& tr : run.heating_transitions)
      std::cout << "  heating jump at T = " << format_double(tr.temperature)
                << " K, delta m = " << format_double(tr.delta_m) << "\n";
    for (const Transition& tr : run.cooling_transitions)
      std::cout << "  cooling jump at T = " << format_double(tr.temperature)
                << " K, delta m = " << format_double(tr.delta_m) << "\n";
  }
  detail::emit_curve(cfg, rows);
}

struct FieldScanParams {
  double b_min = 0.0;
  double b_max = 60.0;
  int b_steps = 13;
};

// `critical-field`: smallest applied field on the scan grid that makes
// both sweep directions transition-free and pointwise coincident.
inline void run_critical_field_command(const RunConfig& cfg,
                                       const FieldScanParams& scan) {
  if (cfg.lambda_prime_ratio == 0.0)
    throw ConfigError("critical-field requires lambda_prime_ratio > 0");
  if (!std::isfinite(scan.b_min) || scan.b_min < 0.0)
    throw ConfigError("b-min must be >= 0");
  if (!std::isfinite(scan.b_max) || scan.b_max <= scan.b_min)
    throw ConfigError("b-max must exceed b-min");
  if (scan.b_steps < 2) throw ConfigError("b-steps must be at least 2");

  const MaterialModel model = build_material(cfg);
  const std::vector<double> grid = temperature_grid(cfg, model);
  std::vector<double> fields(static_cast<std::size_t>(scan.b_steps));
  for (int i = 0; i < scan.b_steps; ++i)
    fields[static_cast<std::size_t>(i)] =
        scan.b_min + (scan.b_max - scan.b_min) * static_cast<double>(i) /
                         static_cast<double>(scan.b_steps - 1);

  const double b_c = find_critical_field(model, grid, fields);
  std::cout << "critical field: " << format_double(b_c) << " T\n";

  if (!cfg.out_path.empty()) {
    nlohmann::ordered_json doc;
    doc["critical_field_T"] = b_c;
    doc["coincidence_tol"] = 1e-8;
    doc["fields_scanned_T"] = fields;
    doc["t_grid_points"] = grid.size();
    doc["t_grid_max_K"] = grid.back();
    write_atomic(resolve_out_path(cfg.out_path), doc.dump(2) + "\n");
  }
}

// `angle-table`: certified write angles along one branch of the sweep,
// emitted in the standard curve schema.
inline void run_angle_table_command(const RunConfig& cfg,
                                    SweepDirection direction) {
  if (cfg.applied_fields.size() != 1)
    throw ConfigError("angle-table takes exactly one applied field");
  const MaterialModel model = build_material(cfg);
  const std::vector<double> grid = temperature_grid(cfg, model);
  const double t_c = critical_temperature(model);
  const double seed = direction == SweepDirection::up ? 1.0 : 0.0;
  const SweepResult sweep = sweep_temperature(
      model, grid, cfg.applied_fields.front(), direction, seed);
  const Branch branch =
      direction == SweepDirection::up ? Branch::up : Branch::down;
  const std::vector<CurvePoint> rows =
      ferrowrite::detail::process_sweep(model, t_c, branch, sweep,
                                        cfg.epsilon);
  detail::emit_curve(cfg, rows);
}

// `roundtrip`: one write/read cycle at a single (T, B0) point.
inline void run_roundtrip_command(const RunConfig& cfg, double t_value,
                                  double branch_seed) {
  if (cfg.applied_fields.size() != 1)
    throw ConfigError("roundtrip takes exactly one applied field");
  if (!std::isfinite(t_value) || t_value < 0.0)
    throw ConfigError("roundtrip temperature must be >= 0");
  const MaterialModel model = build_material(cfg);
  const double temperature = cfg.units == GridUnits::reduced
                                 ? t_value * critical_temperature(model)
                                 : t_value;
  const CurvePoint point = roundtrip_magnetization(
      model, temperature, cfg.applied_fields.front(), branch_seed,
      cfg.epsilon);
  std::cout << "T = " << format_double(point.temperature)
            << " K: m = " << format_double(point.m)
            << ", M_nmr = " << format_double(point.nmr_magnetization)
            << " J/T, discrepancy = " << format_double(point.discrepancy)
            << ", D = " << format_double(point.trace_dist) << "\n";
  if (!cfg.out_path.empty()) {
    const std::vector<CurvePoint> rows{point};
    detail::emit_curve(cfg, rows);
  }
}

struct BrillouinParams {
  double spin = 1.5;
  double y_min = -10.0;
  double y_max = 10.0;
  int steps = 201;
};

// `brillouin`: tabulates the thermal-average function itself.
inline void run_brillouin_command(const BrillouinParams& params,
                                  const std::string& out_path,
                                  OutputFormat format) {
  if (!is_valid_spin(params.spin))
    throw ConfigError("spin must be a positive half-integer");
  if (!std::isfinite(params.y_min) || !std::isfinite(params.y_max) ||
      params.y_min >= params.y_max)
    throw ConfigError("require finite y-min < y-max");
  if (params.steps < 2) throw ConfigError("steps must be at least 2");
  if (out_path.empty()) throw ConfigError("missing --out path");

  std::string csv = "spin,y,value\n";
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (int i = 0; i < params.steps; ++i) {
    const double y =
        params.y_min + (params.y_max - params.y_min) *
                           static_cast<double>(i) /
                           static_cast<double>(params.steps - 1);
    const double value = brillouin(params.spin, y);
    if (format == OutputFormat::csv) {
      csv += format_double(params.spin);
      csv += ',';
      csv += format_double(y);
      csv += ',';
      csv += format_double(value);
      csv += '\n';
    } else {
      nlohmann::ordered_json rec;
      rec["spin"] = params.spin;
      rec["y"] = y;
      rec["value"] = value;
      arr.push_back(rec);
    }
  }
  const std::filesystem::path path = resolve_out_path(out_path);
  write_atomic(path, format == OutputFormat::csv ? csv : arr.dump(2) + "\n");
  std::cout << "wrote " << params.steps << " rows to " << path.string()
            << "\n";
}

}  // namespace ferrowrite::cli

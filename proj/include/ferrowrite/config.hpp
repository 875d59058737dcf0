#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ferrowrite/errors.hpp"
#include "ferrowrite/material.hpp"
#include "ferrowrite/table_io.hpp"

namespace ferrowrite::cli {

enum class GridUnits { reduced, kelvin };
enum class OutputFormat { csv, json };

// Resolved run parameters.  Defaults describe the reference material:
// S = 3/2, g = 2, z = 6, J_ex = (83/15) k_B, which lands T_c at 83 K.
// The cubic coupling is specified as the dimensionless ratio
// lambda'/lambda of the molar-magnetization expansion; per ion that is
// lambda' = ratio * lambda * N_A^2, strong enough to drive the
// transition first order from ratio ~ 1.5e-3 upward.
struct RunConfig {
  double spin = 1.5;
  double lande_g = 2.0;
  int neighbors = 6;
  std::optional<double> exchange_energy;  // J; mutually exclusive with lambda
  std::optional<double> lambda;           // T/(J/T)
  double lambda_prime_ratio = 0.0;
  double epsilon = 1e-5;
  double t_max = 2.0;
  std::optional<double> t_min;  // defaults to t_max / steps (grid on (0, t_max])
  int steps = 300;
  GridUnits units = GridUnits::reduced;
  std::vector<double> applied_fields{0.0};
  std::string out_path;
  OutputFormat format = OutputFormat::csv;
};

inline constexpr double default_exchange_energy =
    (83.0 / 15.0) * constants::boltzmann;

// Flag-level view of the same fields; unset members fall through to
// the config file and then to the defaults.
struct Overrides {
  std::optional<double> spin;
  std::optional<double> lande_g;
  std::optional<int> neighbors;
  std::optional<double> exchange_energy;
  std::optional<double> lambda;
  std::optional<double> lambda_prime_ratio;
  std::optional<double> epsilon;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<int> steps;
  std::optional<std::string> units;
  std::optional<std::string> format;
  std::optional<std::string> out_path;
  std::vector<double> applied_fields;  // empty means "not given"
};

inline GridUnits parse_units(const std::string& text) {
  if (text == "reduced") return GridUnits::reduced;
  if (text == "kelvin") return GridUnits::kelvin;
  throw ConfigError("units must be 'reduced' or 'kelvin', got '" + text +
                    "'");
}

inline OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw ConfigError("format must be 'csv' or 'json', got '" + text + "'");
}

namespace detail {

inline double require_number(const nlohmann::json& v, const char* key) {
  if (!v.is_number())
    throw ConfigError(std::string("config key '") + key +
                      "' must be a number");
  return v.get<double>();
}

}  // namespace detail

// Applies a JSON config file onto `cfg`.  Every key is checked against
// the known set so typos fail loudly instead of silently running with
// defaults.
inline void merge_config_file(RunConfig& cfg, const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& err) {
    throw ConfigError(std::string("config file ") + path + ": " +
                      err.what());
  }
  if (!doc.is_object())
    throw ConfigError("config file must hold a JSON object");

  for (const auto& [key, value] : doc.items()) {
    if (key == "spin") {
      cfg.spin = detail::require_number(value, "spin");
    } else if (key == "lande_g") {
      cfg.lande_g = detail::require_number(value, "lande_g");
    } else if (key == "neighbors") {
      if (!value.is_number_integer())
        throw ConfigError("config key 'neighbors' must be an integer");
      cfg.neighbors = value.get<int>();
    } else if (key == "exchange_energy") {
      cfg.exchange_energy = detail::require_number(value, "exchange_energy");
    } else if (key == "lambda") {
      cfg.lambda = detail::require_number(value, "lambda");
    } else if (key == "lambda_prime_ratio") {
      cfg.lambda_prime_ratio =
          detail::require_number(value, "lambda_prime_ratio");
    } else if (key == "epsilon") {
      cfg.epsilon = detail::require_number(value, "epsilon");
    } else if (key == "t_min") {
      cfg.t_min = detail::require_number(value, "t_min");
    } else if (key == "t_max") {
      cfg.t_max = detail::require_number(value, "t_max");
    } else if (key == "steps") {
      if (!value.is_number_integer())
        throw ConfigError("config key 'steps' must be an integer");
      cfg.steps = value.get<int>();
    } else if (key == "units") {
      if (!value.is_string())
        throw ConfigError("config key 'units' must be a string");
      cfg.units = parse_units(value.get<std::string>());
    } else if (key == "format") {
      if (!value.is_string())
        throw ConfigError("config key 'format' must be a string");
      cfg.format = parse_format(value.get<std::string>());
    } else if (key == "out") {
      if (!value.is_string())
        throw ConfigError("config key 'out' must be a string");
      cfg.out_path = value.get<std::string>();
    } else if (key == "applied_fields") {
      if (!value.is_array())
        throw ConfigError("config key 'applied_fields' must be an array");
      cfg.applied_fields.clear();
      for (const auto& b : value)
        cfg.applied_fields.push_back(
            detail::require_number(b, "applied_fields"));
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

inline void apply_overrides(RunConfig& cfg, const Overrides& ov) {
  if (ov.spin) cfg.spin = *ov.spin;
  if (ov.lande_g) cfg.lande_g = *ov.lande_g;
  if (ov.neighbors) cfg.neighbors = *ov.neighbors;
  if (ov.exchange_energy) {
    cfg.exchange_energy = *ov.exchange_energy;
    cfg.lambda.reset();  // the flag decides which coupling form wins
  }
  if (ov.lambda) {
    cfg.lambda = *ov.lambda;
    cfg.exchange_energy.reset();
  }
  if (ov.lambda_prime_ratio) cfg.lambda_prime_ratio = *ov.lambda_prime_ratio;
  if (ov.epsilon) cfg.epsilon = *ov.epsilon;
  if (ov.t_min) cfg.t_min = *ov.t_min;
  if (ov.t_max) cfg.t_max = *ov.t_max;
  if (ov.steps) cfg.steps = *ov.steps;
  if (ov.units) cfg.units = parse_units(*ov.units);
  if (ov.format) cfg.format = parse_format(*ov.format);
  if (ov.out_path) cfg.out_path = *ov.out_path;
  if (!ov.applied_fields.empty()) cfg.applied_fields = ov.applied_fields;
}

inline void validate_config(const RunConfig& cfg) {
  if (!is_valid_spin(cfg.spin))
    throw ConfigError("spin must be a positive half-integer");
  if (!std::isfinite(cfg.lande_g) || cfg.lande_g <= 0.0)
    throw ConfigError("lande_g must be positive");
  if (cfg.neighbors < 1) throw ConfigError("neighbors must be at least 1");
  if (cfg.exchange_energy && cfg.lambda)
    throw ConfigError(
        "exchange_energy and lambda are mutually exclusive; give one");
  if (cfg.exchange_energy && !std::isfinite(*cfg.exchange_energy))
    throw ConfigError("exchange_energy must be finite");
  if (cfg.lambda && !std::isfinite(*cfg.lambda))
    throw ConfigError("lambda must be finite");
  if (!std::isfinite(cfg.lambda_prime_ratio) || cfg.lambda_prime_ratio < 0.0)
    throw ConfigError("lambda_prime_ratio must be >= 0");
  if (!std::isfinite(cfg.epsilon) || cfg.epsilon <= 0.0 || cfg.epsilon > 1.0)
    throw ConfigError("epsilon must lie in (0, 1]");
  if (cfg.steps < 2) throw ConfigError("steps must be at least 2");
  if (!std::isfinite(cfg.t_max) || cfg.t_max <= 0.0)
    throw ConfigError("t_max must be positive");
  if (cfg.t_min) {
    if (!std::isfinite(*cfg.t_min) || *cfg.t_min < 0.0)
      throw ConfigError("t_min must be >= 0");
    if (*cfg.t_min >= cfg.t_max) throw ConfigError("t_min must be below t_max");
  }
  if (cfg.applied_fields.empty())
    throw ConfigError("applied_fields must not be empty");
  for (const double b : cfg.applied_fields)
    if (!std::isfinite(b)) throw ConfigError("applied_fields must be finite");
}

// Materializes the coupling parameters.  The molar cubic ratio is
// converted to the per-ion lambda' here, in one place.
inline MaterialModel build_material(const RunConfig& cfg) {
  MaterialModel model;
  if (cfg.lambda) {
    model = material_from_lambda(cfg.spin, cfg.lande_g, cfg.neighbors,
                                 *cfg.lambda, 0.0);
  } else {
    model = MaterialModel{cfg.spin, cfg.lande_g, cfg.neighbors,
                          cfg.exchange_energy.value_or(
                              default_exchange_energy),
                          0.0};
    validate_material(model);
  }
  const double lambda = exchange_lambda(model);
  if (lambda <= 0.0)
    throw ConfigError("coupling must be ferromagnetic (lambda > 0)");
  model.lambda_prime = cfg.lambda_prime_ratio * lambda *
                       constants::avogadro * constants::avogadro;
  return model;
}

// Ascending temperature grid in kelvin.  Reduced units scale by T_c;
// with t_min unset the grid is `steps` uniform points on (0, t_max].
inline std::vector<double> temperature_grid(const RunConfig& cfg,
                                            const MaterialModel& model) {
  const double scale =
      cfg.units == GridUnits::reduced ? critical_temperature(model) : 1.0;
  const double hi = cfg.t_max;
  const double lo = cfg.t_min.value_or(hi / static_cast<double>(cfg.steps));
  std::vector<double> grid(static_cast<std::size_t>(cfg.steps));
  const double span = hi - lo;
  for (int i = 0; i < cfg.steps; ++i)
    grid[static_cast<std::size_t>(i)] =
        scale * (lo + span * static_cast<double>(i) /
                          static_cast<double>(cfg.steps - 1));
  return grid;
}

// Full resolution pipeline: defaults, then file, then flags, then
// validation.
inline RunConfig resolve_config(const std::optional<std::string>& config_path,
                                const Overrides& overrides) {
  RunConfig cfg;
  if (config_path) merge_config_file(cfg, *config_path);
  apply_overrides(cfg, overrides);
  validate_config(cfg);
  return cfg;
}

}  // namespace ferrowrite::cli

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ferrowrite/experiment.hpp"

using namespace ferrowrite;

namespace {
const MaterialModel reference{1.5, 2.0, 6,
                              (83.0 / 15.0) * constants::boltzmann, 0.0};
const double t_c = critical_temperature(reference);

MaterialModel first_order(double ratio) {
  MaterialModel model = reference;
  const double na = constants::avogadro;
  model.lambda_prime = ratio * exchange_lambda(model) * na * na;
  return model;
}

std::vector<double> reduced_grid(int n, double t_hi) {
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i)
    grid[i] = t_hi * t_c * static_cast<double>(i + 1) /
              static_cast<double>(n);
  return grid;
}
}  // namespace

TEST_CASE("second-order run: structure and round-trip fidelity") {
  const auto grid = reduced_grid(150, 2.0);
  const std::vector<double> fields{0.0, 6.0};
  const auto runs = run_second_order(reference, grid, fields, 1e-5);
  REQUIRE(runs.size() == 2);

  for (const auto& run : runs) {
    REQUIRE(run.points.size() == grid.size());
    CHECK(run.branch_gap <= 1e-8);
    for (const auto& p : run.points) {
      CHECK(p.branch == Branch::single);
      CHECK(p.trace_dist < 1e-10);
      CHECK(p.discrepancy < 1e-6);
      CHECK(p.t_reduced == Catch::Approx(p.temperature / t_c));
      // The readout reproduces the mean-field moment.
      CHECK(std::abs(p.nmr_magnetization - p.magnetization) <=
            1e-6 * saturation_moment(reference));
    }
  }

  // Zero-field curve vanishes above T_c; in-field curve does not.
  const auto& zero_field = runs[0];
  const auto& in_field = runs[1];
  CHECK(std::abs(zero_field.points.back().m) < 1e-6);
  CHECK(zero_field.points.front().m > 0.99);
  CHECK(in_field.points.back().m > 0.01);

  // In-field magnetization exceeds the zero-field one everywhere.
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(in_field.points[i].m >= zero_field.points[i].m - 1e-9);
}

TEST_CASE("second-order run rejects a cubic model") {
  const auto grid = reduced_grid(10, 2.0);
  const std::vector<double> fields{0.0};
  CHECK_THROWS_AS(
      run_second_order(first_order(1e-2), grid, fields, 1e-5),
      std::invalid_argument);
  CHECK_THROWS_AS(run_first_order(reference, grid, fields, 1e-5),
                  std::invalid_argument);
}

TEST_CASE("first-order run: hysteresis bookkeeping") {
  const MaterialModel model = first_order(1e-2);
  const auto grid = reduced_grid(300, 2.0);
  const std::vector<double> fields{0.0};
  const auto runs = run_first_order(model, grid, fields, 1e-5);
  REQUIRE(runs.size() == 1);
  const auto& run = runs[0];

  REQUIRE(run.heating.size() == grid.size());
  REQUIRE(run.cooling.size() == grid.size());
  REQUIRE(run.heating_transitions.size() == 1);
  REQUIRE(run.cooling_transitions.size() == 1);

  // The hysteresis loop is wide open between the jumps.
  CHECK(run.max_branch_gap > 0.8);
  CHECK(run.heating_transitions[0].temperature >
        run.cooling_transitions[0].temperature);

  // Branch labels and traversal order.
  CHECK(run.heating.front().branch == Branch::up);
  CHECK(run.cooling.front().branch == Branch::down);
  CHECK(run.heating.front().temperature < run.heating.back().temperature);
  CHECK(run.cooling.front().temperature > run.cooling.back().temperature);

  // Every point still writes and reads faithfully.
  for (const auto& p : run.heating) CHECK(p.discrepancy < 1e-6);
  for (const auto& p : run.cooling) CHECK(p.discrepancy < 1e-6);
}

TEST_CASE("roundtrip at interior and edge points") {
  // Deep ordered phase.
  const auto low = roundtrip_magnetization(reference, 0.5 * t_c, 0.0, 1.0,
                                           1e-5);
  CHECK(low.m > 0.9);
  CHECK(low.discrepancy < 1e-6);
  CHECK(low.trace_dist < 1e-10);

  // T = 0: exact saturation, exact write.
  const auto zero = roundtrip_magnetization(reference, 0.0, 0.0, 1.0, 1e-5);
  CHECK(zero.m == 1.0);
  CHECK(zero.nmr_magnetization ==
        Catch::Approx(saturation_moment(reference)).epsilon(1e-14));
  CHECK(zero.discrepancy < 1e-12);

  // Upper grid edge t = 2: paramagnetic, both sides ~ 0.
  const auto high = roundtrip_magnetization(reference, 2.0 * t_c, 0.0, 1.0,
                                            1e-5);
  CHECK(std::abs(high.m) < 1e-8);
  CHECK(high.discrepancy < 1e-6);

  // Epsilon independence of the readout.
  const auto eps_a = roundtrip_magnetization(reference, 0.5 * t_c, 0.0, 1.0,
                                             1e-5);
  const auto eps_b = roundtrip_magnetization(reference, 0.5 * t_c, 0.0, 1.0,
                                             0.5);
  CHECK(eps_a.nmr_magnetization ==
        Catch::Approx(eps_b.nmr_magnetization).epsilon(1e-12));
}

TEST_CASE("discrepancy normalization") {
  // discrepancy = |M - M_nmr| / (g mu_B S) by definition.
  const auto p = roundtrip_magnetization(reference, 0.7 * t_c, 1.0, 1.0,
                                         1e-5);
  const double expected = std::abs(p.magnetization - p.nmr_magnetization) /
                          saturation_moment(reference);
  CHECK(p.discrepancy == Catch::Approx(expected).margin(1e-18));
}

#pragma once

// Umbrella header: thermal write/read simulation for a four-level spin
// system coupled to a mean-field ferromagnet.

#include "ferrowrite/angle_map.hpp"
#include "ferrowrite/brillouin.hpp"
#include "ferrowrite/constants.hpp"
#include "ferrowrite/density_matrix.hpp"
#include "ferrowrite/errors.hpp"
#include "ferrowrite/experiment.hpp"
#include "ferrowrite/free_energy.hpp"
#include "ferrowrite/material.hpp"
#include "ferrowrite/rotations.hpp"
#include "ferrowrite/self_consistency.hpp"
#include "ferrowrite/sweep.hpp"

// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

// Umbrella header.

#pragma once

#include "modent/error.hpp"
#include "modent/fock/density.hpp"
#include "modent/fock/mode.hpp"
#include "modent/fock/state.hpp"
#include "modent/tps/factorize.hpp"
#include "modent/tps/oscillator.hpp"
#include "modent/tps/random.hpp"
#include "modent/tps/schmidt.hpp"
#include "modent/tps/structure.hpp"
#include "modent/couplers/association.hpp"
#include "modent/couplers/coupler.hpp"
#include "modent/couplers/linear.hpp"
#include "modent/couplers/reservoir.hpp"
#include "modent/bell/chsh.hpp"
#include "modent/bell/measurement.hpp"
#include "modent/bell/optimize.hpp"
#include "modent/bell/rng.hpp"

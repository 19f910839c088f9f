#pragma once

// Umbrella header for the engine (no HTTP or CLI dependencies).

#include "no3theta/analysis.hpp"
#include "no3theta/angle.hpp"
#include "no3theta/constructions.hpp"
#include "no3theta/errors.hpp"
#include "no3theta/grid.hpp"
#include "no3theta/hypergraph.hpp"
#include "no3theta/oracle.hpp"
#include "no3theta/solver.hpp"

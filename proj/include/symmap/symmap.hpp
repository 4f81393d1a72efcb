#pragma once

#include "symmap/errors.hpp"
#include "symmap/graph.hpp"
#include "symmap/translation.hpp"
#include "symmap/chip.hpp"
#include "symmap/symmetry.hpp"
#include "symmap/topology.hpp"
#include "symmap/matching.hpp"
#include "symmap/circuit.hpp"
#include "symmap/scoring.hpp"
#include "symmap/io.hpp"
#include "symmap/bench.hpp"

#pragma once

#include "pebbling/error.hpp"
#include "pebbling/families.hpp"
#include "pebbling/fixtures.hpp"
#include "pebbling/graph.hpp"
#include "pebbling/lattice.hpp"
#include "pebbling/lemke.hpp"
#include "pebbling/pebbling_number.hpp"
#include "pebbling/properties.hpp"
#include "pebbling/solver.hpp"
#include "pebbling/thresholds.hpp"
#include "pebbling/trees.hpp"

#pragma once

// Umbrella header.

#include "fourbar/scalar.hpp"
#include "fourbar/laurent.hpp"
#include "fourbar/newton_polygon.hpp"
#include "fourbar/toric_division.hpp"
#include "fourbar/poly_io.hpp"
#include "fourbar/mechanism.hpp"
#include "fourbar/params_io.hpp"
#include "fourbar/balance.hpp"
#include "fourbar/trajectory.hpp"
#include "fourbar/report_io.hpp"

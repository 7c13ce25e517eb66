#pragma once

/// Umbrella header: polarization optics on the Poincare sphere with the
/// dichroic-element / Lorentz-boost correspondence.

#include "cli.hpp"
#include "geometry.hpp"
#include "jones.hpp"
#include "linalg.hpp"
#include "lorentz.hpp"
#include "phases.hpp"
#include "report.hpp"
#include "scenario.hpp"
#include "sim.hpp"
#include "wilson.hpp"

#pragma once

// Umbrella header for the coupled charge-qubit dynamics library.

#include "cqdyn/analysis.hpp"
#include "cqdyn/circuit.hpp"
#include "cqdyn/csv.hpp"
#include "cqdyn/density.hpp"
#include "cqdyn/dynamics.hpp"
#include "cqdyn/eigen4.hpp"
#include "cqdyn/entanglement.hpp"
#include "cqdyn/errors.hpp"
#include "cqdyn/matrix4.hpp"
#include "cqdyn/svg.hpp"
#include "cqdyn/tolerances.hpp"

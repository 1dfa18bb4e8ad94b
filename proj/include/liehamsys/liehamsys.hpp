#pragma once
/** @file liehamsys.hpp
 *  @brief Umbrella header for the liehamsys library.
 */

#include "liehamsys/algebra.hpp"
#include "liehamsys/casimirs.hpp"
#include "liehamsys/coefficients.hpp"
#include "liehamsys/dynamics.hpp"
#include "liehamsys/errors.hpp"
#include "liehamsys/invariants.hpp"
#include "liehamsys/io.hpp"
#include "liehamsys/polynomial.hpp"
#include "liehamsys/presets.hpp"
#include "liehamsys/rational.hpp"
#include "liehamsys/realization.hpp"
#include "liehamsys/reduction.hpp"
#include "liehamsys/rmatrix.hpp"
#include "liehamsys/superposition.hpp"

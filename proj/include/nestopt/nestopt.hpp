/*-------------------------------------------------------------------------------------------------
| Part of the nestopt project; distributed under the MIT License.
| See the LICENSE file for details.
*------------------------------------------------------------------------------------------------*/
#pragma once

#include "nestopt/circuit.hpp"
#include "nestopt/gadgetizer.hpp"
#include "nestopt/move_h.hpp"
#include "nestopt/phase_poly.hpp"
#include "nestopt/qc_io.hpp"
#include "nestopt/rng.hpp"
#include "nestopt/spider_nest.hpp"
#include "nestopt/support_set.hpp"
#include "nestopt/verifier.hpp"

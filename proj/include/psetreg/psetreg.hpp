#pragma once

// Umbrella header: exact labstate simulation over power-set bit registers.

#include "psetreg/amp.hpp"
#include "psetreg/bit_ops.hpp"
#include "psetreg/errors.hpp"
#include "psetreg/flows.hpp"
#include "psetreg/labstate.hpp"
#include "psetreg/network.hpp"
#include "psetreg/observables.hpp"
#include "psetreg/physical_register.hpp"
#include "psetreg/projector.hpp"
#include "psetreg/rational.hpp"
#include "psetreg/register_state.hpp"
#include "psetreg/scenarios.hpp"
#include "psetreg/stage_map.hpp"
#include "psetreg/text_format.hpp"
#include "psetreg/verify.hpp"

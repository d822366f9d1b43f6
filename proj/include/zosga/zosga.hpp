#pragma once

#include "zosga/beamforming.hpp"
#include "zosga/channel.hpp"
#include "zosga/config.hpp"
#include "zosga/correlation.hpp"
#include "zosga/gradients.hpp"
#include "zosga/harness.hpp"
#include "zosga/irs_state.hpp"
#include "zosga/optimizer.hpp"
#include "zosga/results_io.hpp"
#include "zosga/rng.hpp"
#include "zosga/schedule.hpp"

#pragma once

#include "core.hpp"
#include "discrete_wave.hpp"
#include "inverse_bc.hpp"
#include "moments.hpp"
#include "toda.hpp"
#include "weyl_debranges.hpp"
#include "continuous_time.hpp"
#include "graph_wave.hpp"
#include "heat.hpp"

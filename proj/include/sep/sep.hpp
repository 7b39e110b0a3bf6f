#pragma once

// Umbrella header: the whole exclusion-process toolkit.

#include "sep/cli.hpp"
#include "sep/closed_form.hpp"
#include "sep/config.hpp"
#include "sep/csv.hpp"
#include "sep/enumeration.hpp"
#include "sep/error.hpp"
#include "sep/graph.hpp"
#include "sep/log_real.hpp"
#include "sep/manifest.hpp"
#include "sep/occupancy.hpp"
#include "sep/oracle.hpp"
#include "sep/rational.hpp"
#include "sep/rng.hpp"
#include "sep/simulate.hpp"
#include "sep/version.hpp"
#include "sep/weight.hpp"

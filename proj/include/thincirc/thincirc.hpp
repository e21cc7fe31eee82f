// Umbrella header.
#pragma once

#include "thincirc/bitwords.hpp"
#include "thincirc/circulant.hpp"
#include "thincirc/construction.hpp"
#include "thincirc/experiment.hpp"
#include "thincirc/freeness.hpp"
#include "thincirc/json_io.hpp"
#include "thincirc/linalg.hpp"
#include "thincirc/parallel.hpp"
#include "thincirc/point_set.hpp"
#include "thincirc/rational.hpp"
#include "thincirc/rectangles.hpp"
#include "thincirc/rho.hpp"
#include "thincirc/rng.hpp"
#include "thincirc/sumset.hpp"
#include "thincirc/support_set.hpp"
#include "thincirc/util.hpp"

#pragma once

// Umbrella header for the Favard-length laboratory.

#include "favard/common.hpp"
#include "favard/config.hpp"
#include "favard/exp_sums.hpp"
#include "favard/experiment.hpp"
#include "favard/fourier.hpp"
#include "favard/intervals.hpp"
#include "favard/parallel.hpp"
#include "favard/projection.hpp"
#include "favard/quadrature.hpp"
#include "favard/rng.hpp"
#include "favard/similarity.hpp"
#include "favard/step_function.hpp"
#include "favard/tiling.hpp"
#include "favard/trig.hpp"
#include "favard/zeros.hpp"

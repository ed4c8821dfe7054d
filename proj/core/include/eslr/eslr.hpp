#pragma once

#include "eslr/csv.hpp"
#include "eslr/diagnostics.hpp"
#include "eslr/errors.hpp"
#include "eslr/oracles.hpp"
#include "eslr/priors.hpp"
#include "eslr/regression_model.hpp"
#include "eslr/simulation.hpp"
#include "eslr/slice_sampler.hpp"

#pragma once

// Convenience umbrella for the whole library.

#include "tscausal/algorithms.hpp"
#include "tscausal/common.hpp"
#include "tscausal/datagen.hpp"
#include "tscausal/evaluation.hpp"
#include "tscausal/experiments.hpp"
#include "tscausal/io/csv.hpp"
#include "tscausal/io/json.hpp"
#include "tscausal/io/reports.hpp"
#include "tscausal/parallel.hpp"
#include "tscausal/random.hpp"
#include "tscausal/regression.hpp"

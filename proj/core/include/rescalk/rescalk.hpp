#pragma once

// Umbrella header.

#include "rescalk/analysis.hpp"
#include "rescalk/clustering.hpp"
#include "rescalk/ensemble.hpp"
#include "rescalk/errors.hpp"
#include "rescalk/io.hpp"
#include "rescalk/parallel.hpp"
#include "rescalk/rng.hpp"
#include "rescalk/selection.hpp"
#include "rescalk/solver.hpp"
#include "rescalk/synthgen.hpp"
#include "rescalk/tensor.hpp"

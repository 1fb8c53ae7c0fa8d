#pragma once

#include "slqc/core/finite_diff.hpp"
#include "slqc/core/objective.hpp"
#include "slqc/core/parallel.hpp"
#include "slqc/core/point.hpp"
#include "slqc/core/random.hpp"
#include "slqc/core/region.hpp"
#include "slqc/core/stochastic.hpp"
#include "slqc/core/trace.hpp"

#include "slqc/problems/basic.hpp"
#include "slqc/problems/cliff_plateau.hpp"
#include "slqc/problems/g_function.hpp"
#include "slqc/problems/glm.hpp"
#include "slqc/problems/lower_bound.hpp"
#include "slqc/problems/noisy_glm.hpp"
#include "slqc/problems/perceptron.hpp"
#include "slqc/problems/sigmoid.hpp"

#include "slqc/optimizers/baselines.hpp"
#include "slqc/optimizers/config.hpp"
#include "slqc/optimizers/ngd.hpp"

#include "slqc/properties/local.hpp"
#include "slqc/properties/quasiconvex.hpp"
#include "slqc/properties/slqc.hpp"

#include "slqc/analysis/budgets.hpp"
#include "slqc/analysis/lower_bound_experiment.hpp"
#include "slqc/analysis/markov.hpp"

#include "slqc/io/dataset_json.hpp"
#include "slqc/io/json_util.hpp"
#include "slqc/io/report_json.hpp"
#include "slqc/io/trace_io.hpp"

#pragma once

// Everything except io.hpp, which needs nlohmann/json.

#include "hyperorlicz/error.hpp"
#include "hyperorlicz/numeric.hpp"
#include "hyperorlicz/expression.hpp"
#include "hyperorlicz/young.hpp"
#include "hyperorlicz/sequence_condition.hpp"
#include "hyperorlicz/measure.hpp"
#include "hyperorlicz/hypergroup.hpp"
#include "hyperorlicz/hypergroup_analysis.hpp"
#include "hyperorlicz/orlicz.hpp"
#include "hyperorlicz/operators.hpp"
#include "hyperorlicz/counterexample.hpp"

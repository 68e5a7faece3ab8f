#pragma once

#include "entcost/conic/lowered.hpp"

#include <string>

namespace entcost::conic {

/// Self-describing JSON of a lowered problem: objective, cone (block size)
/// list and sparse coefficient triplets, for cross-checks against external
/// solvers. Convention: minimize b.y subject to f0_k + sum_i y_i F_{k,i} psd.
std::string dump_json(const LoweredProblem& lp);

} // namespace entcost::conic

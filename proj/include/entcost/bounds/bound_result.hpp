#pragma once

#include "entcost/conic/solve.hpp"
#include "entcost/qcore/types.hpp"

#include <map>
#include <string>

namespace entcost::bounds {

/// Outcome of one entanglement-cost bound evaluation. Values are in ebits
/// (base-2); `value_bits` is clamped at zero, the unclamped number stays in
/// `raw_value_bits`.
struct BoundResult {
    std::string bound;
    double value_bits = 0.0;
    double raw_value_bits = 0.0;
    double root_fidelity = std::numeric_limits<double>::quiet_NaN();
    double primal_value = std::numeric_limits<double>::quiet_NaN();
    double dual_value = std::numeric_limits<double>::quiet_NaN();
    double gap = std::numeric_limits<double>::quiet_NaN();
    conic::SolveStatus status = conic::SolveStatus::Inaccurate;
    std::map<std::string, CMat> witnesses;
    std::map<std::string, double> metadata; // tolerances, cutoffs, iteration counts

    bool optimal() const { return status == conic::SolveStatus::Optimal; }
};

} // namespace entcost::bounds

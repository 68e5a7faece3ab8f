#pragma once

#include "entcost/bounds/bound_result.hpp"
#include "entcost/qcore/ops.hpp"

namespace entcost::bounds {

enum class FreeSet { PPT, Rains, PPT2 };

struct FWParams {
    int max_iters = 2000;
    double gap_tol = 1e-4; // bits
    double eig_floor = 1e-12;
};

struct FWResult {
    double value_bits = 0.0; // D(rho || tau_final); an upper bound on the minimum
    double gap_bits = 0.0;   // certified Frank-Wolfe duality gap
    int iters = 0;
    conic::SolveStatus status = conic::SolveStatus::Inaccurate;
};

/// min_{tau in set} D(rho || tau) in bits by Frank-Wolfe with exact line
/// search; the linear minimization oracle is one SDP per iteration.
/// set = Rains gives the Rains bound, set = PPT the PPT relative entropy.
FWResult rel_entropy_to_set(const qcore::BipartiteState& rho, FreeSet set,
                            const FWParams& params = {});

const char* to_string(FreeSet s);

} // namespace entcost::bounds

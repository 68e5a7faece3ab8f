#pragma once

#include "entcost/conic/lowered.hpp"

namespace entcost::conic {

struct IpmOptions {
    double feas_tol = 1e-9;  // primal and equality residuals (relative)
    double dual_tol = 1e-7;  // dual residual; limited by cancellation in the scaled frame
    double gap_tol = 5e-9;   // relative duality gap target
    int max_iters = 200;
    bool verbose = false;
};

enum class IpmStatus { Optimal, Infeasible, Unbounded, Inaccurate };

struct IpmResult {
    IpmStatus status = IpmStatus::Inaccurate;
    RVec y;
    RVec lambda;
    std::vector<RMat> x_blocks; // primal slacks F(y), PSD
    std::vector<RMat> y_blocks; // dual matrices, PSD (in the scaled-block metric)
    double pobj = 0.0, dobj = 0.0; // internal min-form objectives
    int iters = 0;
    double err_primal = 0.0, err_dual = 0.0, err_eq = 0.0, rel_gap = 0.0;
};

/// Primal-dual path following with Nesterov-Todd scaling and a two-solve
/// adaptive centering step; equality rows handled through a bordered system.
IpmResult solve_ipm(const LoweredProblem& lp, const IpmOptions& opt = {});

} // namespace entcost::conic

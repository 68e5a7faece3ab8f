#pragma once

#include "entcost/conic/ipm.hpp"
#include "entcost/conic/program.hpp"

#include <functional>
#include <map>
#include <string>

namespace entcost::conic {

enum class SolveStatus { Optimal, Infeasible, Unbounded, Inaccurate };

const char* to_string(SolveStatus s);

struct SolverResult {
    SolveStatus status = SolveStatus::Inaccurate;
    double primal_value = 0.0;
    double dual_value = 0.0;
    std::map<std::string, CMat> witnesses;  // variable name -> complex value
    std::vector<CMat> dual_blocks;          // complex dual certificate per PSD block
    double max_residual = 0.0;              // worst constraint violation at the witnesses
    int iterations = 0;
    RVec params;
};

struct SolveOptions {
    double feas_tol = 1e-8;
    double gap_tol = 1e-7;
    int max_iters = 200;
    bool verbose = false;
    std::string backend; // empty: ENTCOST_SOLVER env var or "ipm"
};

using SolverBackend = std::function<IpmResult(const LoweredProblem&, const IpmOptions&)>;

/// Named backends behind one lowered-problem interface. "ipm" is built in.
void register_backend(const std::string& name, SolverBackend fn);
std::vector<std::string> backend_names();

SolverResult solve(const ConicProgram& p, const SolveOptions& opt = {});

/// Thrown by bound computations when a solve does not reach Optimal.
struct SolverFailure : std::runtime_error {
    SolveStatus status;
    explicit SolverFailure(SolveStatus s)
        : std::runtime_error(std::string("solver failure: ") + to_string(s)), status(s) {}
};

} // namespace entcost::conic

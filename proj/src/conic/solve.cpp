#include "entcost/conic/solve.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>

namespace entcost::conic {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        default: return "inaccurate";
    }
}

namespace {

std::map<std::string, SolverBackend>& registry() {
    static std::map<std::string, SolverBackend> r = {
        {"ipm", [](const LoweredProblem& lp, const IpmOptions& o) { return solve_ipm(lp, o); }}};
    return r;
}
std::mutex registry_mutex;

} // namespace

void register_backend(const std::string& name, SolverBackend fn) {
    std::lock_guard<std::mutex> lock(registry_mutex);
    registry()[name] = std::move(fn);
}

std::vector<std::string> backend_names() {
    std::lock_guard<std::mutex> lock(registry_mutex);
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
}

SolverResult solve(const ConicProgram& p, const SolveOptions& opt) {
    std::string backend = opt.backend;
    if (backend.empty()) {
        const char* env = std::getenv("ENTCOST_SOLVER");
        backend = env ? env : "ipm";
    }
    SolverBackend fn;
    {
        std::lock_guard<std::mutex> lock(registry_mutex);
        auto it = registry().find(backend);
        if (it == registry().end()) {
            std::string names;
            for (const auto& [k, v] : registry()) names += k + " ";
            throw std::invalid_argument("unknown solver backend '" + backend +
                                        "', available: " + names);
        }
        fn = it->second;
    }

    LoweredProblem lp = lower(p);
    IpmOptions io;
    // solve tighter than the reported tolerances, within what the scaled
    // frame can deliver in double precision
    io.feas_tol = std::clamp(opt.feas_tol * 0.1, 1e-10, 1e-8);
    io.dual_tol = std::clamp(opt.feas_tol * 10.0, 1e-8, 1e-6);
    io.gap_tol = std::clamp(opt.gap_tol * 0.05, 1e-9, 1e-7);
    io.max_iters = opt.max_iters;
    io.verbose = opt.verbose;
    IpmResult ir = fn(lp, io);

    SolverResult sr;
    sr.iterations = ir.iters;
    switch (ir.status) {
        case IpmStatus::Optimal: sr.status = SolveStatus::Optimal; break;
        case IpmStatus::Infeasible: sr.status = SolveStatus::Infeasible; break;
        case IpmStatus::Unbounded: sr.status = SolveStatus::Unbounded; break;
        default: sr.status = SolveStatus::Inaccurate; break;
    }
    if (ir.status == IpmStatus::Infeasible || ir.status == IpmStatus::Unbounded) return sr;

    sr.params = ir.y;
    sr.primal_value = lp.user_value_from_internal(ir.pobj);
    sr.dual_value = lp.user_value_from_internal(ir.dobj);
    const auto& names = p.variable_names();
    for (size_t v = 0; v < p.variables().size(); ++v)
        sr.witnesses[names[v]] = ConicProgram::value_of(p.variables()[v], ir.y);
    for (size_t b = 0; b < lp.blocks.size(); ++b) {
        // undo the block scaling so the complex dual certifies the original data
        RMat yb = ir.y_blocks[b] / lp.blocks[b].scale;
        sr.dual_blocks.push_back(unembed_complex(yb));
    }

    // residuals of the original complex constraints at the witnesses
    double res = 0.0;
    for (const auto& pc : p.psd_constraints()) {
        CMat val = ConicProgram::eval(pc.expr, ir.y);
        Eigen::SelfAdjointEigenSolver<CMat> es(val, Eigen::EigenvaluesOnly);
        res = std::max(res, -es.eigenvalues().minCoeff());
    }
    for (const auto& me : p.matrix_equalities()) {
        CMat val = ConicProgram::eval(me, ir.y);
        res = std::max(res, val.cwiseAbs().maxCoeff());
    }
    for (const auto& se : p.scalar_equalities())
        res = std::max(res, std::abs(ConicProgram::eval(se, ir.y)));
    sr.max_residual = res;

    // The binding definition of optimality: witnesses feasible at feas_tol and
    // the two objective values agree at gap_tol. The IPM's own verdict is
    // upgraded or downgraded accordingly.
    bool ok = res <= opt.feas_tol && std::abs(sr.primal_value - sr.dual_value) <=
                                         opt.gap_tol * (1.0 + std::abs(sr.primal_value));
    sr.status = ok ? SolveStatus::Optimal : SolveStatus::Inaccurate;
    return sr;
}

} // namespace entcost::conic

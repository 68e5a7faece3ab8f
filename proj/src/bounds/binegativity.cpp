#include "entcost/bounds/binegativity.hpp"

#include <cmath>

namespace entcost::bounds {

using namespace conic;
namespace q = qcore;

namespace {

constexpr uint32_t kMaskB = 2u; // subsystem B in an (A, B) layout
constexpr double kSupportCutoff = 1e-12;

// Support factorization rho = U diag(lam) U^dag with lam > cutoff * lam_max.
// Restricting the fidelity block to the support keeps the program equivalent
// and restores a strictly feasible interior when rho is rank deficient.
struct Support {
    CMat u;      // d x r isometry
    CMat corner; // r x r positive diagonal
    int rank() const { return static_cast<int>(u.cols()); }
};

Support support_of(const CMat& rho) {
    Eigen::SelfAdjointEigenSolver<CMat> es(rho);
    double cut = kSupportCutoff * std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
    std::vector<int> keep;
    for (int i = 0; i < rho.rows(); ++i)
        if (es.eigenvalues()(i) > cut) keep.push_back(i);
    Support s;
    s.u = CMat(rho.rows(), keep.size());
    RVec lam(keep.size());
    for (size_t k = 0; k < keep.size(); ++k) {
        s.u.col(k) = es.eigenvectors().col(keep[k]);
        lam(static_cast<Eigen::Index>(k)) = es.eigenvalues()(keep[k]);
    }
    s.corner = lam.cast<Cplx>().asDiagonal();
    return s;
}

double clamp01(double v) { return std::min(1.0, std::max(v, 1e-300)); }

BoundResult from_root_fidelity(std::string name, const SolverResult& sr) {
    BoundResult b;
    b.bound = std::move(name);
    b.status = sr.status;
    b.primal_value = sr.primal_value;
    b.dual_value = sr.dual_value;
    b.gap = std::abs(sr.primal_value - sr.dual_value);
    b.root_fidelity = sr.primal_value;
    b.raw_value_bits = -2.0 * std::log2(clamp01(b.root_fidelity));
    b.value_bits = std::max(0.0, b.raw_value_bits);
    b.metadata["iterations"] = sr.iterations;
    b.metadata["residual"] = sr.max_residual;
    b.metadata["support_cutoff"] = kSupportCutoff;
    return b;
}

} // namespace

double fidelity_sdp(const q::BipartiteState& rho, const q::HermitianOperator& sigma) {
    if (sigma.dim() != rho.dim()) throw std::invalid_argument("fidelity_sdp: dimension mismatch");
    if (q::min_eigenvalue(sigma.mat()) < -1e-10)
        throw std::invalid_argument("fidelity_sdp: sigma not positive semidefinite");
    // both corners fixed: reduce each to its support
    Support sr_ = support_of(rho.mat());
    Support ss = support_of(0.5 * (sigma.mat() + sigma.mat().adjoint()));
    if (sr_.rank() == 0 || ss.rank() == 0) return 0.0;
    ConicProgram p;
    auto x = p.add_complex("X", sr_.rank(), ss.rank());
    p.add_psd(
        block_2x2(MatExpr::constant_of(sr_.corner), p.var(x), MatExpr::constant_of(ss.corner)),
        "fidelity_block");
    p.maximize(re_inner(sr_.u.adjoint() * ss.u, p.var(x)));
    SolverResult res = solve(p);
    if (res.status != SolveStatus::Optimal) throw SolverFailure(res.status);
    return res.primal_value;
}

ConicProgram e_nb_k_program(const q::BipartiteState& rho, int k) {
    if (k < 1) throw std::invalid_argument("e_nb_k_half: k must be >= 1");
    const int d = rho.dim();
    std::vector<int> lay = {rho.dim_a(), rho.dim_b()};
    Support sup = support_of(rho.mat());

    ConicProgram p;
    auto x = p.add_complex("X", sup.rank(), d);
    VarRef m = p.add_hermitian("M", d, lay);
    VarRef n = p.add_hermitian("N", d, lay);
    p.add_psd(p.var(m), "M_psd");
    p.add_psd(p.var(n), "N_psd");
    ScalarExpr slack(1.0);
    slack -= trace_re(p.var(m)) + trace_re(p.var(n));
    p.add_psd(scaled_matrix(slack, CMat::Identity(1, 1)), "trace_budget");
    MatExpr omega_last = partial_transpose(p.var(m) - p.var(n), kMaskB);

    MatExpr sigma;
    if (k == 1) {
        // Rains set: sigma = (M-N)^{T_B}; psd comes from the block corner
        sigma = omega_last;
    } else {
        VarRef s = p.add_hermitian("sigma", d, lay);
        sigma = p.var(s);
        // chain omega_2 .. omega_{k-1} free Hermitian, omega_k = (M-N)^{T_B}
        std::vector<MatExpr> chain;
        for (int i = 2; i < k; ++i)
            chain.push_back(p.var(p.add_hermitian("omega" + std::to_string(i), d, lay)));
        chain.push_back(omega_last);
        MatExpr prev_tb = partial_transpose(sigma, kMaskB);
        for (auto& om : chain) {
            p.add_psd(om - prev_tb, "chain_upper");
            p.add_psd(om + prev_tb, "chain_lower");
            prev_tb = partial_transpose(om, kMaskB);
        }
    }
    p.add_psd(block_2x2(MatExpr::constant_of(sup.corner), p.var(x), sigma), "fidelity_block");
    p.maximize(re_inner(sup.u.adjoint(), p.var(x)));
    return p;
}

BoundResult e_nb_k_half(const q::BipartiteState& rho, int k) {
    const int d = rho.dim();
    (void)d;
    std::vector<int> lay = {rho.dim_a(), rho.dim_b()};
    ConicProgram p = e_nb_k_program(rho, k);
    SolverResult res = solve(p);
    BoundResult b = from_root_fidelity("e_nb" + std::to_string(k) + "_half", res);
    b.metadata["k"] = k;
    if (res.status == SolveStatus::Optimal) {
        CMat mm = res.witnesses.at("M");
        CMat nn = res.witnesses.at("N");
        CMat omega = apply_partial_transpose(mm - nn, lay, kMaskB);
        b.witnesses["omega"] = omega;
        b.witnesses["sigma"] = (k == 1) ? omega : res.witnesses.at("sigma");
    }
    return b;
}

BoundResult e_nb2_half(const q::BipartiteState& rho) {
    BoundResult b = e_nb_k_half(rho, 2);
    b.bound = "e_nb2_half";
    return b;
}

BoundResult e_nb2_half_dual(const q::BipartiteState& rho) {
    const int d = rho.dim();
    std::vector<int> lay = {rho.dim_a(), rho.dim_b()};
    ConicProgram p;
    auto qv = p.add_hermitian("Q", d, lay);
    auto rv = p.add_hermitian("R", d, lay);
    auto uv = p.add_hermitian("U", d, lay);
    auto vv = p.add_hermitian("V", d, lay);
    p.add_psd(p.var(uv), "U_psd");
    p.add_psd(p.var(vv), "V_psd");
    MatExpr u_tb = partial_transpose(p.var(uv), kMaskB);
    MatExpr v_tb = partial_transpose(p.var(vv), kMaskB);
    p.add_psd(u_tb - v_tb - p.var(rv), "uv_dominates_r");
    ScalarExpr t = re_inner(rho.mat(), p.var(qv)); // tr(Q rho)
    CMat id = CMat::Identity(d, d);
    p.add_psd(scaled_matrix(t, id) - u_tb - v_tb, "sum_upper");
    p.add_psd(scaled_matrix(t, id) + u_tb + v_tb, "sum_lower");
    p.add_psd(block_2x2(p.var(qv), MatExpr::constant_of(-id), p.var(rv)), "schur_block");
    p.minimize(t);

    SolverResult res = solve(p);
    BoundResult b = from_root_fidelity("e_nb2_half_dual", res);
    if (res.status == SolveStatus::Optimal) b.witnesses["Q"] = res.witnesses.at("Q");
    return b;
}

bool ppt_k_membership(const q::HermitianOperator& sigma, const q::SubsystemLayout& layout, int k,
                      double tol) {
    if (k < 1) throw std::invalid_argument("ppt_k_membership: k must be >= 1");
    if (layout.dims.size() != 2 || layout.total_dim() != sigma.dim())
        throw std::invalid_argument("ppt_k_membership: layout must be bipartite and match sigma");
    if (q::min_eigenvalue(sigma.mat()) < -1e-10)
        throw std::invalid_argument("ppt_k_membership: sigma not positive semidefinite");
    const int d = sigma.dim();
    std::vector<int> lay = layout.dims;
    CMat sigma_tb = apply_partial_transpose(sigma.mat(), lay, kMaskB);
    if (k == 1) return q::trace_norm(q::HermitianOperator(sigma_tb)) <= 1.0 + tol;

    // minimize tr(M+N); member iff the optimal trace-norm budget is <= 1
    ConicProgram p;
    VarRef m = p.add_hermitian("M", d, lay);
    VarRef n = p.add_hermitian("N", d, lay);
    p.add_psd(p.var(m), "M_psd");
    p.add_psd(p.var(n), "N_psd");
    MatExpr omega_last = partial_transpose(p.var(m) - p.var(n), kMaskB);
    std::vector<MatExpr> chain;
    for (int i = 2; i < k; ++i)
        chain.push_back(p.var(p.add_hermitian("omega" + std::to_string(i), d, lay)));
    chain.push_back(omega_last);
    MatExpr prev_tb = MatExpr::constant_of(sigma_tb, lay);
    for (auto& om : chain) {
        p.add_psd(om - prev_tb, "chain_upper");
        p.add_psd(om + prev_tb, "chain_lower");
        prev_tb = partial_transpose(om, kMaskB);
    }
    p.minimize(trace_re(p.var(m)) + trace_re(p.var(n)));
    SolverResult res = solve(p);
    if (res.status != SolveStatus::Optimal) throw SolverFailure(res.status);
    return res.primal_value <= 1.0 + tol;
}

} // namespace entcost::bounds

#include "entcost/bounds/hash.hpp"

#include <cmath>

namespace entcost::bounds {

using namespace conic;
namespace q = qcore;

namespace {

constexpr uint32_t kMaskB = 2u;
constexpr double kSupportCutoff = 1e-12;

BoundResult pack(std::string name, const SolverResult& sr) {
    BoundResult b;
    b.bound = std::move(name);
    b.status = sr.status;
    b.primal_value = sr.primal_value;
    b.dual_value = sr.dual_value;
    b.gap = std::abs(sr.primal_value - sr.dual_value);
    b.root_fidelity = sr.primal_value;
    double f = std::min(1.0, std::max(sr.primal_value, 1e-300));
    b.raw_value_bits = -2.0 * std::log2(f);
    b.value_bits = std::max(0.0, b.raw_value_bits);
    b.metadata["iterations"] = sr.iterations;
    return b;
}

} // namespace

BoundResult e_hash2_lower(const q::BipartiteState& rho) {
    const int d = rho.dim();
    std::vector<int> lay = {rho.dim_a(), rho.dim_b()};

    Eigen::SelfAdjointEigenSolver<CMat> es(rho.mat());
    double cut = kSupportCutoff * es.eigenvalues().cwiseAbs().maxCoeff();
    std::vector<int> keep;
    for (int i = 0; i < d; ++i)
        if (es.eigenvalues()(i) > cut) keep.push_back(i);
    CMat u(d, keep.size());
    RVec lam(keep.size());
    for (size_t k = 0; k < keep.size(); ++k) {
        u.col(k) = es.eigenvectors().col(keep[k]);
        lam(static_cast<Eigen::Index>(k)) = es.eigenvalues()(keep[k]);
    }
    CMat corner = lam.cast<Cplx>().asDiagonal();

    // variables C, D, N >= 0; M := N + (C+D)^{T_B} eliminated through the
    // equality C + D = M^{T_B} - N^{T_B}
    ConicProgram p;
    auto x = p.add_complex("X", static_cast<int>(keep.size()), d);
    auto c = p.add_hermitian("C", d, lay);
    auto dd = p.add_hermitian("D", d, lay);
    auto n = p.add_hermitian("N", d, lay);
    p.add_psd(p.var(c), "C_psd");
    p.add_psd(p.var(dd), "D_psd");
    p.add_psd(p.var(n), "N_psd");
    MatExpr m_expr = p.var(n) + partial_transpose(p.var(c) + p.var(dd), kMaskB);
    p.add_psd(m_expr, "M_psd");
    // tr(M+N) = 2 tr(N) + tr(C) + tr(D) <= 1
    ScalarExpr budget(1.0);
    budget -= 2.0 * trace_re(p.var(n)) + trace_re(p.var(c)) + trace_re(p.var(dd));
    p.add_psd(scaled_matrix(budget, CMat::Identity(1, 1)), "trace_budget");
    MatExpr sigma_slot = partial_transpose(p.var(c) - p.var(dd), kMaskB);
    p.add_psd(block_2x2(MatExpr::constant_of(corner), p.var(x), sigma_slot), "fidelity_block");
    p.maximize(re_inner(u.adjoint(), p.var(x)));

    SolverResult res = solve(p);
    BoundResult b = pack("e_hash2_lower", res);
    b.metadata["support_cutoff"] = kSupportCutoff;
    if (res.status == SolveStatus::Optimal) {
        b.witnesses["C"] = res.witnesses.at("C");
        b.witnesses["D"] = res.witnesses.at("D");
        b.witnesses["N"] = res.witnesses.at("N");
        b.witnesses["sigma_slot"] = apply_partial_transpose(
            res.witnesses.at("C") - res.witnesses.at("D"), lay, kMaskB);
    }
    return b;
}

BoundResult e_hash2_dual(const q::BipartiteState& rho) {
    const int d = rho.dim();
    std::vector<int> lay = {rho.dim_a(), rho.dim_b()};
    CMat id = CMat::Identity(d, d);

    // t = tr(Q rho) substituted into -tI <= S^{T_B} <= tI
    ConicProgram p;
    auto qv = p.add_hermitian("Q", d, lay);
    auto rv = p.add_hermitian("R", d, lay);
    auto sv = p.add_hermitian("S", d, lay);
    MatExpr r_tb = partial_transpose(p.var(rv), kMaskB);
    MatExpr s_tb = partial_transpose(p.var(sv), kMaskB);
    p.add_psd(p.var(sv) - r_tb, "s_dominates_upper");
    p.add_psd(p.var(sv) + r_tb, "s_dominates_lower");
    ScalarExpr t = re_inner(rho.mat(), p.var(qv));
    p.add_psd(scaled_matrix(t, id) - s_tb, "t_bound_upper");
    p.add_psd(scaled_matrix(t, id) + s_tb, "t_bound_lower");
    p.add_psd(block_2x2(p.var(qv), MatExpr::constant_of(-id), p.var(rv)), "schur_block");
    p.minimize(t);

    SolverResult res = solve(p);
    BoundResult b = pack("e_hash2_dual", res);
    if (res.status == SolveStatus::Optimal) b.witnesses["Q"] = res.witnesses.at("Q");
    return b;
}

} // namespace entcost::bounds

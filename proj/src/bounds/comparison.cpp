#include "entcost/bounds/comparison.hpp"

#include <cmath>

namespace entcost::bounds {

using namespace conic;
namespace q = qcore;

namespace {
constexpr uint32_t kMaskB = 2u;
constexpr double kEtaSupportCutoff = 1e-8;
} // namespace

BoundResult e_eta(const q::BipartiteState& rho) {
    const int d = rho.dim();
    std::vector<int> lay = {rho.dim_a(), rho.dim_b()};
    CMat proj = q::support_projector(rho.op(), kEtaSupportCutoff);

    ConicProgram p;
    auto s = p.add_hermitian("sigma", d, lay);
    auto m = p.add_hermitian("M", d, lay);
    auto n = p.add_hermitian("N", d, lay);
    p.add_psd(p.var(s), "sigma_psd");
    p.add_psd(p.var(m), "M_psd");
    p.add_psd(p.var(n), "N_psd");
    MatExpr omega = partial_transpose(p.var(m) - p.var(n), kMaskB);
    MatExpr sigma_tb = partial_transpose(p.var(s), kMaskB);
    p.add_psd(omega - sigma_tb, "chain_upper");
    p.add_psd(omega + sigma_tb, "chain_lower");
    ScalarExpr slack(1.0);
    slack -= trace_re(p.var(m)) + trace_re(p.var(n));
    p.add_psd(scaled_matrix(slack, CMat::Identity(1, 1)), "trace_budget");
    p.maximize(re_inner(proj, p.var(s)));

    SolverResult res = solve(p);
    BoundResult b;
    b.bound = "e_eta";
    b.status = res.status;
    b.primal_value = res.primal_value;
    b.dual_value = res.dual_value;
    b.gap = std::abs(res.primal_value - res.dual_value);
    double overlap = std::min(1.0, std::max(res.primal_value, 1e-300));
    b.raw_value_bits = -std::log2(overlap);
    b.value_bits = std::max(0.0, b.raw_value_bits);
    b.metadata["support_cutoff"] = kEtaSupportCutoff;
    b.metadata["support_rank"] = std::round(proj.trace().real());
    b.metadata["iterations"] = res.iterations;
    if (res.status == SolveStatus::Optimal) b.witnesses["sigma"] = res.witnesses.at("sigma");
    return b;
}

BoundResult tempered_negativity(const q::BipartiteState& rho) {
    const int d = rho.dim();
    std::vector<int> lay = {rho.dim_a(), rho.dim_b()};
    CMat id = CMat::Identity(d, d);

    ConicProgram p;
    auto a = p.add_hermitian("A", d, lay);
    MatExpr a_tb = partial_transpose(p.var(a), kMaskB);
    ScalarExpr tr_a_rho = re_inner(rho.mat(), p.var(a));
    p.add_psd(MatExpr::constant_of(id, lay) - a_tb, "pt_norm_upper");
    p.add_psd(MatExpr::constant_of(id, lay) + a_tb, "pt_norm_lower");
    p.add_psd(scaled_matrix(tr_a_rho, id) - p.var(a), "op_norm_upper");
    p.add_psd(scaled_matrix(tr_a_rho, id) + p.var(a), "op_norm_lower");
    p.maximize(tr_a_rho);

    SolverResult res = solve(p);
    BoundResult b;
    b.bound = "tempered_negativity";
    b.status = res.status;
    b.primal_value = res.primal_value;
    b.dual_value = res.dual_value;
    b.gap = std::abs(res.primal_value - res.dual_value);
    b.raw_value_bits = std::log2(std::max(res.primal_value, 1e-300));
    b.value_bits = std::max(0.0, b.raw_value_bits);
    b.metadata["iterations"] = res.iterations;
    if (res.status == SolveStatus::Optimal) b.witnesses["A"] = res.witnesses.at("A");
    return b;
}

double eof_two_qubit(const q::BipartiteState& rho) {
    if (rho.dim_a() != 2 || rho.dim_b() != 2)
        throw std::invalid_argument("eof_two_qubit: needs a two-qubit state");
    CMat yy(4, 4);
    yy.setZero();
    yy(0, 3) = -1;
    yy(1, 2) = 1;
    yy(2, 1) = 1;
    yy(3, 0) = -1; // sigma_y (x) sigma_y
    CMat rho_tilde = yy * rho.mat().conjugate() * yy;
    CMat prod = rho.mat() * rho_tilde;
    // eigenvalues of rho*rho_tilde are real and nonnegative
    Eigen::ComplexEigenSolver<CMat> es(prod);
    RVec lam = es.eigenvalues().real().cwiseMax(0.0).cwiseSqrt();
    std::sort(lam.data(), lam.data() + lam.size(), std::greater<double>());
    double c = std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
    double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
    auto h = [](double v) {
        if (v <= 0.0 || v >= 1.0) return 0.0;
        return -v * std::log2(v) - (1.0 - v) * std::log2(1.0 - v);
    };
    return h(x);
}

} // namespace entcost::bounds

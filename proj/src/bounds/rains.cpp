#include "entcost/bounds/rains.hpp"

#include <cmath>

namespace entcost::bounds {

using namespace conic;
namespace q = qcore;

namespace {

constexpr uint32_t kMaskB = 2u;
constexpr double kLn2 = 0.6931471805599453;

struct EntropyEval {
    RVec rho_eigs;
    double tr_rho_log_rho; // bits

    explicit EntropyEval(const CMat& rho) {
        rho_eigs = q::hermitian_eigenvalues(rho);
        tr_rho_log_rho = 0.0;
        for (int i = 0; i < rho_eigs.size(); ++i) {
            double p = rho_eigs(i);
            if (p > 1e-15) tr_rho_log_rho += p * std::log2(p);
        }
    }
};

// D(rho || tau) in bits, eigenvalues of tau floored at eig_floor
double rel_entropy(const EntropyEval& ee, const CMat& rho, const CMat& tau, double floor) {
    Eigen::SelfAdjointEigenSolver<CMat> es(tau);
    double acc = 0.0;
    CMat rot = es.eigenvectors().adjoint() * rho * es.eigenvectors();
    for (int i = 0; i < tau.rows(); ++i) {
        double lam = std::max(es.eigenvalues()(i), floor);
        acc += rot(i, i).real() * std::log2(lam);
    }
    return ee.tr_rho_log_rho - acc;
}

// gradient of tau -> -tr(rho log2 tau): divided-difference kernel of the log
CMat gradient(const CMat& rho, const CMat& tau, double floor) {
    Eigen::SelfAdjointEigenSolver<CMat> es(tau);
    const int d = static_cast<int>(tau.rows());
    RVec lam(d);
    for (int i = 0; i < d; ++i) lam(i) = std::max(es.eigenvalues()(i), floor);
    CMat rho_t = es.eigenvectors().adjoint() * rho * es.eigenvectors();
    CMat g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double k;
            if (std::abs(lam(i) - lam(j)) < 1e-14 * std::max(lam(i), lam(j)))
                k = 1.0 / (0.5 * (lam(i) + lam(j)));
            else
                k = (std::log(lam(i)) - std::log(lam(j))) / (lam(i) - lam(j));
            g(i, j) = -rho_t(i, j) * k / kLn2;
        }
    return es.eigenvectors() * g * es.eigenvectors().adjoint();
}

// linear minimization oracle: argmin_{s in set} <g, s>
CMat lmo(const CMat& g, FreeSet set, int da, int db) {
    const int d = da * db;
    std::vector<int> lay = {da, db};
    ConicProgram p;
    switch (set) {
        case FreeSet::PPT: {
            auto s = p.add_hermitian("sigma", d, lay);
            p.add_psd(p.var(s), "sigma_psd");
            p.add_psd(partial_transpose(p.var(s), kMaskB), "sigma_pt_psd");
            ScalarExpr tr = trace_re(p.var(s));
            tr -= ScalarExpr(1.0);
            p.add_eq_zero(tr);
            p.minimize(re_inner(g, p.var(s)));
            break;
        }
        case FreeSet::Rains: {
            auto m = p.add_hermitian("M", d, lay);
            auto n = p.add_hermitian("N", d, lay);
            p.add_psd(p.var(m), "M_psd");
            p.add_psd(p.var(n), "N_psd");
            MatExpr sigma = partial_transpose(p.var(m) - p.var(n), kMaskB);
            p.add_psd(sigma, "sigma_psd");
            ScalarExpr slack(1.0);
            slack -= trace_re(p.var(m)) + trace_re(p.var(n));
            p.add_psd(scaled_matrix(slack, CMat::Identity(1, 1)), "trace_budget");
            p.minimize(re_inner(g, sigma));
            break;
        }
        case FreeSet::PPT2: {
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
            p.minimize(re_inner(g, p.var(s)));
            break;
        }
    }
    SolverResult res = solve(p);
    if (res.status != SolveStatus::Optimal) throw SolverFailure(res.status);
    if (set == FreeSet::Rains) {
        CMat diff = res.witnesses.at("M") - res.witnesses.at("N");
        return apply_partial_transpose(diff, {da, db}, kMaskB);
    }
    return res.witnesses.at("sigma");
}

} // namespace

const char* to_string(FreeSet s) {
    switch (s) {
        case FreeSet::PPT: return "PPT";
        case FreeSet::Rains: return "PPT_prime";
        default: return "PPT_2";
    }
}

FWResult rel_entropy_to_set(const q::BipartiteState& rho, FreeSet set, const FWParams& params) {
    if (params.max_iters <= 0 || params.gap_tol <= 0 || params.eig_floor <= 0)
        throw std::invalid_argument("rel_entropy_to_set: params must be positive");
    const int d = rho.dim();
    EntropyEval ee(rho.mat());
    CMat tau = CMat::Identity(d, d) / d;

    FWResult out;
    for (int it = 0; it < params.max_iters; ++it) {
        out.iters = it;
        CMat g = gradient(rho.mat(), tau, params.eig_floor);
        CMat s = lmo(g, set, rho.dim_a(), rho.dim_b());
        double gap = (g.adjoint() * (tau - s)).trace().real();
        out.gap_bits = gap;
        if (gap <= params.gap_tol) {
            out.status = SolveStatus::Optimal;
            break;
        }
        // exact line search on the segment by golden section
        CMat dir = s - tau;
        auto phi = [&](double gamma) {
            return rel_entropy(ee, rho.mat(), tau + gamma * dir, params.eig_floor);
        };
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = 0.0, b = 1.0;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = phi(x1), f2 = phi(x2);
        for (int ls = 0; ls < 80 && (b - a) > 1e-13; ++ls) {
            if (f1 <= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gr * (b - a);
                f1 = phi(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b - a);
                f2 = phi(x2);
            }
        }
        double gamma = 0.5 * (a + b);
        if (gamma <= 0.0) gamma = 1e-12;
        tau += gamma * dir;
        tau = 0.5 * (tau + tau.adjoint()).eval();
    }
    out.value_bits = std::max(0.0, rel_entropy(ee, rho.mat(), tau, params.eig_floor));
    if (out.status != SolveStatus::Optimal) out.status = SolveStatus::Inaccurate;
    return out;
}

} // namespace entcost::bounds

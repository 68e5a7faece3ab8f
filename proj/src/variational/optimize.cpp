#include "entcost/variational/optimize.hpp"

#include "entcost/bounds/binegativity.hpp"
#include "entcost/qcore/ops.hpp"

#include <cmath>
#include <random>

namespace entcost::variational {

namespace q = qcore;

double loss(const q::KrausChannel& n, const AnsatzParams& params) {
    const int dn = 1 << params.n_qubits;
    if (n.dim_in() != dn)
        throw std::invalid_argument("loss: channel input dimension does not match the ansatz");
    CVec psi = ansatz_state(params);
    CMat rho_in = psi * psi.adjoint();
    // channel acts on the first half (system A); reference A' untouched
    q::KrausChannel lifted = n.embed(1, dn);
    CMat out = lifted.apply(rho_in);
    q::BipartiteState st(q::HermitianOperator(out), n.dim_out(), dn);
    return bounds::e_nb2_half(st).value_bits;
}

OptimizeResult optimize(const q::KrausChannel& n, const OptimizerConfig& cfg) {
    if (cfg.steps < 0 || cfg.step_size <= 0)
        throw std::invalid_argument("optimize: invalid config");
    const int nq = static_cast<int>(std::lround(std::log2(n.dim_in())));
    if ((1 << nq) != n.dim_in())
        throw std::invalid_argument("optimize: channel input must be a power of two");
    if (cfg.include_mes_init && cfg.depth < 1)
        throw std::invalid_argument("optimize: the MES candidate needs depth >= 1");

    OptimizeResult out;
    bool has_best = false;
    auto evaluate = [&](const AnsatzParams& p) {
        double v = loss(n, p);
        ++out.evaluations;
        if (!has_best || v > out.value_bits) {
            out.value_bits = v;
            out.best = p;
            has_best = true;
        }
        out.trace.emplace_back(out.evaluations, out.value_bits);
        return v;
    };

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);

    // The maximally entangled candidate is always scored when enabled (worth
    // exactly the Choi-state bound); the random start uses the budget.
    if (cfg.include_mes_init) {
        AnsatzParams mes(nq, cfg.depth);
        mes.angles = mes_angles(nq, cfg.depth);
        evaluate(mes);
    }
    AnsatzParams current(nq, cfg.depth);
    for (int r = 0; r < current.angles.rows(); ++r)
        for (int c = 0; c < current.angles.cols(); ++c) current.angles(r, c) = u(rng);
    if (out.evaluations < cfg.steps) evaluate(current);
    if (!has_best) {
        out.best = current;
        has_best = true;
    }

    // coordinate-wise golden-section sweep around the incumbent
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    const int total = static_cast<int>(out.best.angles.size());
    int coord = 0;
    while (out.evaluations + 4 <= cfg.steps) {
        int r = coord / out.best.angles.cols();
        int c = coord % out.best.angles.cols();
        coord = (coord + 1) % total;
        current = out.best;
        double center = current.angles(r, c);
        double a = center - cfg.step_size, b = center + cfg.step_size;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        auto probe = [&](double th) {
            current.angles(r, c) = th;
            return evaluate(current);
        };
        double f1 = probe(x1), f2 = probe(x2);
        for (int it = 0; it < 2 && out.evaluations < cfg.steps; ++it) {
            if (f1 >= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gr * (b - a);
                f1 = probe(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b - a);
                f2 = probe(x2);
            }
        }
    }
    return out;
}

} // namespace entcost::variational

#include "entcost/channels/named.hpp"

#include "entcost/qcore/ops.hpp"

#include <cmath>

namespace entcost::channels {

namespace q = qcore;

namespace {

void check_unit(double v, const char* name) {
    if (v < 0.0 || v > 1.0)
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

CMat pauli_x() {
    CMat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
CMat pauli_y() {
    CMat m(2, 2);
    m << Cplx(0, 0), Cplx(0, -1), Cplx(0, 1), Cplx(0, 0);
    return m;
}
CMat pauli_z() {
    CMat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

CMat swap_gate() {
    CMat s = CMat::Zero(4, 4);
    s(0, 0) = s(3, 3) = 1;
    s(1, 2) = s(2, 1) = 1;
    return s;
}

// Kraus operators from the Choi state of a d_in -> d_out map, reference first.
std::vector<CMat> kraus_from_choi(const CMat& choi, int d_in, int d_out) {
    Eigen::SelfAdjointEigenSolver<CMat> es(choi);
    double cut = 1e-12 * es.eigenvalues().cwiseAbs().maxCoeff();
    std::vector<CMat> ops;
    for (int k = 0; k < choi.rows(); ++k) {
        double lam = es.eigenvalues()(k);
        if (lam <= cut) continue;
        CMat kop(d_out, d_in);
        for (int i = 0; i < d_in; ++i)
            for (int a = 0; a < d_out; ++a) kop(a, i) = es.eigenvectors()(i * d_out + a, k);
        ops.push_back(std::sqrt(lam * d_in) * kop);
    }
    return ops;
}

} // namespace

NamedChannel werner_holevo(int d) {
    if (d < 2) throw std::invalid_argument("werner_holevo: d must be >= 2");
    CMat phi = q::max_entangled(d).mat();
    CMat swap = d * q::partial_transpose(phi, q::SubsystemLayout::bipartite(d, d), 2u);
    CMat choi = (CMat::Identity(d * d, d * d) - swap) / (d * (d - 1));
    auto ops = kraus_from_choi(choi, d, d);
    return {"werner_holevo", {{"d", double(d)}}, q::KrausChannel(ops, d, d)};
}

NamedChannel depolarizing(double p, int d) {
    check_unit(p, "depolarizing p");
    // p rho + (1-p) I/d as a Weyl-twirl mixture
    CMat shift = CMat::Zero(d, d);
    for (int i = 0; i < d; ++i) shift((i + 1) % d, i) = 1;
    CMat clock = CMat::Zero(d, d);
    for (int i = 0; i < d; ++i) clock(i, i) = std::exp(Cplx(0, 2.0 * M_PI * i / d));
    std::vector<CMat> ops;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            double w = (1.0 - p) / (d * d) + (a == 0 && b == 0 ? p : 0.0);
            if (w <= 0) continue;
            CMat wab = CMat::Identity(d, d);
            for (int i = 0; i < a; ++i) wab = shift * wab;
            for (int i = 0; i < b; ++i) wab = clock * wab;
            ops.push_back(std::sqrt(w) * wab);
        }
    return {"depolarizing", {{"p", p}, {"d", double(d)}}, q::KrausChannel(ops, d, d)};
}

NamedChannel amplitude_damping(double gamma) {
    check_unit(gamma, "amplitude_damping gamma");
    CMat k0 = CMat::Zero(2, 2), k1 = CMat::Zero(2, 2);
    k0(0, 0) = 1;
    k0(1, 1) = std::sqrt(1.0 - gamma);
    k1(0, 1) = std::sqrt(gamma);
    return {"amplitude_damping", {{"gamma", gamma}}, q::KrausChannel({k0, k1}, 2, 2)};
}

NamedChannel thermal_damping_to_one(double gamma) {
    check_unit(gamma, "thermal_damping gamma");
    CMat k0 = CMat::Zero(2, 2), k1 = CMat::Zero(2, 2);
    k0(0, 0) = std::sqrt(1.0 - gamma);
    k0(1, 1) = 1;
    k1(1, 0) = std::sqrt(gamma);
    return {"thermal_damping_to_one", {{"gamma", gamma}}, q::KrausChannel({k0, k1}, 2, 2)};
}

NamedChannel collective_dephased_swap(double p, double phi) {
    check_unit(p, "collective_dephased_swap p");
    CMat uphi = CMat::Zero(4, 4);
    uphi(0, 0) = 1;
    uphi(1, 1) = std::exp(Cplx(0, phi));
    uphi(2, 2) = std::exp(Cplx(0, phi));
    uphi(3, 3) = std::exp(Cplx(0, 2 * phi));
    CMat s = swap_gate();
    std::vector<CMat> ops;
    if (p > 0) ops.push_back(std::sqrt(p) * s);
    if (p < 1) ops.push_back(std::sqrt(1.0 - p) * uphi * s);
    return {"collective_dephased_swap", {{"p", p}, {"phi", phi}}, q::KrausChannel(ops, 4, 4)};
}

NamedChannel mixed_unitary(const std::vector<double>& probs, const std::vector<CMat>& unitaries) {
    if (probs.size() != unitaries.size() || probs.empty())
        throw std::invalid_argument("mixed_unitary: probs and unitaries must match");
    double sum = 0;
    for (double pr : probs) {
        if (pr < 0) throw std::invalid_argument("mixed_unitary: negative probability");
        sum += pr;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw std::invalid_argument("mixed_unitary: probabilities must sum to 1");
    const int d = static_cast<int>(unitaries[0].rows());
    std::vector<CMat> ops;
    for (size_t i = 0; i < probs.size(); ++i)
        if (probs[i] > 0) ops.push_back(std::sqrt(probs[i]) * unitaries[i]);
    return {"mixed_unitary", {{"branches", double(probs.size())}}, q::KrausChannel(ops, d, d)};
}

q::HermitianOperator xxz_hamiltonian() {
    CMat xx = q::tensor(pauli_x(), pauli_x());
    CMat yy = q::tensor(pauli_y(), pauli_y());
    CMat zz = q::tensor(pauli_z(), pauli_z());
    return q::HermitianOperator(-0.5 * xx - 0.5 * yy - 1.0 * zz);
}

NamedChannel xxz_noisy_step(double t, double gamma) {
    if (t < 0) throw std::invalid_argument("xxz_noisy_step: t must be >= 0");
    check_unit(gamma, "xxz gamma");
    CMat u = q::evolve(xxz_hamiltonian(), t);
    q::KrausChannel evolution({u}, 4, 4);
    q::KrausChannel damp = thermal_damping_to_one(gamma).realized.embed(1, 2);
    q::KrausChannel composite = damp.compose_after(evolution);
    return {"xxz_noisy_step", {{"t", t}, {"gamma", gamma}}, composite};
}

NamedChannel sample_mixed_unitary(const std::vector<double>& probs, int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<CMat> us;
    us.reserve(probs.size());
    for (size_t i = 0; i < probs.size(); ++i) us.push_back(q::haar_unitary(d, rng));
    NamedChannel nc = mixed_unitary(probs, us);
    nc.kind = "sampled_mixed_unitary";
    nc.params["seed"] = double(seed);
    nc.params["d"] = double(d);
    return nc;
}

q::BipartiteState noisy_bell(double gamma, double p) {
    check_unit(gamma, "noisy_bell gamma");
    check_unit(p, "noisy_bell p");
    q::KrausChannel arm_a = amplitude_damping(gamma).realized.embed(1, 2);
    q::KrausChannel arm_b = depolarizing(p, 2).realized.embed(2, 1);
    CMat rho = arm_b.apply(arm_a.apply(q::max_entangled(2).mat()));
    return q::BipartiteState(q::HermitianOperator(rho), 2, 2);
}

} // namespace entcost::channels

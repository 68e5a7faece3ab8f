#include "entcost/variational/ansatz.hpp"

#include <cmath>
#include <stdexcept>

namespace entcost::variational {

namespace {

// wire w is bit (W-1-w); wire 0 most significant, matching tensor order
void apply_ry(CVec& psi, int wires, int w, double theta) {
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    const long long mask = 1ll << (wires - 1 - w);
    const long long n = psi.size();
    for (long long i = 0; i < n; ++i) {
        if (i & mask) continue;
        Cplx a = psi(i), b = psi(i | mask);
        psi(i) = c * a - s * b;
        psi(i | mask) = s * a + c * b;
    }
}

void apply_cnot(CVec& psi, int wires, int ctrl, int targ) {
    const long long cm = 1ll << (wires - 1 - ctrl);
    const long long tm = 1ll << (wires - 1 - targ);
    const long long n = psi.size();
    for (long long i = 0; i < n; ++i) {
        if ((i & cm) && !(i & tm)) std::swap(psi(i), psi(i | tm));
    }
}

} // namespace

CVec ansatz_state(const AnsatzParams& params) {
    const int n = params.n_qubits;
    const int wires = 2 * n;
    if (params.depth < 0 || params.angles.rows() != params.depth + 1 ||
        params.angles.cols() != wires)
        throw std::invalid_argument("ansatz_state: angle array shape mismatch");
    CVec psi = CVec::Zero(1ll << wires);
    psi(0) = 1.0;
    for (int b = 0; b <= params.depth; ++b) {
        for (int w = 0; w < wires; ++w) apply_ry(psi, wires, w, params.angles(b, w));
        if (b < params.depth) {
            for (int w = 0; w < wires; ++w) apply_cnot(psi, wires, w, (w + 1) % wires);
        }
    }
    return psi;
}

RMat mes_angles(int n_qubits, int depth) {
    if (depth < 1) throw std::invalid_argument("mes_angles: needs depth >= 1");
    RMat angles = RMat::Zero(depth + 1, 2 * n_qubits);
    // superpositions on wires 1..n feed the ring of the last block; the
    // resulting GF(2)-linear basis map is injective on the first n wires
    for (int w = 1; w <= n_qubits; ++w) angles(depth - 1, w) = M_PI / 2.0;
    return angles;
}

} // namespace entcost::variational

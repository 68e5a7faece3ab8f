#pragma once

#include "entcost/qcore/random.hpp"
#include "entcost/qcore/types.hpp"

#include <map>
#include <string>

namespace entcost::channels {

struct NamedChannel {
    std::string kind;
    std::map<std::string, double> params;
    qcore::KrausChannel realized;
};

/// W(rho) = (I - rho^T)/(d-1); Kraus set from the Choi eigendecomposition.
NamedChannel werner_holevo(int d);

/// D(rho) = p rho + (1-p) I/d (p multiplies the state, as in the appendix).
NamedChannel depolarizing(double p, int d = 2);

/// Damping toward |0>: K0 = |0><0| + sqrt(1-g)|1><1|, K1 = sqrt(g)|0><1|.
NamedChannel amplitude_damping(double gamma);

/// Damping toward |1>: K0 = sqrt(1-g)|0><0| + |1><1|, K1 = sqrt(g)|1><0|.
NamedChannel thermal_damping_to_one(double gamma);

/// N_p(rho) = p rho^S + (1-p) U_phi rho^S U_phi^dag with rho^S = SWAP rho SWAP
/// and U_phi = diag(1, e^{i phi}, e^{i phi}, e^{2 i phi}).
NamedChannel collective_dephased_swap(double p, double phi);

NamedChannel mixed_unitary(const std::vector<double>& probs, const std::vector<CMat>& unitaries);

/// Heisenberg XXZ step: thermal damping (rate gamma) on qubit 1 after
/// U = exp(-iHt), H = Jx XX + Jy YY + Jz ZZ with Jx = Jy = -1/2, Jz = -1.
NamedChannel xxz_noisy_step(double t, double gamma);

/// Haar-random mixed-unitary channel, deterministic under seed.
NamedChannel sample_mixed_unitary(const std::vector<double>& probs, int d, std::uint64_t seed);

/// Bell state with amplitude damping (gamma) on arm A and depolarizing (p,
/// state-keeping convention) on arm B.
qcore::BipartiteState noisy_bell(double gamma, double p);

/// Two-body XXZ Hamiltonian used by the noisy-evolution example.
qcore::HermitianOperator xxz_hamiltonian();

} // namespace entcost::channels

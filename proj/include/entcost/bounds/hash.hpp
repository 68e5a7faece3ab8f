#pragma once

#include "entcost/bounds/bound_result.hpp"
#include "entcost/qcore/ops.hpp"

namespace entcost::bounds {

/// SDP relaxation of the hash binegativity bound: -2 log2 f_hat where f_hat
/// maximizes the fidelity block with the sigma slot C^{T_B} - D^{T_B} under
/// C + D = M^{T_B} - N^{T_B} and tr(M+N) <= 1 (M eliminated by substitution).
BoundResult e_hash2_lower(const qcore::BipartiteState& rho);

/// The dual program; agrees with the primal by strong duality.
BoundResult e_hash2_dual(const qcore::BipartiteState& rho);

} // namespace entcost::bounds

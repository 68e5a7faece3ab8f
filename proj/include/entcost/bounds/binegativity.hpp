#pragma once

#include "entcost/bounds/bound_result.hpp"
#include "entcost/qcore/ops.hpp"

namespace entcost::bounds {

/// Root fidelity sqrt(F(rho, sigma)) via the block SDP with sigma fixed.
double fidelity_sdp(const qcore::BipartiteState& rho, const qcore::HermitianOperator& sigma);

/// Logarithmic fidelity of binegativity: -2 log2 of the maximal root fidelity
/// between rho and the PPT_2 sub-state set (primal SDP, dual co-solved by the
/// interior-point method).
BoundResult e_nb2_half(const qcore::BipartiteState& rho);

/// The explicit dual program; any feasible point certifies a lower bound.
BoundResult e_nb2_half_dual(const qcore::BipartiteState& rho);

/// Fidelity distance to PPT_k. k = 1 is the Rains set, k = 2 matches
/// e_nb2_half; larger k appends the chain of auxiliary operators.
BoundResult e_nb_k_half(const qcore::BipartiteState& rho, int k);

/// sigma in PPT_k, decided by minimizing the trace-norm budget of the chain.
bool ppt_k_membership(const qcore::HermitianOperator& sigma, const qcore::SubsystemLayout& layout,
                      int k, double tol = 1e-7);

/// The conic program behind e_nb_k_half (support-reduced), for lowering
/// dumps and cross-checks against external solvers.
conic::ConicProgram e_nb_k_program(const qcore::BipartiteState& rho, int k);

} // namespace entcost::bounds

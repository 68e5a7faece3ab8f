#pragma once

#include "entcost/bounds/bound_result.hpp"
#include "entcost/qcore/ops.hpp"

namespace entcost::bounds {

/// Min-relative-entropy distance to PPT_2:
/// -log2 max { tr(Pi_rho sigma) : sigma in PPT_2 }, Pi_rho the support
/// projector of rho (eigenvalues below 1e-8 * lambda_max are outside).
BoundResult e_eta(const qcore::BipartiteState& rho);

/// Tempered negativity, log2 max { tr(A rho) : ||A^{T_B}||_inf <= 1,
/// ||A||_inf <= tr(A rho) }, clamped at zero.
BoundResult tempered_negativity(const qcore::BipartiteState& rho);

/// Entanglement of formation of a two-qubit state via the concurrence
/// closed form; the plotting upper envelope.
double eof_two_qubit(const qcore::BipartiteState& rho);

} // namespace entcost::bounds

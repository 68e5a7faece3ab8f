#pragma once

#include "entcost/qcore/types.hpp"

namespace entcost::qcore {

CMat tensor(const CMat& a, const CMat& b);
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
CVec tensor(const CVec& a, const CVec& b);

/// Partial transpose over the subsystems selected by `mask` (bit i = subsystem i).
CMat partial_transpose(const CMat& m, const SubsystemLayout& layout, uint32_t mask);
HermitianOperator partial_transpose(const HermitianOperator& m, const SubsystemLayout& layout,
                                    const std::string& subsystem);

CMat partial_trace(const CMat& m, const SubsystemLayout& layout, int subsystem_index);
HermitianOperator partial_trace(const HermitianOperator& m, const SubsystemLayout& layout,
                                const std::string& subsystem);

/// Reorder subsystems; `order` lists existing labels in their new sequence.
CMat permute_systems(const CMat& m, const SubsystemLayout& layout, const std::vector<int>& order);
HermitianOperator permute_systems(const HermitianOperator& m, const SubsystemLayout& layout,
                                  const std::vector<std::string>& order);

double trace_norm(const HermitianOperator& m);
double trace_norm(const CMat& m);

/// Uhlmann fidelity F(rho, sigma) = (tr sqrt(sqrt(sigma) rho sqrt(sigma)))^2.
double fidelity(const BipartiteState& rho, const HermitianOperator& sigma);
double fidelity(const CMat& rho, const CMat& sigma);

bool is_ppt(const BipartiteState& rho, double tol = 1e-9);

BipartiteState max_entangled(int d);

/// Choi state of a point-to-point channel, subsystem order (reference, output).
BipartiteState choi_state(const KrausChannel& n);

/// Choi state of a bipartite channel N_{AB->A'B'}, laid out as AA' : BB'.
BipartiteState choi_state_bipartite(const KrausChannel& n, int dim_a, int dim_b,
                                    int dim_ap, int dim_bp);

/// U = exp(-i H t), computed by eigendecomposition.
CMat evolve(const HermitianOperator& h, double t);

RVec hermitian_eigenvalues(const CMat& m);
double min_eigenvalue(const CMat& m);

/// Projector onto the eigenspaces above `rel_cutoff * lambda_max`.
CMat support_projector(const HermitianOperator& m, double rel_cutoff = 1e-8);

int matrix_rank(const HermitianOperator& m, double rel_cutoff = 1e-12);

} // namespace entcost::qcore

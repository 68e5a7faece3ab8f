#pragma once

#include "entcost/bounds/binegativity.hpp"
#include "entcost/qcore/types.hpp"

namespace entcost::channels {

/// Point-to-point dynamical lower bound: e_nb2_half of the Choi state across
/// the reference : output cut.
bounds::BoundResult channel_cost_lb(const qcore::KrausChannel& n);

/// Bipartite channel bound: Choi state regrouped to the AA' : BB' cut.
bounds::BoundResult bipartite_channel_cost_lb(const qcore::KrausChannel& n, int dim_a, int dim_b,
                                              int dim_ap, int dim_bp);

} // namespace entcost::channels

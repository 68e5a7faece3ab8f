#include "entcost/channels/cost.hpp"

#include "entcost/qcore/ops.hpp"

namespace entcost::channels {

namespace q = qcore;

bounds::BoundResult channel_cost_lb(const q::KrausChannel& n) {
    bounds::BoundResult b = bounds::e_nb2_half(q::choi_state(n));
    b.bound = "channel_cost_lb";
    return b;
}

bounds::BoundResult bipartite_channel_cost_lb(const q::KrausChannel& n, int dim_a, int dim_b,
                                              int dim_ap, int dim_bp) {
    bounds::BoundResult b =
        bounds::e_nb2_half(q::choi_state_bipartite(n, dim_a, dim_b, dim_ap, dim_bp));
    b.bound = "bipartite_channel_cost_lb";
    return b;
}

} // namespace entcost::channels

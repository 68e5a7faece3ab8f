#pragma once

#include "entcost/bounds/bound_result.hpp"
#include "entcost/variational/ansatz.hpp"

#include <cstdint>
#include <vector>

namespace entcost::variational {

/// f_N(theta) = e_nb2_half of (N (x) id) applied to the ansatz state, across
/// the output : reference cut. Returns bits.
double loss(const qcore::KrausChannel& n, const AnsatzParams& params);

struct OptimizerConfig {
    int steps = 100;         // loss-evaluation budget (each is one SDP solve)
    double step_size = 0.07; // per-coordinate search radius, radians
    std::uint64_t seed = 0;
    bool include_mes_init = true;
    int depth = 10;
};

struct OptimizeResult {
    AnsatzParams best;
    double value_bits = 0.0;
    int evaluations = 0;
    std::vector<std::pair<int, double>> trace; // (evaluation index, best so far)
};

/// Gradient-free maximization of the loss by coordinate-wise golden-section
/// sweeps within +-step_size, seeded from random angles plus (optionally) the
/// analytic maximally-entangled configuration.
OptimizeResult optimize(const qcore::KrausChannel& n, const OptimizerConfig& cfg);

} // namespace entcost::variational

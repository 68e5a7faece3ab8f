#pragma once

#include "entcost/qcore/types.hpp"

namespace entcost::variational {

/// Hardware-efficient ansatz on 2n wires for an n-qubit channel: `depth`
/// blocks of an Ry column followed by a CNOT ring (wire i controls i+1, last
/// controls first), then one trailing Ry column. Angles are (depth+1) x (2n).
struct AnsatzParams {
    int n_qubits = 1; // channel width; the circuit uses 2n wires
    int depth = 10;
    RMat angles;

    AnsatzParams() = default;
    AnsatzParams(int n, int d) : n_qubits(n), depth(d), angles(RMat::Zero(d + 1, 2 * n)) {}
};

/// Statevector of the ansatz applied to |0...0>, wire 0 most significant.
CVec ansatz_state(const AnsatzParams& params);

/// Angle configuration preparing a maximally entangled state across the
/// first-n : last-n wire cut: Ry(pi/2) on wires 1..n in the last block.
/// Requires depth >= 1.
RMat mes_angles(int n_qubits, int depth);

} // namespace entcost::variational

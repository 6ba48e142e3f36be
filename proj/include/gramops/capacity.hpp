#pragma once

namespace gramops {

/// Size limits for the exponential-cost paths. The matrix-free qubit limit
/// can be raised or lowered through the GRAMOPS_CAPACITY environment
/// variable; the dense limits are fixed by memory footprint.
struct Capacity {
    static int matrix_free_qubits();      // default 26
    static constexpr int dense_qubits = 14;
    static constexpr int knapsack_dense_qubits = 12;
    static constexpr int independence_vertices = 64;
};

}  // namespace gramops

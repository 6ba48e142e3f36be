#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gramops/graph.hpp"

namespace gramops {

using cplx = std::complex<double>;

/// Pauli string i^phase_power * X^{x_mask} * Z^{z_mask} on up to 64 qubits.
/// Basis convention: computational basis ordered by integer value, qubit 0 is
/// the least significant bit.
struct PauliString {
    int num_qubits = 0;
    std::uint64_t x_mask = 0;
    std::uint64_t z_mask = 0;
    int phase_power = 0;  // global factor i^phase_power, mod 4

    static PauliString identity(int num_qubits) { return {num_qubits, 0, 0, 0}; }
    static PauliString x_on(int num_qubits, int qubit);
    static PauliString z_on(int num_qubits, int qubit);
    static PauliString y_on(int num_qubits, int qubit);

    PauliString operator*(const PauliString& o) const;
    cplx phase() const;  // i^phase_power
    bool is_hermitian_involution() const;
    bool operator==(const PauliString& o) const {
        return num_qubits == o.num_qubits && x_mask == o.x_mask && z_mask == o.z_mask &&
               phase_power == o.phase_power;
    }
};

/// True iff p and q commute (symplectic-form test).
bool pauli_commutes(const PauliString& p, const PauliString& q);

/// One Hermitian involution per vertex, anticommuting exactly across edges:
/// strings[a] = X_a * prod_{b < a, (a,b) edge} Z_b. Checked on construction.
struct GraphRep {
    Graph graph;
    std::vector<PauliString> strings;
};

GraphRep graph_to_pauli_rep(const Graph& g);

/// Weighted Pauli-string sum H = sum_k coeff_k * P_k.
struct PauliTerm {
    cplx coeff;
    PauliString string;
};

/// out = H * state without materializing H. Each output amplitude is an
/// independent sum over terms in fixed order, so parallel chunking is
/// bit-identical to the sequential result.
void apply_pauli_sum(const std::vector<PauliTerm>& terms, const Eigen::VectorXcd& state,
                     Eigen::VectorXcd& out);

Eigen::MatrixXcd build_dense_sum(const std::vector<PauliTerm>& terms);

std::vector<PauliTerm> hamiltonian_terms(const std::vector<double>& coeffs, const GraphRep& rep);

/// H*state for H = sum_a J_a O_a over the representation's strings.
Eigen::VectorXcd apply_hamiltonian(const std::vector<double>& coeffs, const GraphRep& rep,
                                   const Eigen::VectorXcd& state);

/// Dense 2^n x 2^n Hermitian matrix of the same H (oracle-sized graphs only).
Eigen::MatrixXcd build_dense(const std::vector<double>& coeffs, const GraphRep& rep);

}  // namespace gramops

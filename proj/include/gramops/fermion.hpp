#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gramops/graph.hpp"
#include "gramops/pauli.hpp"

namespace gramops {

/// Degree-q Majorana polynomial couplings, indexed by strictly increasing
/// q-tuples of 1-based mode indices in lexicographic order.
struct SykInstance {
    int n = 0;  // number of Majorana modes, even
    int q = 0;  // monomial degree
    std::vector<std::vector<int>> tuples;
    std::vector<double> values;

    double l2_norm() const;
};

enum class SykNormalization { expectation, sphere };

/// Random instance: i.i.d. Gaussians with variance 1/C(n,q) ("expectation"
/// mode, unit norm in expectation) or rescaled to exactly unit norm ("sphere").
SykInstance syk_random(int n, int q, std::uint64_t seed, SykNormalization normalization);

/// Vertices are q-subsets of [1..n] in lexicographic order; two monomials
/// anticommute iff q*q - |intersection| is odd.
Graph monomial_commutation_graph(int n, int q);

/// All strictly increasing q-tuples of [1..n], lexicographic.
std::vector<std::vector<int>> increasing_tuples(int n, int q);

/// Sylvester Hadamard matrix, m a power of two. Entries +-1, H H^T = m I.
Eigen::MatrixXd hadamard_matrix(int m);

/// Quadratic-Hamiltonian coefficient matrix: purely imaginary, antisymmetric,
/// hence Hermitian.
struct FreeFermionModel {
    int n = 0;
    Eigen::MatrixXcd q_matrix;
};

/// Q = (i/sqrt(n/2)) [[0, H], [-H, 0]] with the order-n/2 Hadamard block.
/// Requires n/2 a power of two; Q is an involution.
FreeFermionModel build_q_matrix(int n);

/// Same block layout with i.i.d. +-1 entries instead of a Hadamard block;
/// works for any even n >= 2 but is generally not an involution.
FreeFermionModel build_q_matrix_random_sign(int n, std::uint64_t seed);

/// Ground-state energy of the quadratic Hamiltonian determined by Q,
/// H_free = -sum_{i<j} Q_ij gamma_i gamma_j: equal to -(1/2) sum_k |lambda_k(Q)|.
double free_ground_energy(const FreeFermionModel& model);

/// Jordan-Wigner form of H_free on n/2 qubits (exact-diagonalization oracle).
std::vector<PauliTerm> free_hamiltonian_terms(const FreeFermionModel& model);

/// Ground-state two-point function G = I - Q.
struct WickState {
    Eigen::MatrixXcd two_point;
};

WickState wick_two_point(const FreeFermionModel& model);

/// <gamma_i gamma_j gamma_k gamma_l> = G_ij G_kl - G_ik G_jl + G_il G_jk,
/// indices strictly increasing (1-based).
cplx wick_quartic(const WickState& state, int i, int j, int k, int l);

/// Signed symmetrization over all 4! index permutations of
/// Q_{j1 j2} Q_{j3 j4}, scaled by 1/n. Indices need not be increasing;
/// the value is antisymmetric under transpositions.
double j0_raw_value(const FreeFermionModel& model, const std::vector<int>& indices);

/// Quartic couplings built from Q: j0_raw_value over increasing tuples,
/// rescaled to unit norm. The overall sign is chosen so the Wick expectation
/// below is negative for these couplings.
SykInstance j0_coefficients(const FreeFermionModel& model);
SykInstance j0_coefficients(int n);

/// <H> in the Wick state for the q=4 Hamiltonian with couplings inst;
/// a variational upper bound on the exact ground energy.
double syk_expectation_wick(const SykInstance& inst, const FreeFermionModel& model);

/// Wick expectation after flipping each coupling's sign to match the
/// corresponding j0 coefficient (couplings with vanishing j0 stay unchanged).
/// Upper-bounds the ground energy of the model where signs may be chosen
/// freely per monomial; equals -sum_a |J_a| |W_a| for Wick values W_a.
double commutation_only_energy(const SykInstance& inst, const FreeFermionModel& model);

/// Jordan-Wigner Majorana operator, index in [1..n], on n/2 qubits.
PauliString majorana_operator(int n, int index);

/// Hermitian monomial i^{floor(q/2) adjusted} gamma_{i1} ... gamma_{iq} with
/// the standard degree-q phase (q even: i^{q/2}; q odd: i^{(q-1)/2}).
PauliString majorana_monomial(int n, const std::vector<int>& tuple);

std::vector<PauliTerm> syk_hamiltonian_terms(const SykInstance& inst);

/// Extremal eigenvalues of the instance Hamiltonian by exact diagonalization
/// (dense) or matrix-free Lanczos, via Jordan-Wigner.
struct SykExtremes {
    double ground = 0;
    double top = 0;
};

SykExtremes syk_exact_extremes(const SykInstance& inst, std::uint64_t seed = 1);

/// Ground state of the dense Jordan-Wigner Hamiltonian (small n only).
Eigen::VectorXcd dense_ground_state(const std::vector<PauliTerm>& terms);

std::string syk_to_json(const SykInstance& inst);
SykInstance syk_from_json(const std::string& text);

}  // namespace gramops

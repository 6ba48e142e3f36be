#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gramops/pauli.hpp"

namespace gramops {

/// O = c + sum_i O_i with one traceless 2x2 block per qubit.
struct KnapsackOperator {
    cplx scalar;
    std::vector<Eigen::Matrix2cd> qubit_terms;
};

/// Per-qubit lower-triangular form c_i Z + d_i A with A = [[0,0],[1,0]],
/// d_i >= 0 (phases absorbed into the conjugating unitaries).
struct KnapsackNormalForm {
    cplx scalar;
    struct Pair {
        cplx c;
        double d;
    };
    std::vector<Pair> pairs;
};

struct NormalFormResult {
    KnapsackNormalForm form;
    std::vector<Eigen::Matrix2cd> unitaries;  // U_i O_i U_i^dagger = c_i Z + d_i A
};

/// Schur lower-triangularization of each qubit term. Convention: c_i is the
/// eigenvalue with nonnegative real part (ties broken toward nonnegative
/// imaginary part); singular values are preserved.
NormalFormResult to_normal_form(const KnapsackOperator& op);

struct BoundReport {
    double lower_bound = 0;
    std::optional<double> exact_sigma_min;
    std::optional<std::vector<double>> leaf_values;  // |c + sum_i sigma_i c_i| per sign pattern
    std::int64_t evaluations = 0;
};

struct BoundOptions {
    bool collect_leaves = false;   // capped at 16 qubits
    bool try_all_orders = false;   // exhaustive qubit orders, n <= 6
};

/// Certified lower bound on the least singular value of c + sum (c_i Z + d_i A_i):
/// recursion over qubits where each step bounds the two half-spectra and
/// combines them through the exact minimum eigenvalue of a 2x2 block surrogate.
/// Exact when all d_i = 0.
BoundReport recursive_lower_bound(const KnapsackNormalForm& nf, const BoundOptions& opts = {});

/// Least singular value of the dense 2^n x 2^n operator (oracle, n <= 12).
double exact_min_singular(const KnapsackNormalForm& nf);

/// Ground energy of O^dagger O, computed independently of the SVD route.
double hamiltonian_ground(const KnapsackNormalForm& nf);

struct SubsetSumResult {
    double value = 0;
    std::vector<int> signs;  // +1 / -1 per coefficient
};

/// Minimizes |c + sum_i sigma_i c_i| over sign patterns, exactly.
/// Bit enumeration up to 28 coefficients; real inputs additionally get a
/// meet-in-the-middle path up to 40. Ties prefer the lexicographically
/// smallest pattern with +1 < -1 (enumeration path).
SubsetSumResult subset_sum_min(cplx c, const std::vector<cplx>& coeffs);

/// Real-coefficient meet-in-the-middle path, exact; cross-checks enumeration.
SubsetSumResult subset_sum_min_meet_in_middle(double c, const std::vector<double>& coeffs);

/// Dense 2^n x 2^n matrix of the normal form (shared by the oracles).
Eigen::MatrixXcd densify(const KnapsackNormalForm& nf);
Eigen::MatrixXcd densify(const KnapsackOperator& op);

std::string knapsack_to_json(const KnapsackNormalForm& nf);

/// Accepts raw {"c":[re,im],"qubits":[{"matrix":[[..]..]}...]} or normal-form
/// {"c":[re,im],"pairs":[{"c_i":[re,im],"d_i":real}...]} input.
KnapsackNormalForm knapsack_from_json(const std::string& text);

}  // namespace gramops

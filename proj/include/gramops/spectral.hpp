#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "gramops/pauli.hpp"

namespace gramops {

enum class EigMethod { lanczos, dense };
enum class EigWhich { largest, smallest };

struct EigReport {
    double eigenvalue = 0;
    Eigen::VectorXcd vector;
    double residual_norm = 0;
    int iterations = 0;
    EigMethod method = EigMethod::lanczos;
};

/// Hermitian operator given by its action on a vector.
using MatVec = std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>;

struct EigOptions {
    double tol = 1e-8;         // residual relative to the spectral scale
    std::uint64_t seed = 1;    // start-vector seed
    int dense_threshold = 1024;  // materialize and diagonalize below this dim
    int max_basis = 200;       // Krylov basis cap before a restart (memory-capped)
    int max_restarts = 200;
};

/// Extremal eigenpair of a Hermitian operator: restarted Lanczos with full
/// reorthogonalization, or a dense eigendecomposition for small dimensions.
/// Deterministic given the seed. Throws ConvergenceError (carrying the best
/// estimate) if the restart budget runs out.
EigReport extreme_eigenvalue(const MatVec& matvec, std::int64_t dim, EigWhich which,
                             const EigOptions& opts = {});

/// max(|lambda_max|, |lambda_min|) of H = sum_a J_a O_a for the representation.
double operator_norm(const std::vector<double>& coeffs, const GraphRep& rep, double tol = 1e-8,
                     std::uint64_t seed = 1);

/// Both extremal eigenvalues of the representation Hamiltonian.
std::pair<EigReport, EigReport> extreme_pair(const std::vector<double>& coeffs,
                                             const GraphRep& rep, double tol = 1e-8,
                                             std::uint64_t seed = 1);

}  // namespace gramops

#include "gramops/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "gramops/errors.hpp"
#include "gramops/rng.hpp"

namespace gramops {

namespace {

Eigen::VectorXcd seeded_unit_vector(std::int64_t dim, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::VectorXcd v(dim);
    for (std::int64_t i = 0; i < dim; ++i)
        v[i] = cplx(rng.next_gaussian(), rng.next_gaussian());
    v /= v.norm();
    return v;
}

EigReport dense_extreme(const MatVec& matvec, std::int64_t dim, EigWhich which) {
    Eigen::MatrixXcd h(dim, dim);
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
    Eigen::VectorXcd col(dim);
    for (std::int64_t j = 0; j < dim; ++j) {
        e[j] = 1;
        matvec(e, col);
        h.col(j) = col;
        e[j] = 0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    const std::int64_t idx = which == EigWhich::largest ? dim - 1 : 0;
    EigReport r;
    r.eigenvalue = solver.eigenvalues()[idx];
    r.vector = solver.eigenvectors().col(idx);
    r.residual_norm = (h * r.vector - r.eigenvalue * r.vector).norm();
    r.iterations = 1;
    r.method = EigMethod::dense;
    return r;
}

// Basis memory is capped at ~3 GB so huge state spaces fall back to more
// frequent restarts instead of exhausting RAM.
int capped_basis(std::int64_t dim, int requested) {
    const double budget_vectors = 3e9 / (16.0 * static_cast<double>(dim));
    const int cap = static_cast<int>(std::max(8.0, std::min<double>(requested, budget_vectors)));
    return static_cast<int>(std::min<std::int64_t>(cap, dim));
}

}  // namespace

EigReport extreme_eigenvalue(const MatVec& matvec, std::int64_t dim, EigWhich which,
                             const EigOptions& opts) {
    if (dim < 1) throw ValidationError("operator dimension must be >= 1");
    if (dim <= opts.dense_threshold) return dense_extreme(matvec, dim, which);

    const int max_basis = capped_basis(dim, opts.max_basis);
    Eigen::VectorXcd v = seeded_unit_vector(dim, opts.seed);
    Eigen::MatrixXcd basis(dim, max_basis);
    Eigen::VectorXd alpha(max_basis), beta(max_basis);
    Eigen::VectorXcd w(dim);

    double best_value = 0;
    double best_residual = std::numeric_limits<double>::infinity();
    Eigen::VectorXcd best_vector;
    double scale = 0;  // running spectral-scale estimate, max |Ritz value|
    int total_iterations = 0;

    for (int restart = 0; restart <= opts.max_restarts; ++restart) {
        int m = 0;
        bool breakdown = false;
        for (int j = 0; j < max_basis; ++j) {
            basis.col(j) = v;
            matvec(v, w);
            ++total_iterations;
            alpha[j] = std::real(basis.col(j).dot(w));
            // Full reorthogonalization; second pass only after significant
            // cancellation (fixed threshold keeps the schedule deterministic).
            const double pre_norm = w.norm();
            w.noalias() -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).adjoint() * w);
            if (w.norm() < 0.5 * pre_norm)
                w.noalias() -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).adjoint() * w);
            beta[j] = w.norm();
            m = j + 1;
            if (beta[j] <= 1e-14 * std::max(1.0, scale)) {
                breakdown = true;  // exact invariant subspace
                break;
            }
            v = w / beta[j];
        }

        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            tri(i, i) = alpha[i];
            if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tsolver(tri);
        const int idx = which == EigWhich::largest ? m - 1 : 0;
        const double theta = tsolver.eigenvalues()[idx];
        scale = std::max({scale, std::abs(tsolver.eigenvalues()[0]),
                          std::abs(tsolver.eigenvalues()[m - 1])});

        Eigen::VectorXcd ritz = basis.leftCols(m) * tsolver.eigenvectors().col(idx).cast<cplx>();
        ritz /= ritz.norm();
        matvec(ritz, w);
        const double residual = (w - theta * ritz).norm();
        if (residual < best_residual) {
            best_residual = residual;
            best_value = theta;
            best_vector = ritz;
        }
        if (best_residual <= opts.tol * std::max(1e-300, scale)) {
            EigReport r;
            r.eigenvalue = best_value;
            r.vector = best_vector;
            r.residual_norm = best_residual;
            r.iterations = total_iterations;
            r.method = EigMethod::lanczos;
            return r;
        }
        if (breakdown) {
            // Krylov space exhausted away from the target: restart fresh.
            v = seeded_unit_vector(dim, derive_seed(opts.seed, restart + 1));
        } else {
            v = ritz;
        }
    }
    throw ConvergenceError("Lanczos failed to converge: best residual " +
                               std::to_string(best_residual) + " for eigenvalue estimate " +
                               std::to_string(best_value),
                           best_value);
}

std::pair<EigReport, EigReport> extreme_pair(const std::vector<double>& coeffs,
                                             const GraphRep& rep, double tol,
                                             std::uint64_t seed) {
    const auto terms = hamiltonian_terms(coeffs, rep);
    const int n = rep.graph.num_vertices();
    const std::int64_t dim = std::int64_t{1} << n;
    MatVec mv = [&terms](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
        apply_pauli_sum(terms, in, out);
    };
    EigOptions opts;
    opts.tol = tol;
    opts.seed = seed;
    EigReport hi = extreme_eigenvalue(mv, dim, EigWhich::largest, opts);
    opts.seed = derive_seed(seed, 0x5eed);
    EigReport lo = extreme_eigenvalue(mv, dim, EigWhich::smallest, opts);
    return {std::move(lo), std::move(hi)};
}

double operator_norm(const std::vector<double>& coeffs, const GraphRep& rep, double tol,
                     std::uint64_t seed) {
    auto [lo, hi] = extreme_pair(coeffs, rep, tol, seed);
    return std::max(std::abs(lo.eigenvalue), std::abs(hi.eigenvalue));
}

}  // namespace gramops

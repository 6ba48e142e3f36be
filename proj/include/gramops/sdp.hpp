#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gramops/graph.hpp"

namespace gramops {

enum class SdpStatus { converged, max_iter, infeasible_detected };

struct SdpReport {
    double objective = 0;
    Eigen::MatrixXd matrix;                      // optimal variable, affine-feasible exactly
    std::optional<Eigen::VectorXd> vector_part;  // v block for the H program
    double primal_residual = 0;
    double dual_residual = 0;
    int iterations = 0;
    SdpStatus status = SdpStatus::converged;
};

/// One affine constraint sum_k coeff_k * X(i_k, j_k) = rhs on a symmetric
/// matrix variable. Off-diagonal entries stand for the symmetric pair, i.e.
/// the constraint matrix is coeff * (E_ij + E_ji) for i != j.
struct AffineConstraint {
    struct Entry {
        int row, col;
        double coeff;
    };
    std::vector<Entry> entries;
    double rhs = 0;

    static AffineConstraint fix_entry(int i, int j, double value) {
        return {{{i, j, 1.0}}, value};
    }
};

enum class SdpSense { minimize, maximize };

struct SdpOptions {
    double tol = 1e-8;  // primal/dual residuals, relative to the iterate scale
    int max_iter = 200000;
    double over_relaxation = 1.6;
};

/// Optimizes <objective, X> over symmetric PSD X subject to affine
/// constraints, by operator splitting: alternating projection onto the PSD
/// cone (full symmetric eigendecomposition) and onto the affine set, with
/// scaled dual updates. Non-convergence is reported through the status, not
/// thrown. The returned matrix satisfies the affine constraints exactly and
/// is PSD up to tolerance.
SdpReport solve_sdp(int dim, const std::vector<AffineConstraint>& constraints,
                    const Eigen::MatrixXd& objective, SdpSense sense, const SdpOptions& opts = {});

/// Lovasz theta: max sum of entries of PSD M' with M'(a,b) = 0 on edges and
/// trace M' = 1.
SdpReport lovasz_theta(const Graph& g, const SdpOptions& opts = {});

/// max J^T M J over PSD M with unit diagonal and zeros on edges.
SdpReport graph_sdp_h2(const Graph& g, const std::vector<double>& coeffs,
                       const SdpOptions& opts = {});

/// min (J, v) over PSD [[1, v^T], [v, M]] with M as in the H^2 program.
/// vector_part holds the optimal v.
SdpReport graph_sdp_h(const Graph& g, const std::vector<double>& coeffs,
                      const SdpOptions& opts = {});

}  // namespace gramops

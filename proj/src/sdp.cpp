#include "gramops/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "gramops/errors.hpp"

namespace gramops {

namespace {

/// Orthogonal projector onto an affine set of symmetric-matrix constraints.
/// Solves the normal equations through a prefactored sparse Gram matrix.
class AffineProjector {
public:
    AffineProjector(int dim, const std::vector<AffineConstraint>& constraints) : dim_(dim) {
        const auto m = static_cast<int>(constraints.size());
        rhs_.resize(m);
        rows_.reserve(constraints.size());
        for (int i = 0; i < m; ++i) {
            rhs_[i] = constraints[i].rhs;
            Row row;
            for (const auto& e : constraints[i].entries) {
                if (e.row < 0 || e.row >= dim || e.col < 0 || e.col >= dim)
                    throw ValidationError("constraint entry (" + std::to_string(e.row) + "," +
                                          std::to_string(e.col) + ") out of range for dimension " +
                                          std::to_string(dim));
                row.push_back({std::min(e.row, e.col), std::max(e.row, e.col), e.coeff});
            }
            rows_.push_back(std::move(row));
        }

        // Gram(i,j) = <A_i, A_j>_F with A = coeff * (E_rc + E_cr) off-diagonal.
        std::vector<Eigen::Triplet<double>> triplets;
        std::map<std::pair<int, int>, std::vector<std::pair<int, double>>> by_entry;
        for (int i = 0; i < m; ++i)
            for (const auto& e : rows_[i]) by_entry[{e.r, e.c}].push_back({i, e.v});
        std::map<std::pair<int, int>, double> gram;
        for (const auto& [entry, users] : by_entry) {
            const double metric = entry.first == entry.second ? 1.0 : 2.0;
            for (const auto& [i, vi] : users)
                for (const auto& [j, vj] : users)
                    if (i <= j) gram[{i, j}] += metric * vi * vj;
        }
        for (const auto& [ij, v] : gram) {
            triplets.emplace_back(ij.first, ij.second, v);
            if (ij.first != ij.second) triplets.emplace_back(ij.second, ij.first, v);
        }
        Eigen::SparseMatrix<double> g(m, m);
        g.setFromTriplets(triplets.begin(), triplets.end());
        solver_.compute(g);
        if (m > 0 && solver_.info() != Eigen::Success)
            throw ValidationError("affine constraints are linearly dependent or empty");
    }

    Eigen::VectorXd evaluate(const Eigen::MatrixXd& x) const {
        Eigen::VectorXd out(rhs_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            double acc = 0;
            for (const auto& e : rows_[i])
                acc += e.r == e.c ? e.v * x(e.r, e.c) : 2.0 * e.v * x(e.r, e.c);
            out[static_cast<int>(i)] = acc;
        }
        return out;
    }

    void project(Eigen::MatrixXd& x) const {
        if (rhs_.size() == 0) return;
        const Eigen::VectorXd y = solver_.solve(evaluate(x) - rhs_);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (const auto& e : rows_[i]) {
                x(e.r, e.c) -= y[static_cast<int>(i)] * e.v;
                if (e.r != e.c) x(e.c, e.r) -= y[static_cast<int>(i)] * e.v;
            }
    }

private:
    struct Entry {
        int r, c;
        double v;
    };
    using Row = std::vector<Entry>;
    int dim_;
    std::vector<Row> rows_;
    Eigen::VectorXd rhs_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver_;
};

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& x) {
    const Eigen::MatrixXd sym = 0.5 * (x + x.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
    const Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(0.0);
    return eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace

SdpReport solve_sdp(int dim, const std::vector<AffineConstraint>& constraints,
                    const Eigen::MatrixXd& objective, SdpSense sense, const SdpOptions& opts) {
    if (dim < 1) throw ValidationError("SDP dimension must be >= 1");
    if (objective.rows() != dim || objective.cols() != dim)
        throw ValidationError("objective is " + std::to_string(objective.rows()) + "x" +
                              std::to_string(objective.cols()) + ", expected " +
                              std::to_string(dim) + "x" + std::to_string(dim));
    if (opts.tol <= 0) throw ValidationError("tolerance must be positive");

    // Canonical form: minimize <C, X>.
    Eigen::MatrixXd c = 0.5 * (objective + objective.transpose());
    if (sense == SdpSense::maximize) c = -c;

    AffineProjector affine(dim, constraints);
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(dim, dim);
    double rho = 1.0;
    const double sigma = opts.over_relaxation;

    SdpReport report;
    double best_window = std::numeric_limits<double>::infinity();
    double window_min = std::numeric_limits<double>::infinity();
    int divergent_windows = 0;
    int it = 0;
    for (it = 1; it <= opts.max_iter; ++it) {
        x = z - u - c / rho;
        affine.project(x);
        const Eigen::MatrixXd x_relaxed = sigma * x + (1.0 - sigma) * z;
        const Eigen::MatrixXd z_prev = std::move(z);
        z = project_psd(x_relaxed + u);
        u += x_relaxed - z;

        const double scale_p = std::max(1.0, std::max(x.norm(), z.norm()));
        const double scale_d = std::max(1.0, rho * u.norm());
        report.primal_residual = (x - z).norm() / scale_p;
        report.dual_residual = rho * (z - z_prev).norm() / scale_d;
        if (report.primal_residual < opts.tol && report.dual_residual < opts.tol) {
            report.status = SdpStatus::converged;
            break;
        }

        const double combined = report.primal_residual + report.dual_residual;
        window_min = std::min(window_min, combined);
        if (it % 1000 == 0) {
            if (window_min > 2.0 * best_window && window_min > 1e-4)
                ++divergent_windows;
            else
                divergent_windows = 0;
            best_window = std::min(best_window, window_min);
            window_min = std::numeric_limits<double>::infinity();
            if (divergent_windows >= 5) {
                report.status = SdpStatus::infeasible_detected;
                break;
            }
        }

        // Residual balancing keeps the splitting well conditioned.
        if (it % 100 == 0) {
            if (report.primal_residual > 10.0 * report.dual_residual && rho < 1e6) {
                rho *= 2.0;
                u *= 0.5;
            } else if (report.dual_residual > 10.0 * report.primal_residual && rho > 1e-6) {
                rho *= 0.5;
                u *= 2.0;
            }
        }
    }
    if (it > opts.max_iter) {
        report.status = SdpStatus::max_iter;
        it = opts.max_iter;
    }
    report.iterations = it;

    // Report on the re-projected iterate: affine-exact, PSD up to tolerance.
    Eigen::MatrixXd final_x = project_psd(z);
    affine.project(final_x);
    report.matrix = std::move(final_x);
    double obj = (c.array() * report.matrix.array()).sum();
    report.objective = sense == SdpSense::maximize ? -obj : obj;
    return report;
}

namespace {

std::vector<AffineConstraint> edge_zero_constraints(const Graph& g, int offset) {
    std::vector<AffineConstraint> cons;
    for (const auto& [a, b] : g.edge_list())
        cons.push_back(AffineConstraint::fix_entry(a + offset, b + offset, 0.0));
    return cons;
}

void check_coeffs(const Graph& g, const std::vector<double>& coeffs) {
    if (static_cast<int>(coeffs.size()) != g.num_vertices())
        throw ValidationError("coefficient vector length " + std::to_string(coeffs.size()) +
                              " != vertex count " + std::to_string(g.num_vertices()));
}

}  // namespace

SdpReport lovasz_theta(const Graph& g, const SdpOptions& opts) {
    const int n = g.num_vertices();
    if (n < 1) throw ValidationError("Lovasz theta needs at least one vertex");
    auto cons = edge_zero_constraints(g, 0);
    AffineConstraint trace;
    for (int a = 0; a < n; ++a) trace.entries.push_back({a, a, 1.0});
    trace.rhs = 1.0;
    cons.push_back(std::move(trace));
    return solve_sdp(n, cons, Eigen::MatrixXd::Ones(n, n), SdpSense::maximize, opts);
}

SdpReport graph_sdp_h2(const Graph& g, const std::vector<double>& coeffs, const SdpOptions& opts) {
    const int n = g.num_vertices();
    if (n < 1) throw ValidationError("graph SDP needs at least one vertex");
    check_coeffs(g, coeffs);
    auto cons = edge_zero_constraints(g, 0);
    for (int a = 0; a < n; ++a) cons.push_back(AffineConstraint::fix_entry(a, a, 1.0));
    const Eigen::VectorXd j = Eigen::Map<const Eigen::VectorXd>(coeffs.data(), n);
    return solve_sdp(n, cons, j * j.transpose(), SdpSense::maximize, opts);
}

SdpReport graph_sdp_h(const Graph& g, const std::vector<double>& coeffs, const SdpOptions& opts) {
    const int n = g.num_vertices();
    if (n < 1) throw ValidationError("graph SDP needs at least one vertex");
    check_coeffs(g, coeffs);
    auto cons = edge_zero_constraints(g, 1);
    cons.push_back(AffineConstraint::fix_entry(0, 0, 1.0));
    for (int a = 0; a < n; ++a) cons.push_back(AffineConstraint::fix_entry(a + 1, a + 1, 1.0));
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int a = 0; a < n; ++a) c(0, a + 1) = c(a + 1, 0) = 0.5 * coeffs[a];
    SdpReport report = solve_sdp(n + 1, cons, c, SdpSense::minimize, opts);
    report.vector_part = report.matrix.col(0).tail(n);
    return report;
}

}  // namespace gramops

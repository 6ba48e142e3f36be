#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gramops/graph.hpp"

namespace gramops {

/// One certified lower bound on Psi(G): the squared operator norm of
/// sum_a K_a O_a for one coefficient vector over the explicit representation.
struct PsiReport {
    std::string graph_id;
    std::vector<double> coefficients;
    double norm_squared = 0;
    int alpha = 0;
    std::optional<double> theta;
    std::uint64_t seed = 0;
    double residual_norm = 0;         // eigensolver residual at the reported value
    double stationarity_residual = 0;  // ||<O_a> - lambda K_a / m_a||, lambda by least squares
};

struct PsiOptions {
    double tol = 1e-9;
    std::uint64_t seed = 1;
    bool compute_theta = false;
};

/// norm^2 of sum_a J_a O_a with unit-norm coefficients ("uniform" =
/// 1/sqrt(n) each). Always a lower bound on Psi(G).
PsiReport psi_lower_bound(const Graph& g, const std::vector<double>& coeffs,
                          const PsiOptions& opts = {});
PsiReport psi_lower_bound_uniform(const Graph& g, const PsiOptions& opts = {});

enum class PsiInit { uniform, independent_set, given };

/// Projected ascent on the operator norm under sum K_a^2 / m_a = 1: move the
/// coefficients toward the eigenstate expectations <O_a> m_a, re-project, and
/// halve the step on objective decrease. The returned value never drops below
/// the initialization.
PsiReport optimize_coefficients(const WeightedGraph& wg, PsiInit init,
                                const std::vector<double>& init_coeffs, int steps,
                                double step_size, const PsiOptions& opts = {});

/// norm^2 of sum_a K_a O_a under the constraint sum K_a^2 / m_a = 1.
PsiReport weighted_psi_lower_bound(const WeightedGraph& wg, const std::vector<double>& coeffs,
                                   const PsiOptions& opts = {});

struct SearchTrial {
    PsiReport report;
    bool above_threshold = false;
    bool separation = false;  // norm^2 > threshold and norm^2 >= alpha + 1e-6
};

/// Per trial: run the triangle-free process, take the complement, evaluate the
/// uniform-coefficient bound and the independence number, and flag candidates.
/// Trial t uses the derived seed derive_seed(seed, t), so the report list does
/// not depend on scheduling.
std::vector<SearchTrial> search_separation(int n, int trials, double threshold,
                                           std::uint64_t seed, const PsiOptions& opts = {});

}  // namespace gramops

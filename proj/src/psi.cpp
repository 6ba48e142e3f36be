#include "gramops/psi.hpp"

#include <algorithm>
#include <cmath>

#include "gramops/capacity.hpp"
#include "gramops/errors.hpp"
#include "gramops/independence.hpp"
#include "gramops/pauli.hpp"
#include "gramops/rng.hpp"
#include "gramops/sdp.hpp"
#include "gramops/spectral.hpp"

namespace gramops {

namespace {

double expectation(const PauliString& op, const Eigen::VectorXcd& psi) {
    Eigen::VectorXcd out;
    apply_pauli_sum({{cplx(1, 0), op}}, psi, out);
    const cplx v = psi.dot(out);
    return v.real();
}

struct NormEval {
    double norm = 0;
    double residual = 0;
    Eigen::VectorXcd vector;  // extremal eigenvector of the larger-|.| end
    bool from_largest = true;
};

NormEval evaluate_norm(const std::vector<double>& coeffs, const GraphRep& rep, double tol,
                       std::uint64_t seed) {
    auto [lo, hi] = extreme_pair(coeffs, rep, tol, seed);
    NormEval e;
    if (std::abs(hi.eigenvalue) >= std::abs(lo.eigenvalue)) {
        e.norm = std::abs(hi.eigenvalue);
        e.residual = hi.residual_norm;
        e.vector = std::move(hi.vector);
        e.from_largest = true;
    } else {
        e.norm = std::abs(lo.eigenvalue);
        e.residual = lo.residual_norm;
        e.vector = std::move(lo.vector);
        e.from_largest = false;
    }
    return e;
}

/// ||<O_a> - lambda K_a / m_a|| with lambda fit by least squares.
double stationarity_residual(const std::vector<double>& coeffs, const std::vector<double>& m,
                             const GraphRep& rep, const Eigen::VectorXcd& psi) {
    const std::size_t n = coeffs.size();
    std::vector<double> g(n);
    for (std::size_t a = 0; a < n; ++a) g[a] = expectation(rep.strings[a], psi);
    double num = 0, den = 0;
    for (std::size_t a = 0; a < n; ++a) {
        const double ka = coeffs[a] / m[a];
        num += g[a] * ka;
        den += ka * ka;
    }
    const double lambda = den > 0 ? num / den : 0;
    double r2 = 0;
    for (std::size_t a = 0; a < n; ++a) {
        const double r = g[a] - lambda * coeffs[a] / m[a];
        r2 += r * r;
    }
    return std::sqrt(r2);
}

std::string default_graph_id(const Graph& g) {
    return "g" + std::to_string(g.num_vertices()) + "v" + std::to_string(g.num_edges()) + "e";
}

void check_psi_capacity(const Graph& g) {
    if (g.num_vertices() > Capacity::matrix_free_qubits())
        throw CapacityError("psi bound limited to " +
                            std::to_string(Capacity::matrix_free_qubits()) +
                            " vertices (override with GRAMOPS_CAPACITY)");
    if (g.num_vertices() < 1) throw ValidationError("psi bound needs at least one vertex");
}

PsiReport build_report(const Graph& g, const std::vector<double>& coeffs,
                       const std::vector<double>& m, const PsiOptions& opts) {
    const GraphRep rep = graph_to_pauli_rep(g);
    const NormEval e = evaluate_norm(coeffs, rep, opts.tol, opts.seed);
    PsiReport r;
    r.graph_id = default_graph_id(g);
    r.coefficients = coeffs;
    r.norm_squared = e.norm * e.norm;
    r.alpha = static_cast<int>(independence_number(g).value.num());
    if (opts.compute_theta) r.theta = lovasz_theta(g).objective;
    r.seed = opts.seed;
    r.residual_norm = e.residual;
    r.stationarity_residual = stationarity_residual(coeffs, m, rep, e.vector);
    return r;
}

}  // namespace

PsiReport psi_lower_bound(const Graph& g, const std::vector<double>& coeffs,
                          const PsiOptions& opts) {
    check_psi_capacity(g);
    if (static_cast<int>(coeffs.size()) != g.num_vertices())
        throw ValidationError("coefficient count != vertex count");
    double norm2 = 0;
    for (double c : coeffs) norm2 += c * c;
    if (std::abs(norm2 - 1.0) > 1e-8)
        throw ValidationError("coefficients must have unit norm (got |K|^2 = " +
                              std::to_string(norm2) + ")");
    return build_report(g, coeffs, std::vector<double>(coeffs.size(), 1.0), opts);
}

PsiReport psi_lower_bound_uniform(const Graph& g, const PsiOptions& opts) {
    check_psi_capacity(g);
    const int n = g.num_vertices();
    return build_report(g, std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))),
                        std::vector<double>(n, 1.0), opts);
}

PsiReport weighted_psi_lower_bound(const WeightedGraph& wg, const std::vector<double>& coeffs,
                                   const PsiOptions& opts) {
    check_psi_capacity(wg.graph);
    if (coeffs.size() != wg.weights.size())
        throw ValidationError("coefficient count != vertex count");
    std::vector<double> m(wg.weights.size());
    for (std::size_t a = 0; a < m.size(); ++a) m[a] = wg.weights[a].to_double();
    double c2 = 0;
    for (std::size_t a = 0; a < m.size(); ++a) c2 += coeffs[a] * coeffs[a] / m[a];
    if (std::abs(c2 - 1.0) > 1e-8)
        throw ValidationError("weighted coefficient constraint violated: sum K^2/m = " +
                              std::to_string(c2));
    return build_report(wg.graph, coeffs, m, opts);
}

PsiReport optimize_coefficients(const WeightedGraph& wg, PsiInit init,
                                const std::vector<double>& init_coeffs, int steps,
                                double step_size, const PsiOptions& opts) {
    check_psi_capacity(wg.graph);
    if (steps < 0) throw ValidationError("step count must be >= 0");
    const int n = wg.graph.num_vertices();
    std::vector<double> m(wg.weights.size());
    for (std::size_t a = 0; a < m.size(); ++a) m[a] = wg.weights[a].to_double();

    const auto project = [&](std::vector<double> k) {
        double c2 = 0;
        for (int a = 0; a < n; ++a) c2 += k[a] * k[a] / m[a];
        if (c2 <= 0) throw ValidationError("cannot project a zero coefficient vector");
        const double s = 1.0 / std::sqrt(c2);
        for (double& v : k) v *= s;
        return k;
    };

    std::vector<double> k;
    switch (init) {
        case PsiInit::uniform:
            k = project(std::vector<double>(n, 1.0));
            break;
        case PsiInit::independent_set: {
            const IndependenceResult mis = weighted_independence(wg);
            const double w = mis.value.to_double();
            k.assign(n, 0.0);
            for (int v : mis.witness) k[v] = m[v] / std::sqrt(w);
            break;
        }
        case PsiInit::given:
            if (static_cast<int>(init_coeffs.size()) != n)
                throw ValidationError("init coefficient count != vertex count");
            k = project(init_coeffs);
            break;
    }

    const GraphRep rep = graph_to_pauli_rep(wg.graph);
    NormEval eval = evaluate_norm(k, rep, opts.tol, opts.seed);
    std::vector<double> best_k = k;
    NormEval best = eval;
    double step = step_size;

    for (int s = 0; s < steps; ++s) {
        // Ascent direction from the extremal eigenstate; the smallest-end
        // branch ascends |lambda_min|, i.e. descends lambda_min.
        std::vector<double> dir(n);
        const double sign = eval.from_largest ? 1.0 : -1.0;
        for (int a = 0; a < n; ++a)
            dir[a] = sign * expectation(rep.strings[a], eval.vector) * m[a];

        bool accepted = false;
        for (int halving = 0; halving < 20; ++halving) {
            std::vector<double> trial(n);
            for (int a = 0; a < n; ++a) trial[a] = k[a] + step * dir[a];
            double t2 = 0;
            for (int a = 0; a < n; ++a) t2 += trial[a] * trial[a] / m[a];
            if (t2 <= 0) break;
            trial = project(std::move(trial));
            const NormEval cand =
                evaluate_norm(trial, rep, opts.tol, derive_seed(opts.seed, s + 1));
            if (cand.norm >= eval.norm) {
                k = std::move(trial);
                eval = cand;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        if (eval.norm > best.norm) {
            best_k = k;
            best = eval;
        }
    }

    PsiReport r;
    r.graph_id = default_graph_id(wg.graph);
    r.coefficients = best_k;
    r.norm_squared = best.norm * best.norm;
    r.alpha = static_cast<int>(independence_number(wg.graph).value.num());
    if (opts.compute_theta) r.theta = lovasz_theta(wg.graph).objective;
    r.seed = opts.seed;
    r.residual_norm = best.residual;
    r.stationarity_residual = stationarity_residual(best_k, m, rep, best.vector);
    return r;
}

std::vector<SearchTrial> search_separation(int n, int trials, double threshold,
                                           std::uint64_t seed, const PsiOptions& opts) {
    if (trials < 1) throw ValidationError("trial count must be >= 1");
    std::vector<SearchTrial> out;
    out.reserve(trials);
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = derive_seed(seed, t);
        const Graph complement_graph = triangle_free_process(n, trial_seed);
        const Graph g = complement(complement_graph);
        PsiOptions trial_opts = opts;
        trial_opts.seed = trial_seed;
        SearchTrial trial;
        trial.report = psi_lower_bound_uniform(g, trial_opts);
        trial.report.graph_id = "tfp-n" + std::to_string(n) + "-t" + std::to_string(t);
        trial.above_threshold = trial.report.norm_squared > threshold;
        trial.separation = trial.above_threshold &&
                           trial.report.norm_squared >= trial.report.alpha + 1e-6;
        out.push_back(std::move(trial));
    }
    return out;
}

}  // namespace gramops

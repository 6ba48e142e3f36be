#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gramops/fermion.hpp"
#include "gramops/graph.hpp"
#include "gramops/independence.hpp"
#include "gramops/knapsack.hpp"
#include "gramops/psi.hpp"
#include "gramops/sdp.hpp"
#include "gramops/spectral.hpp"
#include "gramops/threading.hpp"

namespace py = pybind11;
using namespace gramops;

namespace {

Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    return Graph::from_edges(n, edges);
}

py::dict sdp_report_dict(const SdpReport& r) {
    py::dict d;
    d["objective"] = r.objective;
    d["matrix"] = r.matrix;
    d["iterations"] = r.iterations;
    d["primal_residual"] = r.primal_residual;
    d["dual_residual"] = r.dual_residual;
    d["status"] = r.status == SdpStatus::converged
                      ? "converged"
                      : (r.status == SdpStatus::max_iter ? "max_iter" : "infeasible_detected");
    if (r.vector_part) d["vector_part"] = *r.vector_part;
    return d;
}

py::dict psi_report_dict(const PsiReport& r) {
    py::dict d;
    d["graph_id"] = r.graph_id;
    d["coefficients"] = r.coefficients;
    d["norm_squared"] = r.norm_squared;
    d["alpha"] = r.alpha;
    if (r.theta) d["theta"] = *r.theta;
    d["seed"] = r.seed;
    d["residual_norm"] = r.residual_norm;
    d["stationarity_residual"] = r.stationarity_residual;
    return d;
}

}  // namespace

PYBIND11_MODULE(_gramops, m) {
    m.doc() = "graph invariants from operator commutation patterns";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);

    py::class_<Graph>(m, "Graph")
        .def(py::init<int>(), py::arg("num_vertices") = 0)
        .def_static("from_edges", &graph_from_edges, py::arg("num_vertices"), py::arg("edges"))
        .def_property_readonly("num_vertices", &Graph::num_vertices)
        .def_property_readonly("num_edges", &Graph::num_edges)
        .def("has_edge", &Graph::has_edge)
        .def("add_edge", &Graph::add_edge)
        .def("edge_list", &Graph::edge_list)
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) {
            return "Graph(" + std::to_string(g.num_vertices()) + " vertices, " +
                   std::to_string(g.num_edges()) + " edges)";
        });

    m.def("parse_graph_json",
          [](const std::string& text) { return parse_graph(text, GraphFormat::json); });
    m.def("parse_graph_dimacs",
          [](const std::string& text) { return parse_graph(text, GraphFormat::dimacs); });
    m.def("graph_to_json", &graph_to_json);
    m.def("complement", &complement);
    m.def("is_triangle_free", &is_triangle_free);
    m.def("triangle_free_process", &triangle_free_process, py::arg("n"), py::arg("seed"));
    m.def("paper_example_graph", &paper_example_graph);
    m.def(
        "blow_up",
        [](const Graph& g, const std::vector<std::int64_t>& weights) {
            std::vector<Rational> w(weights.begin(), weights.end());
            return blow_up(WeightedGraph(g, std::move(w)));
        },
        py::arg("graph"), py::arg("weights"));

    m.def("independence_number", [](const Graph& g) {
        const auto r = independence_number(g);
        return py::make_tuple(r.value.to_double(), r.witness);
    });
    m.def(
        "weighted_independence",
        [](const Graph& g, const std::vector<double>& weights) {
            std::vector<Rational> w;
            for (double x : weights) {
                const auto scaled = static_cast<std::int64_t>(std::llround(x * 720720));
                w.emplace_back(scaled, 720720);
            }
            const auto r = weighted_independence(WeightedGraph(g, std::move(w)));
            return py::make_tuple(r.value.to_double(), r.witness);
        },
        py::arg("graph"), py::arg("weights"));

    m.def(
        "lovasz_theta",
        [](const Graph& g, double tol, int max_iter) {
            SdpOptions opts;
            opts.tol = tol;
            opts.max_iter = max_iter;
            return sdp_report_dict(lovasz_theta(g, opts));
        },
        py::arg("graph"), py::arg("tol") = 1e-8, py::arg("max_iter") = 200000);
    m.def(
        "graph_sdp_h",
        [](const Graph& g, const std::vector<double>& coeffs, double tol, int max_iter) {
            SdpOptions opts;
            opts.tol = tol;
            opts.max_iter = max_iter;
            return sdp_report_dict(graph_sdp_h(g, coeffs, opts));
        },
        py::arg("graph"), py::arg("coeffs"), py::arg("tol") = 1e-8,
        py::arg("max_iter") = 200000);
    m.def(
        "graph_sdp_h2",
        [](const Graph& g, const std::vector<double>& coeffs, double tol, int max_iter) {
            SdpOptions opts;
            opts.tol = tol;
            opts.max_iter = max_iter;
            return sdp_report_dict(graph_sdp_h2(g, coeffs, opts));
        },
        py::arg("graph"), py::arg("coeffs"), py::arg("tol") = 1e-8,
        py::arg("max_iter") = 200000);

    m.def(
        "psi_lower_bound",
        [](const Graph& g, const std::vector<double>& coeffs, bool theta, std::uint64_t seed) {
            PsiOptions opts;
            opts.compute_theta = theta;
            opts.seed = seed;
            return psi_report_dict(coeffs.empty() ? psi_lower_bound_uniform(g, opts)
                                                  : psi_lower_bound(g, coeffs, opts));
        },
        py::arg("graph"), py::arg("coeffs") = std::vector<double>{}, py::arg("theta") = false,
        py::arg("seed") = 1);
    m.def(
        "optimize_coefficients",
        [](const Graph& g, int steps, double step_size, std::uint64_t seed) {
            PsiOptions opts;
            opts.seed = seed;
            WeightedGraph wg(g, std::vector<Rational>(g.num_vertices(), Rational(1)));
            return psi_report_dict(
                optimize_coefficients(wg, PsiInit::uniform, {}, steps, step_size, opts));
        },
        py::arg("graph"), py::arg("steps") = 50, py::arg("step_size") = 0.5, py::arg("seed") = 1);
    m.def(
        "search_separation",
        [](int n, int trials, double threshold, std::uint64_t seed) {
            py::list out;
            for (const auto& t : search_separation(n, trials, threshold, seed)) {
                py::dict d = psi_report_dict(t.report);
                d["above_threshold"] = t.above_threshold;
                d["separation"] = t.separation;
                out.append(d);
            }
            return out;
        },
        py::arg("n"), py::arg("trials"), py::arg("threshold"), py::arg("seed"));

    m.def("operator_norm", [](const Graph& g, const std::vector<double>& coeffs) {
        return operator_norm(coeffs, graph_to_pauli_rep(g));
    });

    m.def("monomial_commutation_graph", &monomial_commutation_graph, py::arg("n"), py::arg("q"));
    m.def("hadamard_matrix", &hadamard_matrix);
    m.def(
        "syk_random",
        [](int n, int q, std::uint64_t seed, const std::string& normalization) {
            const SykInstance inst = syk_random(n, q, seed,
                                                normalization == "sphere"
                                                    ? SykNormalization::sphere
                                                    : SykNormalization::expectation);
            return py::make_tuple(inst.tuples, inst.values);
        },
        py::arg("n"), py::arg("q"), py::arg("seed"), py::arg("normalization") = "sphere");
    m.def("free_ground_energy", [](int n) { return free_ground_energy(build_q_matrix(n)); });
    m.def("j0_wick_expectation", [](int n) {
        const FreeFermionModel model = build_q_matrix(n);
        return syk_expectation_wick(j0_coefficients(model), model);
    });
    m.def(
        "syk_exact_extremes",
        [](int n, int q, std::uint64_t seed) {
            const SykExtremes e = syk_exact_extremes(syk_random(n, q, seed,
                                                                SykNormalization::sphere));
            return py::make_tuple(e.ground, e.top);
        },
        py::arg("n"), py::arg("q"), py::arg("seed"));

    m.def(
        "knapsack_bound",
        [](const cplx& c, const std::vector<std::pair<cplx, double>>& pairs) {
            KnapsackNormalForm nf;
            nf.scalar = c;
            for (const auto& [ci, di] : pairs) nf.pairs.push_back({ci, di});
            return recursive_lower_bound(nf).lower_bound;
        },
        py::arg("c"), py::arg("pairs"));
    m.def(
        "knapsack_exact",
        [](const cplx& c, const std::vector<std::pair<cplx, double>>& pairs) {
            KnapsackNormalForm nf;
            nf.scalar = c;
            for (const auto& [ci, di] : pairs) nf.pairs.push_back({ci, di});
            return exact_min_singular(nf);
        },
        py::arg("c"), py::arg("pairs"));
    m.def(
        "subset_sum_min",
        [](const cplx& c, const std::vector<cplx>& coeffs) {
            const SubsetSumResult r = subset_sum_min(c, coeffs);
            return py::make_tuple(r.value, r.signs);
        },
        py::arg("c"), py::arg("coeffs"));

    m.def("set_num_threads", &set_num_threads);
}

#include "gramops/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gramops/errors.hpp"
#include "gramops/fermion.hpp"
#include "gramops/graph.hpp"
#include "gramops/independence.hpp"
#include "gramops/knapsack.hpp"
#include "gramops/psi.hpp"
#include "gramops/sdp.hpp"
#include "gramops/spectral.hpp"
#include "gramops/threading.hpp"

namespace gramops {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
constexpr std::uint64_t kDefaultSeed = 1729;  // fixed so runs reproduce by default

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitNoConvergence = 4;

struct Output {
    std::string path;        // empty = stdout
    std::string format = "json";
    bool timestamp = false;

    void emit(json report) const {
        if (timestamp) {
            report["timestamp"] = static_cast<std::int64_t>(
                std::chrono::duration_cast<std::chrono::seconds>(
                    std::chrono::system_clock::now().time_since_epoch())
                    .count());
        }
        std::ostringstream text;
        if (format == "table") {
            render_table(report, "", text);
        } else {
            text << report.dump(2) << "\n";
        }
        if (path.empty()) {
            std::cout << text.str();
        } else {
            std::ofstream out(path, std::ios::binary);
            if (!out) throw ValidationError("cannot open output file '" + path + "'");
            out << text.str();
        }
    }

    static void render_table(const json& j, const std::string& prefix, std::ostringstream& out) {
        if (j.is_object()) {
            for (const auto& [key, value] : j.items()) {
                const std::string name = prefix.empty() ? key : prefix + "." + key;
                if (value.is_object() || value.is_array())
                    render_table(value, name, out);
                else
                    out << name << ": " << value.dump() << "\n";
            }
        } else if (j.is_array()) {
            std::size_t i = 0;
            for (const auto& value : j) {
                render_table(value, prefix + "[" + std::to_string(i) + "]", out);
                ++i;
            }
        } else {
            out << prefix << ": " << j.dump() << "\n";
        }
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Graph load_graph(const std::string& path, bool dimacs) {
    return parse_graph(read_file(path), dimacs ? GraphFormat::dimacs : GraphFormat::json);
}

std::vector<double> load_coeffs(const std::string& spec, int n) {
    if (spec == "uniform")
        return std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n)));
    json j;
    try {
        j = json::parse(read_file(spec));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("coefficient file: ") + e.what());
    }
    if (!j.is_array()) throw ParseError("coefficient file must hold a JSON array of numbers");
    std::vector<double> coeffs;
    for (const auto& v : j) {
        if (!v.is_number()) throw ParseError("coefficient file must hold numbers");
        coeffs.push_back(v.get<double>());
    }
    if (static_cast<int>(coeffs.size()) != n)
        throw ValidationError("coefficient count " + std::to_string(coeffs.size()) +
                              " != vertex count " + std::to_string(n));
    return coeffs;
}

json report_header(const std::string& command) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

const char* status_name(SdpStatus s) {
    switch (s) {
        case SdpStatus::converged: return "converged";
        case SdpStatus::max_iter: return "max_iter";
        case SdpStatus::infeasible_detected: return "infeasible_detected";
    }
    return "unknown";
}

json sdp_report_json(const std::string& command, const SdpReport& r) {
    json j = report_header(command);
    j["objective"] = r.objective;
    j["status"] = status_name(r.status);
    j["iterations"] = r.iterations;
    j["primal_residual"] = r.primal_residual;
    j["dual_residual"] = r.dual_residual;
    if (r.vector_part) {
        j["vector_part"] = std::vector<double>(r.vector_part->data(),
                                               r.vector_part->data() + r.vector_part->size());
    }
    return j;
}

json psi_report_json(const PsiReport& r) {
    json j;
    j["graph_id"] = r.graph_id;
    j["coefficients"] = r.coefficients;
    j["norm_squared"] = r.norm_squared;
    j["alpha"] = r.alpha;
    if (r.theta) j["theta"] = *r.theta;
    j["seed"] = r.seed;
    j["residual_norm"] = r.residual_norm;
    j["stationarity_residual"] = r.stationarity_residual;
    return j;
}

int sdp_exit(const SdpReport& r) {
    return r.status == SdpStatus::converged ? kExitOk : kExitNoConvergence;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"graph invariants from operator commutation patterns"};
    app.require_subcommand(1);

    Output output;
    std::uint64_t seed = kDefaultSeed;
    double tol = 1e-8;
    int threads = 0;
    app.add_option("--out", output.path, "write the report to this file instead of stdout");
    app.add_option("--format", output.format, "report format")
        ->check(CLI::IsMember({"json", "table"}));
    app.add_flag("--timestamp", output.timestamp, "include a timestamp in the report");
    app.add_option("--seed", seed, "seed for randomized commands");
    app.add_option("--tol", tol, "solver tolerance");
    app.add_option("--threads", threads, "worker threads (0 = all cores)");

    // graph info
    std::string graph_path;
    bool dimacs = false;
    auto* info = app.add_subcommand("graph", "graph utilities");
    auto* info_cmd = info->add_subcommand("info", "parse a graph and report invariants");
    info_cmd->add_option("file", graph_path, "graph file")->required();
    info_cmd->add_flag("--dimacs", dimacs, "input is DIMACS instead of JSON");

    // theta / sdp-h / sdp-h2
    std::string theta_path, sdp_path, coeffs_spec = "uniform";
    int max_iter = 200000;
    auto* theta_cmd = app.add_subcommand("theta", "Lovasz theta of a graph");
    theta_cmd->add_option("file", theta_path, "graph file")->required();
    theta_cmd->add_flag("--dimacs", dimacs, "input is DIMACS instead of JSON");
    theta_cmd->add_option("--max-iter", max_iter, "iteration cap");

    auto* sdph_cmd = app.add_subcommand("sdp-h", "graph program for H");
    sdph_cmd->add_option("file", sdp_path, "graph file")->required();
    sdph_cmd->add_option("--coeffs", coeffs_spec, "'uniform' or a JSON array file");
    sdph_cmd->add_flag("--dimacs", dimacs, "input is DIMACS instead of JSON");
    sdph_cmd->add_option("--max-iter", max_iter, "iteration cap");

    auto* sdph2_cmd = app.add_subcommand("sdp-h2", "graph program for H^2");
    sdph2_cmd->add_option("file", sdp_path, "graph file")->required();
    sdph2_cmd->add_option("--coeffs", coeffs_spec, "'uniform' or a JSON array file");
    sdph2_cmd->add_flag("--dimacs", dimacs, "input is DIMACS instead of JSON");
    sdph2_cmd->add_option("--max-iter", max_iter, "iteration cap");

    // psi
    std::string psi_path;
    int optimize_steps = 0;
    double step_size = 0.5;
    bool with_theta = false;
    auto* psi_cmd = app.add_subcommand("psi", "operator-norm lower bound on Psi");
    psi_cmd->add_option("file", psi_path, "graph file (weighted JSON allowed)")->required();
    psi_cmd->add_option("--coeffs", coeffs_spec, "'uniform' or a JSON array file");
    psi_cmd->add_option("--optimize", optimize_steps, "projected-ascent steps");
    psi_cmd->add_option("--step-size", step_size, "initial ascent step");
    psi_cmd->add_flag("--theta", with_theta, "also compute Lovasz theta");
    psi_cmd->add_flag("--dimacs", dimacs, "input is DIMACS instead of JSON");

    // search triangle-free
    int search_n = 0, search_trials = 1;
    double threshold = 2.0;
    auto* search = app.add_subcommand("search", "separation searches");
    auto* tfp_cmd = search->add_subcommand("triangle-free",
                                           "triangle-free process + complement psi bound");
    tfp_cmd->add_option("--n", search_n, "graph size")->required();
    tfp_cmd->add_option("--trials", search_trials, "number of trials");
    tfp_cmd->add_option("--threshold", threshold, "flag trials with norm^2 above this");
    tfp_cmd->add_flag("--theta", with_theta, "also compute Lovasz theta per trial");

    // blowup
    std::string blowup_path;
    auto* blowup_cmd = app.add_subcommand("blowup", "vertex blow-up of a weighted graph");
    blowup_cmd->add_option("file", blowup_path, "weighted graph JSON")->required();

    // syk
    auto* syk = app.add_subcommand("syk", "Majorana polynomial models");
    int syk_n = 8, syk_q = 4;
    std::string norm_mode = "sphere", instance_path;
    bool random_sign = false;
    auto* syk_gen = syk->add_subcommand("gen", "random instance");
    syk_gen->add_option("--n", syk_n, "Majorana modes")->required();
    syk_gen->add_option("--q", syk_q, "degree")->required();
    syk_gen->add_option("--norm", norm_mode, "normalization")
        ->check(CLI::IsMember({"sphere", "expectation"}));
    auto* syk_graph = syk->add_subcommand("graph", "monomial commutation graph");
    syk_graph->add_option("--n", syk_n, "Majorana modes")->required();
    syk_graph->add_option("--q", syk_q, "degree")->required();
    auto* syk_j0 = syk->add_subcommand("j0", "structured quartic couplings");
    syk_j0->add_option("--n", syk_n, "Majorana modes")->required();
    syk_j0->add_flag("--random-sign", random_sign, "random-sign Q block instead of Hadamard");
    auto* syk_free = syk->add_subcommand("free-energy", "quadratic-model ground energy");
    syk_free->add_option("--n", syk_n, "Majorana modes")->required();
    syk_free->add_flag("--random-sign", random_sign, "random-sign Q block instead of Hadamard");
    auto* syk_wick = syk->add_subcommand("wick", "Wick-state expectation values");
    syk_wick->add_option("--n", syk_n, "Majorana modes")->required();
    syk_wick->add_option("--instance", instance_path, "instance JSON (default: j0)");
    syk_wick->add_flag("--random-sign", random_sign, "random-sign Q block instead of Hadamard");
    auto* syk_exact = syk->add_subcommand("exact", "extremal eigenvalues of a random instance");
    syk_exact->add_option("--n", syk_n, "Majorana modes")->required();
    syk_exact->add_option("--q", syk_q, "degree")->required();

    // knapsack
    std::string knapsack_path;
    bool leaves = false, all_orders = false;
    auto* knap = app.add_subcommand("knapsack", "least-singular-value bounds");
    auto* knap_bound = knap->add_subcommand("bound", "recursive lower bound");
    knap_bound->add_option("file", knapsack_path, "operator JSON")->required();
    knap_bound->add_flag("--leaves", leaves, "report per-sign-pattern leaf values (n <= 16)");
    knap_bound->add_flag("--all-orders", all_orders, "best bound over all qubit orders (n <= 6)");
    auto* knap_exact = knap->add_subcommand("exact", "dense oracle");
    knap_exact->add_option("file", knapsack_path, "operator JSON")->required();
    auto* knap_subset = knap->add_subcommand("subset-sum", "commuting special case");
    knap_subset->add_option("file", knapsack_path, "subset-sum JSON")->required();

    // verify paper-example
    auto* verify = app.add_subcommand("verify", "one-shot verification runs");
    auto* verify_example = verify->add_subcommand(
        "paper-example", "embedded 12-vertex separation example");
    (void)verify_example;

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return kExitOk;
        }
        std::cerr << e.what() << "\n" << app.help();
        return kExitInput;
    }

    set_num_threads(threads);

    try {
        if (*info_cmd) {
            const std::string text = read_file(graph_path);
            json j = report_header("graph info");
            if (!dimacs && text.find("weights") != std::string::npos) {
                const WeightedGraph wg = parse_weighted_graph(text);
                const auto mis = weighted_independence(wg);
                j["n"] = wg.graph.num_vertices();
                j["edges"] = wg.graph.num_edges();
                j["triangle_free"] = is_triangle_free(wg.graph);
                j["alpha"] = independence_number(wg.graph).value.num();
                j["weighted_independence"] = mis.value.str();
                j["witness"] = mis.witness;
            } else {
                const Graph g = dimacs ? parse_graph(text, GraphFormat::dimacs)
                                       : parse_graph(text, GraphFormat::json);
                const auto mis = independence_number(g);
                j["n"] = g.num_vertices();
                j["edges"] = g.num_edges();
                j["triangle_free"] = is_triangle_free(g);
                j["alpha"] = mis.value.num();
                j["witness"] = mis.witness;
            }
            output.emit(j);
            return kExitOk;
        }

        if (*theta_cmd) {
            SdpOptions opts;
            opts.tol = tol;
            opts.max_iter = max_iter;
            const SdpReport r = lovasz_theta(load_graph(theta_path, dimacs), opts);
            output.emit(sdp_report_json("theta", r));
            return sdp_exit(r);
        }

        if (*sdph_cmd || *sdph2_cmd) {
            const Graph g = load_graph(sdp_path, dimacs);
            const std::vector<double> coeffs = load_coeffs(coeffs_spec, g.num_vertices());
            SdpOptions opts;
            opts.tol = tol;
            opts.max_iter = max_iter;
            const bool h2 = static_cast<bool>(*sdph2_cmd);
            const SdpReport r = h2 ? graph_sdp_h2(g, coeffs, opts) : graph_sdp_h(g, coeffs, opts);
            output.emit(sdp_report_json(h2 ? "sdp-h2" : "sdp-h", r));
            return sdp_exit(r);
        }

        if (*psi_cmd) {
            const std::string text = read_file(psi_path);
            PsiOptions opts;
            opts.seed = seed;
            opts.compute_theta = with_theta;
            PsiReport r;
            if (!dimacs && text.find("weights") != std::string::npos) {
                const WeightedGraph wg = parse_weighted_graph(text);
                if (optimize_steps > 0) {
                    r = optimize_coefficients(wg, PsiInit::uniform, {}, optimize_steps,
                                              step_size, opts);
                } else if (coeffs_spec == "uniform") {
                    r = optimize_coefficients(wg, PsiInit::uniform, {}, 0, step_size, opts);
                } else {
                    r = weighted_psi_lower_bound(
                        wg, load_coeffs(coeffs_spec, wg.graph.num_vertices()), opts);
                }
            } else {
                const Graph g = dimacs ? parse_graph(text, GraphFormat::dimacs)
                                       : parse_graph(text, GraphFormat::json);
                if (optimize_steps > 0) {
                    WeightedGraph wg(g, std::vector<Rational>(g.num_vertices(), Rational(1)));
                    const PsiInit init =
                        coeffs_spec == "uniform" ? PsiInit::uniform : PsiInit::given;
                    const std::vector<double> init_coeffs =
                        init == PsiInit::given ? load_coeffs(coeffs_spec, g.num_vertices())
                                               : std::vector<double>{};
                    r = optimize_coefficients(wg, init, init_coeffs, optimize_steps, step_size,
                                              opts);
                } else if (coeffs_spec == "uniform") {
                    r = psi_lower_bound_uniform(g, opts);
                } else {
                    r = psi_lower_bound(g, load_coeffs(coeffs_spec, g.num_vertices()), opts);
                }
            }
            json j = report_header("psi");
            const json body = psi_report_json(r);
            for (const auto& [k, v] : body.items()) j[k] = v;
            output.emit(j);
            return kExitOk;
        }

        if (*tfp_cmd) {
            PsiOptions opts;
            opts.compute_theta = with_theta;
            const auto trials = search_separation(search_n, search_trials, threshold, seed, opts);
            json j = report_header("search triangle-free");
            j["n"] = search_n;
            j["trials"] = search_trials;
            j["threshold"] = threshold;
            j["seed"] = seed;
            j["reports"] = json::array();
            for (const auto& t : trials) {
                json tj = psi_report_json(t.report);
                tj["above_threshold"] = t.above_threshold;
                tj["separation"] = t.separation;
                j["reports"].push_back(std::move(tj));
            }
            output.emit(j);
            return kExitOk;
        }

        if (*blowup_cmd) {
            const WeightedGraph wg = parse_weighted_graph(read_file(blowup_path));
            const Graph blown = blow_up(scale_to_integer(wg));
            json j = json::parse(graph_to_json(blown));
            json out = report_header("blowup");
            out["n"] = j["n"];
            out["edges"] = j["edges"];
            output.emit(out);
            return kExitOk;
        }

        if (*syk_gen) {
            const SykInstance inst =
                syk_random(syk_n, syk_q, seed,
                           norm_mode == "sphere" ? SykNormalization::sphere
                                                 : SykNormalization::expectation);
            output.emit(json::parse(syk_to_json(inst)));
            return kExitOk;
        }

        if (*syk_graph) {
            const Graph g = monomial_commutation_graph(syk_n, syk_q);
            json j = report_header("syk graph");
            json gj = json::parse(graph_to_json(g));
            j["n"] = gj["n"];
            j["edges"] = gj["edges"];
            output.emit(j);
            return kExitOk;
        }

        if (*syk_j0) {
            const FreeFermionModel model =
                random_sign ? build_q_matrix_random_sign(syk_n, seed) : build_q_matrix(syk_n);
            output.emit(json::parse(syk_to_json(j0_coefficients(model))));
            return kExitOk;
        }

        if (*syk_free) {
            const FreeFermionModel model =
                random_sign ? build_q_matrix_random_sign(syk_n, seed) : build_q_matrix(syk_n);
            json j = report_header("syk free-energy");
            j["n"] = syk_n;
            j["ground_energy"] = free_ground_energy(model);
            j["energy_per_mode"] = free_ground_energy(model) / syk_n;
            output.emit(j);
            return kExitOk;
        }

        if (*syk_wick) {
            const FreeFermionModel model =
                random_sign ? build_q_matrix_random_sign(syk_n, seed) : build_q_matrix(syk_n);
            const SykInstance inst = instance_path.empty()
                                         ? j0_coefficients(model)
                                         : syk_from_json(read_file(instance_path));
            json j = report_header("syk wick");
            j["n"] = syk_n;
            j["instance"] = instance_path.empty() ? "j0" : instance_path;
            j["wick_expectation"] = syk_expectation_wick(inst, model);
            j["commutation_only_bound"] = commutation_only_energy(inst, model);
            output.emit(j);
            return kExitOk;
        }

        if (*syk_exact) {
            const SykInstance inst = syk_random(syk_n, syk_q, seed, SykNormalization::sphere);
            const SykExtremes ext = syk_exact_extremes(inst, seed);
            json j = report_header("syk exact");
            j["n"] = syk_n;
            j["q"] = syk_q;
            j["seed"] = seed;
            j["ground"] = ext.ground;
            j["top"] = ext.top;
            output.emit(j);
            return kExitOk;
        }

        if (*knap_bound) {
            const KnapsackNormalForm nf = knapsack_from_json(read_file(knapsack_path));
            BoundOptions opts;
            opts.collect_leaves = leaves;
            opts.try_all_orders = all_orders;
            const BoundReport r = recursive_lower_bound(nf, opts);
            json j = report_header("knapsack bound");
            j["lower_bound"] = r.lower_bound;
            j["evaluations"] = r.evaluations;
            if (r.leaf_values) j["leaf_values"] = *r.leaf_values;
            output.emit(j);
            return kExitOk;
        }

        if (*knap_exact) {
            const KnapsackNormalForm nf = knapsack_from_json(read_file(knapsack_path));
            json j = report_header("knapsack exact");
            j["sigma_min"] = exact_min_singular(nf);
            j["hamiltonian_ground"] = hamiltonian_ground(nf);
            output.emit(j);
            return kExitOk;
        }

        if (*knap_subset) {
            json in;
            try {
                in = json::parse(read_file(knapsack_path));
            } catch (const nlohmann::json::parse_error& e) {
                throw ParseError(std::string("subset-sum JSON: ") + e.what());
            }
            if (!in.contains("c") || !in.contains("coeffs"))
                throw ParseError("subset-sum JSON needs fields 'c' and 'coeffs'");
            auto read_cplx = [](const json& v) -> cplx {
                if (v.is_number()) return {v.get<double>(), 0};
                if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
                throw ParseError("complex values must be numbers or [re, im]");
            };
            const cplx c = read_cplx(in["c"]);
            std::vector<cplx> coeffs;
            for (const auto& v : in["coeffs"]) coeffs.push_back(read_cplx(v));
            const SubsetSumResult r = subset_sum_min(c, coeffs);
            json j = report_header("knapsack subset-sum");
            j["value"] = r.value;
            j["signs"] = r.signs;
            output.emit(j);
            return kExitOk;
        }

        if (*verify_example) {
            const Graph g = paper_example_graph();
            const Graph gbar = complement(g);
            json checks = json::array();
            bool all_ok = true;
            const auto add_check = [&](const std::string& name, bool ok, json detail) {
                detail["name"] = name;
                detail["passed"] = ok;
                json ordered;
                ordered["name"] = detail["name"];
                ordered["passed"] = detail["passed"];
                for (auto& [k, v] : detail.items())
                    if (k != "name" && k != "passed") ordered[k] = v;
                checks.push_back(std::move(ordered));
                all_ok = all_ok && ok;
            };

            const bool tri = is_triangle_free(gbar) && gbar.num_edges() == 26;
            add_check("complement_triangle_free", tri,
                      {{"complement_edges", gbar.num_edges()},
                       {"triangle_free", is_triangle_free(gbar)}});

            const auto mis = independence_number(g);
            add_check("alpha_equals_2", mis.value == Rational(2),
                      {{"alpha", mis.value.num()}});

            PsiOptions popts;
            popts.seed = seed;
            const PsiReport psi = psi_lower_bound_uniform(g, popts);
            add_check("uniform_norm_squared", psi.norm_squared >= 2.005,
                      {{"norm_squared", psi.norm_squared},
                       {"threshold", 2.005},
                       {"residual_norm", psi.residual_norm}});

            const SdpReport theta = lovasz_theta(g);
            add_check("theta_dominates_norm_squared",
                      theta.status == SdpStatus::converged &&
                          theta.objective >= psi.norm_squared - 1e-4,
                      {{"theta", theta.objective}, {"norm_squared", psi.norm_squared}});

            json j = report_header("verify paper-example");
            j["passed"] = all_ok;
            j["checks"] = checks;
            output.emit(j);
            return all_ok ? kExitOk : 1;
        }
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const ConvergenceError& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }

    std::cerr << app.help();
    return kExitInput;
}

}  // namespace gramops

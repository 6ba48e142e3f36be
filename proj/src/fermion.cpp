#include "gramops/fermion.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "gramops/capacity.hpp"
#include "gramops/errors.hpp"
#include "gramops/rng.hpp"
#include "gramops/spectral.hpp"

namespace gramops {

namespace {

constexpr int kMaxMonomialVertices = 20000;

void check_nq(int n, int q) {
    if (n < 2 || n % 2 != 0) throw ValidationError("Majorana count n must be even and >= 2");
    if (q < 1 || q > n) throw ValidationError("degree q must satisfy 1 <= q <= n");
}

std::int64_t binomial(int n, int k) {
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void check_model(const FreeFermionModel& model) {
    const auto& q = model.q_matrix;
    if (q.rows() != model.n || q.cols() != model.n)
        throw ValidationError("Q matrix dimension mismatch");
    for (int i = 0; i < model.n; ++i)
        for (int j = 0; j < model.n; ++j) {
            if (std::abs(q(i, j).real()) > 1e-12)
                throw ValidationError("Q matrix must be purely imaginary");
            if (std::abs((q(i, j) + q(j, i)).imag()) > 1e-12)
                throw ValidationError("Q matrix must be antisymmetric");
        }
}

}  // namespace

double SykInstance::l2_norm() const {
    double s = 0;
    for (double v : values) s += v * v;
    return std::sqrt(s);
}

std::vector<std::vector<int>> increasing_tuples(int n, int q) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(q);
    std::iota(cur.begin(), cur.end(), 1);
    for (;;) {
        out.push_back(cur);
        int k = q - 1;
        while (k >= 0 && cur[k] == n - (q - 1 - k)) --k;
        if (k < 0) break;
        ++cur[k];
        for (int j = k + 1; j < q; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

SykInstance syk_random(int n, int q, std::uint64_t seed, SykNormalization normalization) {
    check_nq(n, q);
    SykInstance inst;
    inst.n = n;
    inst.q = q;
    inst.tuples = increasing_tuples(n, q);
    inst.values.reserve(inst.tuples.size());
    Rng rng(seed);
    const double sigma = 1.0 / std::sqrt(static_cast<double>(binomial(n, q)));
    for (std::size_t i = 0; i < inst.tuples.size(); ++i)
        inst.values.push_back(sigma * rng.next_gaussian());
    if (normalization == SykNormalization::sphere) {
        const double norm = inst.l2_norm();
        if (norm == 0) throw ValidationError("degenerate zero sample");
        for (double& v : inst.values) v /= norm;
    }
    return inst;
}

Graph monomial_commutation_graph(int n, int q) {
    check_nq(n, q);
    const std::int64_t count = binomial(n, q);
    if (count > kMaxMonomialVertices)
        throw CapacityError("C(" + std::to_string(n) + "," + std::to_string(q) + ") = " +
                            std::to_string(count) + " exceeds the monomial graph limit " +
                            std::to_string(kMaxMonomialVertices));
    const auto tuples = increasing_tuples(n, q);
    // Membership bitmasks make the intersection size a popcount.
    std::vector<std::uint64_t> masks(tuples.size(), 0);
    for (std::size_t a = 0; a < tuples.size(); ++a)
        for (int idx : tuples[a]) masks[a] |= 1ULL << (idx - 1);
    Graph g(static_cast<int>(tuples.size()));
    for (std::size_t a = 0; a < tuples.size(); ++a)
        for (std::size_t b = a + 1; b < tuples.size(); ++b) {
            const int shared = std::popcount(masks[a] & masks[b]);
            if ((q * q - shared) & 1) g.add_edge(static_cast<int>(a), static_cast<int>(b));
        }
    return g;
}

Eigen::MatrixXd hadamard_matrix(int m) {
    if (m < 1 || (m & (m - 1)) != 0)
        throw ValidationError("Hadamard order must be a power of two, got " + std::to_string(m));
    Eigen::MatrixXd h(1, 1);
    h(0, 0) = 1;
    for (int size = 1; size < m; size *= 2) {
        Eigen::MatrixXd next(2 * size, 2 * size);
        next.topLeftCorner(size, size) = h;
        next.topRightCorner(size, size) = h;
        next.bottomLeftCorner(size, size) = h;
        next.bottomRightCorner(size, size) = -h;
        h = std::move(next);
    }
    return h;
}

namespace {

FreeFermionModel block_model(int n, const Eigen::MatrixXd& block) {
    const int half = n / 2;
    FreeFermionModel model;
    model.n = n;
    model.q_matrix = Eigen::MatrixXcd::Zero(n, n);
    const cplx scale(0, 1.0 / std::sqrt(static_cast<double>(half)));
    model.q_matrix.topRightCorner(half, half) = scale * block;
    model.q_matrix.bottomLeftCorner(half, half) = -scale * block.transpose();
    return model;
}

}  // namespace

FreeFermionModel build_q_matrix(int n) {
    if (n < 2 || n % 2 != 0) throw ValidationError("n must be even and >= 2");
    return block_model(n, hadamard_matrix(n / 2));
}

FreeFermionModel build_q_matrix_random_sign(int n, std::uint64_t seed) {
    if (n < 2 || n % 2 != 0) throw ValidationError("n must be even and >= 2");
    const int half = n / 2;
    Rng rng(seed);
    Eigen::MatrixXd block(half, half);
    for (int i = 0; i < half; ++i)
        for (int j = 0; j < half; ++j) block(i, j) = rng.next_u64() & 1 ? 1.0 : -1.0;
    return block_model(n, block);
}

double free_ground_energy(const FreeFermionModel& model) {
    check_model(model);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(model.q_matrix,
                                                        Eigen::EigenvaluesOnly);
    return -0.5 * eig.eigenvalues().cwiseAbs().sum();
}

PauliString majorana_operator(int n, int index) {
    if (n < 2 || n % 2 != 0) throw ValidationError("n must be even and >= 2");
    if (index < 1 || index > n)
        throw ValidationError("Majorana index " + std::to_string(index) + " out of [1.." +
                              std::to_string(n) + "]");
    const int qubits = n / 2;
    const int k = (index + 1) / 2;  // 1-based qubit position
    PauliString s = index % 2 == 1 ? PauliString::x_on(qubits, k - 1)
                                   : PauliString::y_on(qubits, k - 1);
    s.z_mask |= (1ULL << (k - 1)) - 1;  // Jordan-Wigner string
    return s;
}

PauliString majorana_monomial(int n, const std::vector<int>& tuple) {
    const int q = static_cast<int>(tuple.size());
    if (q < 1) throw ValidationError("empty monomial");
    for (int i = 0; i < q; ++i) {
        if (tuple[i] < 1 || tuple[i] > n)
            throw ValidationError("monomial index out of range");
        if (i > 0 && tuple[i] <= tuple[i - 1])
            throw ValidationError("monomial indices must be strictly increasing");
    }
    PauliString p = majorana_operator(n, tuple[0]);
    for (int i = 1; i < q; ++i) p = p * majorana_operator(n, tuple[i]);
    p.phase_power = (p.phase_power + (q % 2 == 0 ? q / 2 : (q - 1) / 2)) & 3;
    return p;
}

std::vector<PauliTerm> syk_hamiltonian_terms(const SykInstance& inst) {
    std::vector<PauliTerm> terms;
    terms.reserve(inst.tuples.size());
    for (std::size_t a = 0; a < inst.tuples.size(); ++a)
        terms.push_back({cplx(inst.values[a], 0), majorana_monomial(inst.n, inst.tuples[a])});
    return terms;
}

std::vector<PauliTerm> free_hamiltonian_terms(const FreeFermionModel& model) {
    check_model(model);
    std::vector<PauliTerm> terms;
    for (int i = 1; i <= model.n; ++i)
        for (int j = i + 1; j <= model.n; ++j) {
            const cplx qij = model.q_matrix(i - 1, j - 1);
            if (qij == cplx(0, 0)) continue;
            terms.push_back({-qij, majorana_operator(model.n, i) * majorana_operator(model.n, j)});
        }
    if (terms.empty())
        terms.push_back({cplx(0, 0), PauliString::identity(model.n / 2)});
    return terms;
}

WickState wick_two_point(const FreeFermionModel& model) {
    check_model(model);
    return {Eigen::MatrixXcd::Identity(model.n, model.n) - model.q_matrix};
}

cplx wick_quartic(const WickState& state, int i, int j, int k, int l) {
    const auto n = state.two_point.rows();
    if (!(1 <= i && i < j && j < k && k < l && l <= n))
        throw ValidationError("quartic indices must be strictly increasing in [1..n]");
    const auto& g = state.two_point;
    return g(i - 1, j - 1) * g(k - 1, l - 1) - g(i - 1, k - 1) * g(j - 1, l - 1) +
           g(i - 1, l - 1) * g(j - 1, k - 1);
}

double j0_raw_value(const FreeFermionModel& model, const std::vector<int>& indices) {
    if (indices.size() != 4) throw ValidationError("j0 entries take exactly four indices");
    const auto& q = model.q_matrix;
    std::array<int, 4> perm = {0, 1, 2, 3};
    cplx sum = 0;
    do {
        int inversions = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                if (perm[a] > perm[b]) ++inversions;
        const double sgn = inversions % 2 == 0 ? 1.0 : -1.0;
        sum += sgn * q(indices[perm[0]] - 1, indices[perm[1]] - 1) *
               q(indices[perm[2]] - 1, indices[perm[3]] - 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (std::abs(sum.imag()) > 1e-10)
        throw ValidationError("j0 coefficient has a nonzero imaginary part");
    return sum.real() / static_cast<double>(model.n);
}

SykInstance j0_coefficients(const FreeFermionModel& model) {
    check_model(model);
    if (model.n < 4) throw ValidationError("j0 coefficients need n >= 4");
    SykInstance inst;
    inst.n = model.n;
    inst.q = 4;
    inst.tuples = increasing_tuples(model.n, 4);
    inst.values.reserve(inst.tuples.size());
    for (const auto& t : inst.tuples) inst.values.push_back(j0_raw_value(model, t));
    const double norm = inst.l2_norm();
    if (norm == 0) throw ValidationError("j0 coefficients vanish identically");
    for (double& v : inst.values) v /= norm;
    return inst;
}

SykInstance j0_coefficients(int n) { return j0_coefficients(build_q_matrix(n)); }

double syk_expectation_wick(const SykInstance& inst, const FreeFermionModel& model) {
    if (inst.q != 4) throw ValidationError("Wick expectation implemented for q = 4");
    if (inst.n != model.n) throw ValidationError("instance and model mode counts differ");
    const WickState state = wick_two_point(model);
    // <O_a> = i^2 <gamma gamma gamma gamma> for the Hermitian q=4 monomials.
    double energy = 0;
    for (std::size_t a = 0; a < inst.tuples.size(); ++a) {
        const auto& t = inst.tuples[a];
        const cplx w = -wick_quartic(state, t[0], t[1], t[2], t[3]);
        if (std::abs(w.imag()) > 1e-10)
            throw ValidationError("Wick value has a nonzero imaginary part");
        energy += inst.values[a] * w.real();
    }
    return energy;
}

double commutation_only_energy(const SykInstance& inst, const FreeFermionModel& model) {
    if (inst.q != 4) throw ValidationError("commutation-only bound implemented for q = 4");
    if (inst.n != model.n) throw ValidationError("instance and model mode counts differ");
    const SykInstance j0 = j0_coefficients(model);
    SykInstance matched = inst;
    for (std::size_t a = 0; a < matched.values.size(); ++a) {
        if (j0.values[a] > 0)
            matched.values[a] = std::abs(matched.values[a]);
        else if (j0.values[a] < 0)
            matched.values[a] = -std::abs(matched.values[a]);
        // zero j0 entry: coupling left unchanged
    }
    return syk_expectation_wick(matched, model);
}

SykExtremes syk_exact_extremes(const SykInstance& inst, std::uint64_t seed) {
    if (inst.n > 28)
        throw CapacityError("exact extremes limited to n <= 28, got " + std::to_string(inst.n));
    const auto terms = syk_hamiltonian_terms(inst);
    const std::int64_t dim = std::int64_t{1} << (inst.n / 2);
    MatVec mv = [&terms](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
        apply_pauli_sum(terms, in, out);
    };
    EigOptions opts;
    opts.seed = seed;
    opts.tol = 1e-10;
    SykExtremes ext;
    ext.ground = extreme_eigenvalue(mv, dim, EigWhich::smallest, opts).eigenvalue;
    opts.seed = derive_seed(seed, 0x70b);
    ext.top = extreme_eigenvalue(mv, dim, EigWhich::largest, opts).eigenvalue;
    return ext;
}

Eigen::VectorXcd dense_ground_state(const std::vector<PauliTerm>& terms) {
    const Eigen::MatrixXcd h = build_dense_sum(terms);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    return eig.eigenvectors().col(0);
}

std::string syk_to_json(const SykInstance& inst) {
    nlohmann::ordered_json j;
    j["n"] = inst.n;
    j["q"] = inst.q;
    j["couplings"] = nlohmann::json::array();
    for (std::size_t a = 0; a < inst.tuples.size(); ++a)
        j["couplings"].push_back({inst.tuples[a], inst.values[a]});
    return j.dump();
}

SykInstance syk_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("instance JSON: ") + e.what());
    }
    if (!j.contains("n") || !j.contains("q") || !j.contains("couplings"))
        throw ParseError("instance JSON needs fields 'n', 'q', 'couplings'");
    SykInstance inst;
    inst.n = j["n"].get<int>();
    inst.q = j["q"].get<int>();
    check_nq(inst.n, inst.q);
    for (const auto& c : j["couplings"]) {
        if (!c.is_array() || c.size() != 2 || !c[0].is_array() || !c[1].is_number())
            throw ParseError("each coupling must be [[indices...], value]");
        std::vector<int> tuple = c[0].get<std::vector<int>>();
        if (static_cast<int>(tuple.size()) != inst.q)
            throw ParseError("coupling tuple length != q");
        for (int i = 0; i < inst.q; ++i) {
            if (tuple[i] < 1 || tuple[i] > inst.n) throw ParseError("coupling index out of range");
            if (i > 0 && tuple[i] <= tuple[i - 1])
                throw ParseError("coupling indices must be strictly increasing");
        }
        inst.tuples.push_back(std::move(tuple));
        inst.values.push_back(c[1].get<double>());
    }
    return inst;
}

}  // namespace gramops

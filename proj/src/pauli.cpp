#include "gramops/pauli.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "gramops/capacity.hpp"
#include "gramops/errors.hpp"
#include "gramops/threading.hpp"

namespace gramops {

namespace {

void check_qubit(int num_qubits, int qubit) {
    if (qubit < 0 || qubit >= num_qubits)
        throw ValidationError("qubit " + std::to_string(qubit) + " out of range");
    if (num_qubits > 64) throw ValidationError("at most 64 qubits per string");
}

void check_apply_capacity(int num_qubits) {
    if (num_qubits > Capacity::matrix_free_qubits())
        throw CapacityError("matrix-free apply limited to " +
                            std::to_string(Capacity::matrix_free_qubits()) + " qubits, got " +
                            std::to_string(num_qubits) + " (override with GRAMOPS_CAPACITY)");
}

}  // namespace

PauliString PauliString::x_on(int num_qubits, int qubit) {
    check_qubit(num_qubits, qubit);
    return {num_qubits, 1ULL << qubit, 0, 0};
}

PauliString PauliString::z_on(int num_qubits, int qubit) {
    check_qubit(num_qubits, qubit);
    return {num_qubits, 0, 1ULL << qubit, 0};
}

PauliString PauliString::y_on(int num_qubits, int qubit) {
    check_qubit(num_qubits, qubit);
    return {num_qubits, 1ULL << qubit, 1ULL << qubit, 1};  // Y = i X Z
}

PauliString PauliString::operator*(const PauliString& o) const {
    if (num_qubits != o.num_qubits) throw ValidationError("qubit count mismatch in Pauli product");
    // Moving Z^{z} past X^{x'} costs (-1)^{|z & x'|}.
    const int flips = std::popcount(z_mask & o.x_mask);
    return {num_qubits, x_mask ^ o.x_mask, z_mask ^ o.z_mask,
            (phase_power + o.phase_power + 2 * flips) & 3};
}

cplx PauliString::phase() const {
    static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[phase_power & 3];
}

bool PauliString::is_hermitian_involution() const {
    return ((phase_power + std::popcount(x_mask & z_mask)) & 1) == 0;
}

bool pauli_commutes(const PauliString& p, const PauliString& q) {
    if (p.num_qubits != q.num_qubits)
        throw ValidationError("qubit count mismatch in commutation test");
    const int overlap = std::popcount(p.x_mask & q.z_mask) + std::popcount(p.z_mask & q.x_mask);
    return (overlap & 1) == 0;
}

GraphRep graph_to_pauli_rep(const Graph& g) {
    const int n = g.num_vertices();
    if (n > 64) throw CapacityError("graph representation limited to 64 vertices");
    GraphRep rep{g, {}};
    rep.strings.reserve(n);
    for (int a = 0; a < n; ++a) {
        const std::uint64_t below = a == 0 ? 0 : ((1ULL << a) - 1);
        std::uint64_t z = 0;
        if (!g.row(a).empty()) z = g.row(a)[0] & below;
        rep.strings.push_back({n, 1ULL << a, z, 0});
    }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (pauli_commutes(rep.strings[a], rep.strings[b]) == g.has_edge(a, b))
                throw std::logic_error("graph representation violates commutation pattern");
    return rep;
}

void apply_pauli_sum(const std::vector<PauliTerm>& terms, const Eigen::VectorXcd& state,
                     Eigen::VectorXcd& out) {
    if (terms.empty()) {
        out.setZero(state.size());
        return;
    }
    const int n = terms.front().string.num_qubits;
    for (const auto& t : terms)
        if (t.string.num_qubits != n) throw ValidationError("mixed qubit counts in Pauli sum");
    check_apply_capacity(n);
    const std::int64_t dim = std::int64_t{1} << n;
    if (state.size() != dim)
        throw ValidationError("state dimension " + std::to_string(state.size()) +
                              " != 2^" + std::to_string(n));
    out.resize(dim);

    struct Prepared {
        cplx coeff;
        std::uint64_t x, z;
    };
    std::vector<Prepared> prep;
    prep.reserve(terms.size());
    for (const auto& t : terms)
        prep.push_back({t.coeff * t.string.phase(), t.string.x_mask, t.string.z_mask});

    const cplx* in = state.data();
    cplx* dst = out.data();
    parallel_for(static_cast<std::size_t>(dim), [&](std::size_t begin, std::size_t end) {
        for (std::size_t y = begin; y < end; ++y) {
            cplx acc = 0;
            for (const auto& t : prep) {
                const std::uint64_t src = y ^ t.x;
                const int sign = std::popcount(t.z & src) & 1;
                acc += (sign ? -t.coeff : t.coeff) * in[src];
            }
            dst[y] = acc;
        }
    });
}

Eigen::MatrixXcd build_dense_sum(const std::vector<PauliTerm>& terms) {
    if (terms.empty()) throw ValidationError("empty Pauli sum");
    const int n = terms.front().string.num_qubits;
    if (n > Capacity::dense_qubits)
        throw CapacityError("dense Pauli sum limited to " + std::to_string(Capacity::dense_qubits) +
                            " qubits, got " + std::to_string(n));
    const std::int64_t dim = std::int64_t{1} << n;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : terms) {
        const cplx c = t.coeff * t.string.phase();
        for (std::int64_t col = 0; col < dim; ++col) {
            const auto src = static_cast<std::uint64_t>(col);
            const int sign = std::popcount(t.string.z_mask & src) & 1;
            h(static_cast<std::int64_t>(src ^ t.string.x_mask), col) += sign ? -c : c;
        }
    }
    return h;
}

std::vector<PauliTerm> hamiltonian_terms(const std::vector<double>& coeffs, const GraphRep& rep) {
    if (coeffs.size() != rep.strings.size())
        throw ValidationError("coefficient count " + std::to_string(coeffs.size()) +
                              " != vertex count " + std::to_string(rep.strings.size()));
    std::vector<PauliTerm> terms;
    terms.reserve(coeffs.size());
    for (std::size_t a = 0; a < coeffs.size(); ++a)
        terms.push_back({cplx(coeffs[a], 0), rep.strings[a]});
    return terms;
}

Eigen::VectorXcd apply_hamiltonian(const std::vector<double>& coeffs, const GraphRep& rep,
                                   const Eigen::VectorXcd& state) {
    Eigen::VectorXcd out;
    apply_pauli_sum(hamiltonian_terms(coeffs, rep), state, out);
    return out;
}

Eigen::MatrixXcd build_dense(const std::vector<double>& coeffs, const GraphRep& rep) {
    return build_dense_sum(hamiltonian_terms(coeffs, rep));
}

}  // namespace gramops

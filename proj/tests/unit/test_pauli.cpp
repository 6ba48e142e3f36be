#include <doctest.h>

#include <complex>

#include "gramops/errors.hpp"
#include "gramops/pauli.hpp"
#include "gramops/rng.hpp"
#include "test_util.hpp"

using namespace gramops;
using test::random_graph;

namespace {

Eigen::VectorXcd random_state(std::int64_t dim, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::VectorXcd v(dim);
    for (std::int64_t i = 0; i < dim; ++i) v[i] = cplx(rng.next_gaussian(), rng.next_gaussian());
    return v / v.norm();
}

}  // namespace

TEST_CASE("single-qubit matrices") {
    const auto x = build_dense_sum({{cplx(1, 0), PauliString::x_on(1, 0)}});
    CHECK(x(0, 0) == cplx(0, 0));
    CHECK(x(0, 1) == cplx(1, 0));
    CHECK(x(1, 0) == cplx(1, 0));
    CHECK(x(1, 1) == cplx(0, 0));

    const auto z = build_dense_sum({{cplx(1, 0), PauliString::z_on(1, 0)}});
    CHECK(z(0, 0) == cplx(1, 0));
    CHECK(z(1, 1) == cplx(-1, 0));
    CHECK(z(0, 1) == cplx(0, 0));

    const auto y = build_dense_sum({{cplx(1, 0), PauliString::y_on(1, 0)}});
    CHECK(y(0, 1) == cplx(0, -1));
    CHECK(y(1, 0) == cplx(0, 1));
}

TEST_CASE("products track phases") {
    const auto x = PauliString::x_on(1, 0);
    const auto z = PauliString::z_on(1, 0);
    // XZ = -iY, ZX = iY
    const auto xz = x * z;
    const auto zx = z * x;
    CHECK(xz.x_mask == zx.x_mask);
    CHECK(((zx.phase_power - xz.phase_power) & 3) == 2);  // differ by -1

    const auto y = PauliString::y_on(1, 0);
    const auto y2 = y * y;
    CHECK(y2.x_mask == 0);
    CHECK(y2.z_mask == 0);
    CHECK(y2.phase_power == 0);  // Y^2 = +1
    CHECK(y.is_hermitian_involution());
}

TEST_CASE("commutation test") {
    const auto x0 = PauliString::x_on(2, 0);
    const auto z0 = PauliString::z_on(2, 0);
    CHECK(!pauli_commutes(x0, z0));
    CHECK(pauli_commutes(x0, x0));

    // X0 Z1 vs Z0 X1: two anticommuting overlaps cancel
    const auto a = PauliString::x_on(2, 0) * PauliString::z_on(2, 1);
    const auto b = PauliString::z_on(2, 0) * PauliString::x_on(2, 1);
    CHECK(pauli_commutes(a, b));

    CHECK_THROWS_AS(pauli_commutes(PauliString::x_on(1, 0), PauliString::x_on(2, 0)),
                    ValidationError);
}

TEST_CASE("graph representation") {
    const Graph single(1);
    const GraphRep r1 = graph_to_pauli_rep(single);
    CHECK(r1.strings[0] == PauliString::x_on(1, 0));

    Graph pair_edge(2);
    pair_edge.add_edge(0, 1);
    const GraphRep r2 = graph_to_pauli_rep(pair_edge);
    CHECK(r2.strings[0] == PauliString::x_on(2, 0));
    CHECK(r2.strings[1] == PauliString::x_on(2, 1) * PauliString::z_on(2, 0));
    CHECK(!pauli_commutes(r2.strings[0], r2.strings[1]));

    const GraphRep r3 = graph_to_pauli_rep(Graph(2));
    CHECK(pauli_commutes(r3.strings[0], r3.strings[1]));

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = random_graph(9, 0.5, seed);
        const GraphRep rep = graph_to_pauli_rep(g);  // constructor runs the full check
        for (int a = 0; a < 9; ++a) {
            CHECK(rep.strings[a].is_hermitian_involution());
            for (int b = a + 1; b < 9; ++b)
                CHECK(pauli_commutes(rep.strings[a], rep.strings[b]) == !g.has_edge(a, b));
        }
    }
}

TEST_CASE("apply on basis states") {
    const GraphRep rep = graph_to_pauli_rep(Graph(1));
    Eigen::VectorXcd zero(2);
    zero << 1, 0;
    const Eigen::VectorXcd flipped = apply_hamiltonian({1.0}, rep, zero);
    CHECK(flipped(0) == cplx(0, 0));
    CHECK(flipped(1) == cplx(1, 0));

    Eigen::VectorXcd out;
    apply_pauli_sum({{cplx(1, 0), PauliString::z_on(1, 0)}}, zero, out);
    CHECK(out(0) == cplx(1, 0));
    CHECK(out(1) == cplx(0, 0));
}

TEST_CASE("matrix-free apply matches dense") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Graph g = random_graph(6, 0.5, seed);
        const GraphRep rep = graph_to_pauli_rep(g);
        Rng rng(seed + 50);
        std::vector<double> coeffs(6);
        for (double& c : coeffs) c = rng.next_gaussian();
        const Eigen::VectorXcd state = random_state(64, seed + 99);
        const Eigen::VectorXcd fast = apply_hamiltonian(coeffs, rep, state);
        const Eigen::VectorXcd slow = build_dense(coeffs, rep) * state;
        CHECK((fast - slow).norm() <= 1e-12);
    }
}

TEST_CASE("involution and linearity") {
    const Graph g = random_graph(5, 0.6, 3);
    const GraphRep rep = graph_to_pauli_rep(g);
    const Eigen::VectorXcd state = random_state(32, 17);

    for (const auto& s : rep.strings) {
        Eigen::VectorXcd once, twice;
        apply_pauli_sum({{cplx(1, 0), s}}, state, once);
        apply_pauli_sum({{cplx(1, 0), s}}, once, twice);
        CHECK((twice - state).norm() == 0.0);  // exact mask arithmetic
    }

    Rng rng(4);
    std::vector<double> j1(5), j2(5), jsum(5);
    for (int a = 0; a < 5; ++a) {
        j1[a] = rng.next_gaussian();
        j2[a] = rng.next_gaussian();
        jsum[a] = j1[a] + 2.5 * j2[a];
    }
    const Eigen::VectorXcd lhs = apply_hamiltonian(jsum, rep, state);
    const Eigen::VectorXcd rhs =
        apply_hamiltonian(j1, rep, state) + 2.5 * apply_hamiltonian(j2, rep, state);
    CHECK((lhs - rhs).norm() <= 1e-12);

    const Eigen::VectorXcd s2 = random_state(32, 18);
    const Eigen::VectorXcd lhs2 = apply_hamiltonian(j1, rep, state + cplx(0, 2) * s2);
    const Eigen::VectorXcd rhs2 =
        apply_hamiltonian(j1, rep, state) + cplx(0, 2) * apply_hamiltonian(j1, rep, s2);
    CHECK((lhs2 - rhs2).norm() <= 1e-12);
}

TEST_CASE("dense Hamiltonian of the embedded example") {
    const GraphRep rep = graph_to_pauli_rep(paper_example_graph());
    const std::vector<double> uniform(12, 1.0 / std::sqrt(12.0));
    const Eigen::MatrixXcd h = build_dense(uniform, rep);
    CHECK(std::abs(h.trace()) == 0.0);  // traceless strings
    CHECK((h - h.adjoint()).norm() <= 1e-12);
}

TEST_CASE("capacity checks precede allocation") {
    CHECK_THROWS_AS(build_dense(std::vector<double>(15, 0.1), graph_to_pauli_rep(Graph(15))),
                    CapacityError);
    const GraphRep big = graph_to_pauli_rep(Graph(27));
    Eigen::VectorXcd tiny(8);
    tiny.setZero();
    CHECK_THROWS_AS(apply_hamiltonian(std::vector<double>(27, 0.1), big, tiny), CapacityError);
}

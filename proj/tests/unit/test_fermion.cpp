#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "gramops/errors.hpp"
#include "gramops/fermion.hpp"
#include "gramops/rng.hpp"
#include "gramops/spectral.hpp"

#include "test_util.hpp"

using namespace gramops;

namespace {

double expectation(const std::vector<PauliTerm>& terms, const Eigen::VectorXcd& psi) {
    Eigen::VectorXcd out;
    apply_pauli_sum(terms, psi, out);
    return psi.dot(out).real();
}

/// Random involutory purely-imaginary antisymmetric matrix: the matrix sign
/// of i*B for a random real antisymmetric B. Its I - Q is an exact
/// ground-state two-point function.
FreeFermionModel random_involutory_model(int n, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            b(i, j) = rng.next_gaussian();
            b(j, i) = -b(i, j);
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(cplx(0, 1) * b.cast<cplx>());
    Eigen::VectorXd signs(n);
    for (int k = 0; k < n; ++k) signs[k] = eig.eigenvalues()[k] >= 0 ? 1.0 : -1.0;
    FreeFermionModel model;
    model.n = n;
    model.q_matrix =
        eig.eigenvectors() * signs.cast<cplx>().asDiagonal() * eig.eigenvectors().adjoint();
    // clean the numerical residue so the invariant checks see exact structure
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) model.q_matrix(i, j) = cplx(0, model.q_matrix(i, j).imag());
    for (int i = 0; i < n; ++i) model.q_matrix(i, i) = 0;
    return model;
}

}  // namespace

TEST_CASE("tuple enumeration") {
    const auto t = increasing_tuples(8, 4);
    CHECK(t.size() == 70);
    CHECK(t.front() == std::vector<int>{1, 2, 3, 4});
    CHECK(t.back() == std::vector<int>{5, 6, 7, 8});
    CHECK(std::is_sorted(t.begin(), t.end()));
}

TEST_CASE("random instances") {
    const SykInstance sphere = syk_random(8, 4, 3, SykNormalization::sphere);
    CHECK(sphere.values.size() == 70);
    CHECK(sphere.l2_norm() == test::Approx(1.0).epsilon(0).margin(1e-12));

    double mean = 0;
    const int samples = 1000;
    for (int s = 0; s < samples; ++s) {
        const SykInstance inst = syk_random(8, 4, 1000 + s, SykNormalization::expectation);
        mean += inst.l2_norm() * inst.l2_norm();
    }
    mean /= samples;
    CHECK(mean == test::Approx(1.0).epsilon(0.05));

    CHECK_THROWS_AS(syk_random(7, 4, 1, SykNormalization::sphere), ValidationError);
    CHECK_THROWS_AS(syk_random(8, 0, 1, SykNormalization::sphere), ValidationError);
}

TEST_CASE("monomial commutation graph") {
    const Graph g = monomial_commutation_graph(8, 4);
    const auto tuples = increasing_tuples(8, 4);
    const auto index_of = [&](const std::vector<int>& t) {
        return static_cast<int>(std::lower_bound(tuples.begin(), tuples.end(), t) -
                                tuples.begin());
    };
    CHECK(!g.has_edge(index_of({1, 2, 3, 4}), index_of({5, 6, 7, 8})));  // share 0: commute
    CHECK(g.has_edge(index_of({1, 2, 3, 4}), index_of({1, 5, 6, 7})));   // share 1: anticommute

    // q = 1 gives pairwise-anticommuting modes
    const Graph modes = monomial_commutation_graph(4, 1);
    CHECK(modes.num_edges() == 6);

    CHECK_THROWS_AS(monomial_commutation_graph(40, 10), CapacityError);
}

TEST_CASE("jordan-wigner representation agrees with the agreement rule") {
    for (int n : {4, 6, 8}) {
        for (int q = 1; q <= 4; ++q) {
            const Graph g = monomial_commutation_graph(n, q);
            const auto tuples = increasing_tuples(n, q);
            std::vector<PauliString> ops;
            for (const auto& t : tuples) {
                PauliString p = majorana_monomial(n, t);
                CHECK(p.is_hermitian_involution());
                ops.push_back(p);
            }
            for (std::size_t a = 0; a < ops.size(); ++a)
                for (std::size_t b = a + 1; b < ops.size(); ++b)
                    CHECK(pauli_commutes(ops[a], ops[b]) ==
                          !g.has_edge(static_cast<int>(a), static_cast<int>(b)));
        }
    }
}

TEST_CASE("hadamard construction") {
    CHECK(hadamard_matrix(1)(0, 0) == 1.0);
    const Eigen::MatrixXd h2 = hadamard_matrix(2);
    CHECK(h2(0, 0) == 1.0);
    CHECK(h2(1, 1) == -1.0);
    for (int m : {1, 2, 4, 8}) {
        const Eigen::MatrixXd h = hadamard_matrix(m);
        CHECK((h * h.transpose() - m * Eigen::MatrixXd::Identity(m, m)).norm() == 0.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hadamard_matrix(4));
    for (int k = 0; k < 4; ++k)
        CHECK(std::abs(eig.eigenvalues()[k]) == test::Approx(2.0).margin(1e-12));
    CHECK_THROWS_AS(hadamard_matrix(3), ValidationError);
}

TEST_CASE("Q matrix construction") {
    const FreeFermionModel model = build_q_matrix(8);
    const auto& q = model.q_matrix;
    CHECK((q + q.transpose()).norm() == 0.0);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) CHECK(q(i, j).real() == 0.0);
    CHECK((q * q - Eigen::MatrixXcd::Identity(8, 8)).norm() <= 1e-12);
    CHECK(q.norm() == test::Approx(std::sqrt(8.0)).margin(1e-12));

    CHECK_THROWS_AS(build_q_matrix(6), ValidationError);  // n/2 = 3 not a power of two

    const FreeFermionModel rs = build_q_matrix_random_sign(6, 4);
    CHECK((rs.q_matrix + rs.q_matrix.transpose()).norm() == 0.0);
    CHECK(rs.q_matrix.norm() == test::Approx(std::sqrt(6.0)).margin(1e-12));
}

TEST_CASE("free ground energy matches the exact oracle") {
    // n = 2, arbitrary coupling strength
    for (double w : {0.3, -1.7, 2.0}) {
        FreeFermionModel m2;
        m2.n = 2;
        m2.q_matrix = Eigen::MatrixXcd::Zero(2, 2);
        m2.q_matrix(0, 1) = cplx(0, w);
        m2.q_matrix(1, 0) = cplx(0, -w);
        const Eigen::MatrixXcd h = build_dense_sum(free_hamiltonian_terms(m2));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
        CHECK(free_ground_energy(m2) ==
              test::Approx(eig.eigenvalues()[0]).epsilon(0).margin(1e-12));
    }

    // n = 4 pins the spectral formula against the dense oracle
    const FreeFermionModel m4 = build_q_matrix(4);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig4(
        build_dense_sum(free_hamiltonian_terms(m4)));
    CHECK(free_ground_energy(m4) ==
          test::Approx(eig4.eigenvalues()[0]).epsilon(0).margin(1e-10));

    // zero matrix
    FreeFermionModel zero;
    zero.n = 4;
    zero.q_matrix = Eigen::MatrixXcd::Zero(4, 4);
    CHECK(free_ground_energy(zero) == 0.0);

    // scaling band across sizes
    std::vector<double> per_mode;
    for (int n : {4, 8, 16}) {
        const double e = free_ground_energy(build_q_matrix(n));
        CHECK(e < 0);
        per_mode.push_back(std::abs(e) / n);
    }
    for (double r : per_mode) {
        CHECK(r <= 2.0 * per_mode.front() + 1e-12);
        CHECK(2.0 * r >= per_mode.front() - 1e-12);
    }
}

TEST_CASE("wick two-point function is the exact ground-state correlation") {
    const FreeFermionModel m4 = build_q_matrix(4);
    const WickState wick = wick_two_point(m4);
    CHECK((wick.two_point - wick.two_point.adjoint()).norm() <= 1e-12);
    for (int i = 0; i < 4; ++i) CHECK(wick.two_point(i, i) == cplx(1, 0));

    const Eigen::VectorXcd psi0 = dense_ground_state(free_hamiltonian_terms(m4));
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            const PauliString prod =
                majorana_operator(4, i) * majorana_operator(4, j);
            Eigen::VectorXcd out;
            apply_pauli_sum({{cplx(1, 0), prod}}, psi0, out);
            const cplx direct = psi0.dot(out);
            CHECK(std::abs(direct - wick.two_point(i - 1, j - 1)) <= 1e-10);
        }
}

TEST_CASE("wick quartic") {
    // identity two-point function: distinct indices vanish
    FreeFermionModel zero;
    zero.n = 6;
    zero.q_matrix = Eigen::MatrixXcd::Zero(6, 6);
    const WickState flat = wick_two_point(zero);
    CHECK(wick_quartic(flat, 1, 2, 3, 4) == cplx(0, 0));
    CHECK_THROWS_AS(wick_quartic(flat, 1, 2, 2, 4), ValidationError);

    // block structure: only the (12)(34) pairing survives
    FreeFermionModel blocks;
    blocks.n = 4;
    blocks.q_matrix = Eigen::MatrixXcd::Zero(4, 4);
    blocks.q_matrix(0, 1) = cplx(0, 1);
    blocks.q_matrix(1, 0) = cplx(0, -1);
    blocks.q_matrix(2, 3) = cplx(0, -1);
    blocks.q_matrix(3, 2) = cplx(0, 1);
    const WickState w = wick_two_point(blocks);
    CHECK(std::abs(wick_quartic(w, 1, 2, 3, 4) - w.two_point(0, 1) * w.two_point(2, 3)) <=
          1e-14);

    // random involutory model vs exact diagonalization
    const FreeFermionModel m6 = random_involutory_model(6, 20);
    const WickState w6 = wick_two_point(m6);
    const Eigen::VectorXcd psi0 = dense_ground_state(free_hamiltonian_terms(m6));
    const auto tuples = increasing_tuples(6, 4);
    for (const auto& t : tuples) {
        PauliString prod = majorana_operator(6, t[0]);
        for (int i = 1; i < 4; ++i) prod = prod * majorana_operator(6, t[i]);
        Eigen::VectorXcd out;
        apply_pauli_sum({{cplx(1, 0), prod}}, psi0, out);
        const cplx direct = psi0.dot(out);
        CHECK(std::abs(direct - wick_quartic(w6, t[0], t[1], t[2], t[3])) <= 1e-10);
    }
}

TEST_CASE("structured quartic couplings") {
    const SykInstance j0 = j0_coefficients(8);
    CHECK(j0.l2_norm() == test::Approx(1.0).epsilon(0).margin(1e-12));
    CHECK(j0.values.size() == 70);

    // antisymmetry of the raw tensor under transpositions
    const FreeFermionModel m8 = build_q_matrix(8);
    CHECK(j0_raw_value(m8, {1, 3, 5, 7}) ==
          test::Approx(-j0_raw_value(m8, {3, 1, 5, 7})).epsilon(0).margin(1e-14));
    CHECK(j0_raw_value(m8, {1, 3, 5, 7}) ==
          test::Approx(-j0_raw_value(m8, {1, 3, 7, 5})).epsilon(0).margin(1e-14));

    // n = 4: a single tuple whose value reduces to the hand expansion
    const FreeFermionModel m4 = build_q_matrix(4);
    const auto& q = m4.q_matrix;
    const cplx expanded = 8.0 * (q(0, 1) * q(2, 3) - q(0, 2) * q(1, 3) + q(0, 3) * q(1, 2));
    CHECK(j0_raw_value(m4, {1, 2, 3, 4}) ==
          test::Approx(expanded.real() / 4.0).epsilon(0).margin(1e-14));
    const SykInstance j04 = j0_coefficients(4);
    CHECK(j04.values.size() == 1);
    CHECK(j04.values[0] == test::Approx(-1.0).epsilon(0).margin(1e-12));

    // relabeling equivariance: permuted Q gives the permuted raw tensor
    Rng rng(5);
    std::vector<int> perm{1, 2, 3, 4, 5, 6, 7, 8};
    for (int i = 7; i > 0; --i)
        std::swap(perm[i], perm[rng.next_below(i + 1)]);
    FreeFermionModel permuted;
    permuted.n = 8;
    permuted.q_matrix = Eigen::MatrixXcd::Zero(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            permuted.q_matrix(perm[i] - 1, perm[j] - 1) = m8.q_matrix(i, j);
    CHECK(j0_raw_value(permuted, {perm[0], perm[2], perm[4], perm[6]}) ==
          test::Approx(j0_raw_value(m8, {1, 3, 5, 7})).epsilon(0).margin(1e-12));
}

TEST_CASE("wick expectation of the structured couplings") {
    SykInstance empty;
    empty.n = 8;
    empty.q = 4;
    empty.tuples = increasing_tuples(8, 4);
    empty.values.assign(empty.tuples.size(), 0.0);
    CHECK(syk_expectation_wick(empty, build_q_matrix(8)) == 0.0);

    std::vector<double> per_mode;
    for (int n : {8, 12, 16}) {
        const FreeFermionModel model = build_q_matrix(n);
        const double e = syk_expectation_wick(j0_coefficients(model), model);
        CHECK(e < 0);
        per_mode.push_back(std::abs(e) / n);
    }
    CHECK(per_mode[1] > 0.5 * per_mode[0]);
    CHECK(per_mode[2] > 0.5 * per_mode[0]);
    CHECK(per_mode[2] < 2.0 * per_mode[0]);

    // n = 8: exact ground-state expectation from the dense oracle
    const FreeFermionModel m8 = build_q_matrix(8);
    const SykInstance j0 = j0_coefficients(m8);
    const Eigen::VectorXcd psi0 = dense_ground_state(free_hamiltonian_terms(m8));
    const double direct = expectation(syk_hamiltonian_terms(j0), psi0);
    CHECK(syk_expectation_wick(j0, m8) ==
          test::Approx(direct).epsilon(0).margin(1e-9));
}

TEST_CASE("commutation-only bound") {
    const FreeFermionModel m8 = build_q_matrix(8);
    const SykInstance j0 = j0_coefficients(m8);
    CHECK(commutation_only_energy(j0, m8) ==
          test::Approx(syk_expectation_wick(j0, m8)).epsilon(0).margin(1e-12));

    const WickState wick = wick_two_point(m8);
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const SykInstance inst = syk_random(8, 4, seed, SykNormalization::sphere);
        const double bound = commutation_only_energy(inst, m8);
        CHECK(bound <= 0.0);
        // matches -sum |J_a| |W_a| with W_a the signed Wick value of monomial a
        double direct = 0;
        for (std::size_t a = 0; a < inst.tuples.size(); ++a) {
            const auto& t = inst.tuples[a];
            const double w = (-wick_quartic(wick, t[0], t[1], t[2], t[3])).real();
            direct -= std::abs(inst.values[a]) * std::abs(w);
        }
        CHECK(bound == test::Approx(direct).epsilon(0).margin(1e-9));
    }

    // n = 6: exhaustive sign minimization reaches at least as low
    // (involutory Q, so the Wick state is a genuine state of the system)
    const FreeFermionModel m6 = random_involutory_model(6, 9);
    for (std::uint64_t seed : {4ULL, 5ULL}) {
        const SykInstance inst = syk_random(6, 4, seed, SykNormalization::sphere);
        const double bound = commutation_only_energy(inst, m6);
        const auto terms = syk_hamiltonian_terms(inst);
        double best = 0;
        for (std::uint64_t mask = 0; mask < (1ULL << 15); ++mask) {
            auto flipped = terms;
            for (int a = 0; a < 15; ++a)
                if ((mask >> a) & 1) flipped[a].coeff = -flipped[a].coeff;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(build_dense_sum(flipped),
                                                                Eigen::EigenvaluesOnly);
            best = std::min(best, eig.eigenvalues()[0]);
        }
        CHECK(best <= bound + 1e-9);
    }
}

TEST_CASE("exact extremes") {
    // single monomial: spectrum is +-|J|
    SykInstance single;
    single.n = 4;
    single.q = 4;
    single.tuples = {{1, 2, 3, 4}};
    single.values = {0.73};
    const SykExtremes ext = syk_exact_extremes(single);
    CHECK(ext.ground == test::Approx(-0.73).epsilon(0).margin(1e-12));
    CHECK(ext.top == test::Approx(0.73).epsilon(0).margin(1e-12));

    // q = 2 cross-oracle: the corresponding quadratic model
    const SykInstance q2 = syk_random(8, 2, 12, SykNormalization::sphere);
    FreeFermionModel model;
    model.n = 8;
    model.q_matrix = Eigen::MatrixXcd::Zero(8, 8);
    for (std::size_t a = 0; a < q2.tuples.size(); ++a) {
        const int i = q2.tuples[a][0] - 1;
        const int j = q2.tuples[a][1] - 1;
        model.q_matrix(i, j) = cplx(0, -q2.values[a]);
        model.q_matrix(j, i) = cplx(0, q2.values[a]);
    }
    CHECK(syk_exact_extremes(q2).ground ==
          test::Approx(free_ground_energy(model)).epsilon(0).margin(1e-9));

    // odd q stays O(1) across n
    for (int n : {8, 12, 16}) {
        const SykInstance q3 = syk_random(n, 3, 77, SykNormalization::sphere);
        const double ground = syk_exact_extremes(q3).ground;
        CHECK(std::abs(ground) < 3.0);
    }

    CHECK_THROWS_AS(syk_exact_extremes(syk_random(30, 4, 1, SykNormalization::sphere)),
                    CapacityError);
}

TEST_CASE("variational bound") {
    for (int n : {8, 10, 12}) {
        const FreeFermionModel model = n == 8 ? build_q_matrix(n)
                                              : build_q_matrix_random_sign(n, n);
        const SykInstance inst = syk_random(n, 4, n + 1, SykNormalization::sphere);
        // the Wick state is only exact for involutory Q; use the dense state instead
        const Eigen::VectorXcd psi0 = dense_ground_state(free_hamiltonian_terms(model));
        const double var = expectation(syk_hamiltonian_terms(inst), psi0);
        CHECK(syk_exact_extremes(inst).ground <= var + 1e-9);
        if (n == 8) {
            CHECK(syk_exact_extremes(inst).ground <=
                  syk_expectation_wick(inst, model) + 1e-9);
        }
    }
}

TEST_CASE("instance serialization") {
    const SykInstance inst = syk_random(6, 3, 5, SykNormalization::sphere);
    const SykInstance back = syk_from_json(syk_to_json(inst));
    CHECK(back.n == inst.n);
    CHECK(back.q == inst.q);
    CHECK(back.tuples == inst.tuples);
    CHECK(back.values == inst.values);
    CHECK_THROWS_AS(syk_from_json("{\"n\":4}"), ParseError);
    CHECK_THROWS_AS(syk_from_json("{\"n\":4,\"q\":2,\"couplings\":[[[2,1],0.5]]}"), ParseError);
}

#include <doctest.h>

#include <cmath>

#include "gramops/errors.hpp"
#include "gramops/psi.hpp"
#include "gramops/sdp.hpp"
#include "test_util.hpp"

using namespace gramops;
using test::complete_graph;
using test::cycle_graph;
using test::random_graph;

TEST_CASE("uniform bounds on reference graphs") {
    CHECK(psi_lower_bound_uniform(Graph(4)).norm_squared == test::Approx(4).margin(1e-9));
    CHECK(psi_lower_bound_uniform(complete_graph(6)).norm_squared ==
          test::Approx(1).margin(1e-9));

    const PsiReport c5 = psi_lower_bound_uniform(cycle_graph(5));
    CHECK(c5.alpha == 2);
    CHECK(c5.norm_squared <= std::sqrt(5.0) + 1e-6);
}

TEST_CASE("independent-set coefficients achieve alpha exactly") {
    // maximum independent set {0, 2} of C5
    std::vector<double> k(5, 0.0);
    k[0] = k[2] = 1.0 / std::sqrt(2.0);
    const PsiReport r = psi_lower_bound(cycle_graph(5), k);
    CHECK(r.norm_squared == test::Approx(2.0).epsilon(0).margin(1e-9));
}

TEST_CASE("embedded example beats its independence number") {
    const PsiReport r = psi_lower_bound_uniform(paper_example_graph());
    CHECK(r.alpha == 2);
    CHECK(r.norm_squared >= 2.005);
    CHECK(r.residual_norm <= 1e-7);
}

TEST_CASE("coefficient validation") {
    CHECK_THROWS_AS(psi_lower_bound(cycle_graph(5), std::vector<double>(5, 1.0)),
                    ValidationError);
    CHECK_THROWS_AS(psi_lower_bound(cycle_graph(5), std::vector<double>(3, 0.5)),
                    ValidationError);
    WeightedGraph wg(cycle_graph(5), std::vector<Rational>(5, Rational(2)));
    CHECK_THROWS_AS(weighted_psi_lower_bound(wg, std::vector<double>(5, 1.0)), ValidationError);
}

TEST_CASE("weighted bounds") {
    WeightedGraph single(Graph(1), {Rational(9, 2)});
    const double w = 4.5;
    CHECK(weighted_psi_lower_bound(single, {std::sqrt(w)}).norm_squared ==
          test::Approx(w).margin(1e-9));

    // independent set {0, 2} of C5 with weights (2,1,1,1,1): value 3
    WeightedGraph wc5(cycle_graph(5),
                      {Rational(2), Rational(1), Rational(1), Rational(1), Rational(1)});
    std::vector<double> k(5, 0.0);
    k[0] = 2.0 / std::sqrt(3.0);
    k[2] = 1.0 / std::sqrt(3.0);
    CHECK(weighted_psi_lower_bound(wc5, k).norm_squared == test::Approx(3.0).margin(1e-9));

    // blow-up equivalence: replicated coefficients J_{a,i} = K_a / m_a
    std::vector<double> k2{1.1, 0.4, -0.3, 0.6, 0.2};
    double c2 = 0;
    const std::vector<double> m{2, 1, 1, 1, 1};
    for (int a = 0; a < 5; ++a) c2 += k2[a] * k2[a] / m[a];
    for (double& v : k2) v /= std::sqrt(c2);
    const double weighted = weighted_psi_lower_bound(wc5, k2).norm_squared;

    std::vector<double> replicated;
    for (int a = 0; a < 5; ++a)
        for (int copy = 0; copy < static_cast<int>(m[a]); ++copy)
            replicated.push_back(k2[a] / m[a]);
    const double blown = psi_lower_bound(blow_up(wc5), replicated).norm_squared;
    CHECK(weighted == test::Approx(blown).epsilon(0).margin(1e-9));
}

TEST_CASE("coefficient optimization") {
    WeightedGraph kn(complete_graph(5), std::vector<Rational>(5, Rational(1)));
    const PsiReport flat = optimize_coefficients(kn, PsiInit::uniform, {}, 10, 0.5);
    CHECK(flat.norm_squared == test::Approx(1.0).margin(1e-8));

    WeightedGraph c5(cycle_graph(5), std::vector<Rational>(5, Rational(1)));
    const PsiReport from_set = optimize_coefficients(c5, PsiInit::independent_set, {}, 25, 0.5);
    CHECK(from_set.norm_squared == test::Approx(2.0).margin(1e-7));

    const PsiReport init_only = optimize_coefficients(c5, PsiInit::uniform, {}, 0, 0.5);
    const PsiReport improved = optimize_coefficients(c5, PsiInit::uniform, {}, 40, 0.5);
    CHECK(improved.norm_squared >= init_only.norm_squared - 1e-9);
    CHECK(improved.norm_squared > init_only.norm_squared + 1e-3);  // C5 uniform is not optimal
    CHECK(improved.stationarity_residual < init_only.stationarity_residual);

    double constraint = 0;
    for (double v : improved.coefficients) constraint += v * v;
    CHECK(constraint == test::Approx(1.0).margin(1e-10));
}

TEST_CASE("sandwich against theta") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const int n = 4 + static_cast<int>(seed);
        const Graph g = random_graph(n, 0.45, seed * 3 + 1);
        PsiOptions opts;
        opts.compute_theta = true;
        const PsiReport r = psi_lower_bound_uniform(g, opts);
        REQUIRE(r.theta.has_value());
        CHECK(r.alpha <= *r.theta + 1e-4);
        CHECK(r.norm_squared <= *r.theta + 1e-4);
    }
}

TEST_CASE("separation search") {
    const auto tiny = search_separation(1, 3, 0.5, 11);
    CHECK(tiny.size() == 3);
    for (const auto& t : tiny) {
        CHECK(t.report.norm_squared == test::Approx(1.0).margin(1e-9));
        CHECK(t.above_threshold);   // 1 > 0.5
        CHECK(!t.separation);       // but norm^2 == alpha
    }

    const auto a = search_separation(7, 4, 2.0, 123);
    const auto b = search_separation(7, 4, 2.0, 123);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].report.norm_squared == b[i].report.norm_squared);
        CHECK(a[i].report.alpha == b[i].report.alpha);
        CHECK(a[i].report.coefficients == b[i].report.coefficients);
        CHECK(a[i].report.seed == b[i].report.seed);
    }

    CHECK_THROWS_AS(search_separation(5, 0, 1.0, 1), ValidationError);
}

#include "gramops/knapsack.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <json.hpp>

#include "gramops/errors.hpp"

namespace gramops {

namespace {

constexpr int kRecursionLimit = 26;
constexpr int kEnumerationLimit = 28;
constexpr int kMitmLimit = 40;
constexpr int kDenseLimit = 12;

void check_dense(std::size_t n) {
    if (n > kDenseLimit)
        throw CapacityError("dense knapsack oracle limited to " + std::to_string(kDenseLimit) +
                            " qubits, got " + std::to_string(n));
}

}  // namespace

NormalFormResult to_normal_form(const KnapsackOperator& op) {
    NormalFormResult result;
    result.form.scalar = op.scalar;
    for (std::size_t i = 0; i < op.qubit_terms.size(); ++i) {
        const Eigen::Matrix2cd& o = op.qubit_terms[i];
        const double scale = std::max(1.0, o.norm());
        if (std::abs(o.trace()) > 1e-12 * scale)
            throw ValidationError("qubit term " + std::to_string(i) + " is not traceless");

        // Traceless 2x2: eigenvalues +-sqrt(-det).
        cplx c = std::sqrt(-o.determinant());
        if (c.real() < 0 || (c.real() == 0 && c.imag() < 0)) c = -c;

        // Unit kernel vector of O + cI, taken from the better-conditioned row.
        const Eigen::Matrix2cd m = o + c * Eigen::Matrix2cd::Identity();
        Eigen::Vector2cd w;
        const double r0 = std::abs(m(0, 0)) + std::abs(m(0, 1));
        const double r1 = std::abs(m(1, 0)) + std::abs(m(1, 1));
        if (r0 < 1e-300 && r1 < 1e-300) {
            w << 0, 1;
        } else if (r0 >= r1) {
            w << m(0, 1), -m(0, 0);
        } else {
            w << m(1, 1), -m(1, 0);
        }
        w.normalize();
        Eigen::Matrix2cd v;  // columns: w_perp, w
        v.col(0) << std::conj(w(1)), -std::conj(w(0));
        v.col(1) = w;
        Eigen::Matrix2cd u = v.adjoint();
        Eigen::Matrix2cd tri = u * o * u.adjoint();
        const cplx t = tri(1, 0);
        const double d = std::abs(t);
        if (d > 1e-300) {
            Eigen::Matrix2cd phase = Eigen::Matrix2cd::Identity();
            phase(1, 1) = std::conj(t) / d;
            u = phase * u;
        }
        result.form.pairs.push_back({c, d});
        result.unitaries.push_back(u);
    }
    return result;
}

namespace {

struct Recursion {
    const KnapsackNormalForm& nf;
    std::int64_t evaluations = 0;
    std::vector<double>* leaves = nullptr;

    double run(cplx c, int k) {
        ++evaluations;
        if (k == 0) {
            const double v = std::abs(c);
            if (leaves) leaves->push_back(v);
            return v;
        }
        const auto& pair = nf.pairs[k - 1];
        const double a = run(c + pair.c, k - 1);
        const double b = run(c - pair.c, k - 1);
        const double d = pair.d;
        const double p = a * a + d * d;
        const double t = b * b;
        const double lambda_max = 0.5 * ((p + t) + std::hypot(p - t, 2.0 * d * b));
        return lambda_max > 0 ? a * b / std::sqrt(lambda_max) : 0.0;
    }
};

}  // namespace

BoundReport recursive_lower_bound(const KnapsackNormalForm& nf, const BoundOptions& opts) {
    const int n = static_cast<int>(nf.pairs.size());
    if (n > kRecursionLimit)
        throw CapacityError("recursive bound limited to " + std::to_string(kRecursionLimit) +
                            " qubits, got " + std::to_string(n));
    for (const auto& p : nf.pairs)
        if (p.d < 0) throw ValidationError("normal form requires d_i >= 0");

    BoundReport report;
    std::vector<double> leaves;
    const bool collect = opts.collect_leaves && n <= 16;

    if (opts.try_all_orders && n >= 2) {
        if (n > 6) throw CapacityError("exhaustive order search limited to 6 qubits");
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        double best = -1;
        std::int64_t evals = 0;
        do {
            KnapsackNormalForm permuted;
            permuted.scalar = nf.scalar;
            for (int idx : order) permuted.pairs.push_back(nf.pairs[idx]);
            Recursion rec{permuted};
            const double bound = rec.run(permuted.scalar, n);
            evals += rec.evaluations;
            best = std::max(best, bound);
        } while (std::next_permutation(order.begin(), order.end()));
        report.lower_bound = best;
        report.evaluations = evals;
    } else {
        Recursion rec{nf};
        if (collect) rec.leaves = &leaves;
        report.lower_bound = rec.run(nf.scalar, n);
        report.evaluations = rec.evaluations;
    }
    if (collect) report.leaf_values = std::move(leaves);
    return report;
}

Eigen::MatrixXcd densify(const KnapsackNormalForm& nf) {
    const std::size_t n = nf.pairs.size();
    check_dense(n);
    const std::int64_t dim = std::int64_t{1} << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::int64_t b = 0; b < dim; ++b) {
        cplx diag = nf.scalar;
        for (std::size_t i = 0; i < n; ++i) {
            diag += ((b >> i) & 1) ? -nf.pairs[i].c : nf.pairs[i].c;
            if (!((b >> i) & 1)) m(b | (std::int64_t{1} << i), b) += nf.pairs[i].d;
        }
        m(b, b) += diag;
    }
    return m;
}

Eigen::MatrixXcd densify(const KnapsackOperator& op) {
    const std::size_t n = op.qubit_terms.size();
    check_dense(n);
    const std::int64_t dim = std::int64_t{1} << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim) * op.scalar;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& o = op.qubit_terms[i];
        for (std::int64_t b = 0; b < dim; ++b) {
            const int bit = (b >> i) & 1;
            m(b, b) += o(bit, bit);
            m(b ^ (std::int64_t{1} << i), b) += o(1 - bit, bit);
        }
    }
    return m;
}

double exact_min_singular(const KnapsackNormalForm& nf) {
    const Eigen::MatrixXcd m = densify(nf);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues().minCoeff();
}

double hamiltonian_ground(const KnapsackNormalForm& nf) {
    const Eigen::MatrixXcd o = densify(nf);
    const Eigen::MatrixXcd h = o.adjoint() * o;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
    return eig.eigenvalues()[0];
}

namespace {

/// Reads mask bits as the sign pattern (bit set = -1); smaller reversed-bit
/// key = lexicographically smaller pattern with +1 < -1.
std::uint64_t lex_key(std::uint64_t mask, int n) {
    std::uint64_t key = 0;
    for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1) key |= std::uint64_t{1} << (n - 1 - i);
    return key;
}

std::vector<int> mask_to_signs(std::uint64_t mask, int n) {
    std::vector<int> signs(n);
    for (int i = 0; i < n; ++i) signs[i] = ((mask >> i) & 1) ? -1 : 1;
    return signs;
}

SubsetSumResult enumerate_signs(cplx c, const std::vector<cplx>& coeffs) {
    const int n = static_cast<int>(coeffs.size());
    cplx sum = c;
    for (const auto& x : coeffs) sum += x;  // mask 0: all +1
    double best = std::abs(sum);
    std::uint64_t best_mask = 0;
    std::uint64_t mask = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < total; ++k) {
        const int bit = std::countr_zero(k);  // Gray-code step
        mask ^= std::uint64_t{1} << bit;
        sum += ((mask >> bit) & 1) ? -2.0 * coeffs[bit] : 2.0 * coeffs[bit];
        const double v = std::abs(sum);
        if (v < best || (v == best && lex_key(mask, n) < lex_key(best_mask, n))) {
            best = v;
            best_mask = mask;
        }
    }
    return {best, mask_to_signs(best_mask, n)};
}

SubsetSumResult mitm_real(double c, const std::vector<double>& coeffs) {
    const int n = static_cast<int>(coeffs.size());
    const int n_lo = n / 2;
    const int n_hi = n - n_lo;

    auto half_sums = [](const std::vector<double>& v, int from, int count, double base) {
        std::vector<std::pair<double, std::uint64_t>> sums;
        sums.reserve(std::size_t{1} << count);
        sums.emplace_back(base + std::accumulate(v.begin() + from, v.begin() + from + count, 0.0),
                          0);
        double running = sums[0].first;
        std::uint64_t mask = 0;
        for (std::uint64_t k = 1; k < (std::uint64_t{1} << count); ++k) {
            const int bit = std::countr_zero(k);
            mask ^= std::uint64_t{1} << bit;
            running += ((mask >> bit) & 1) ? -2.0 * v[from + bit] : 2.0 * v[from + bit];
            sums.emplace_back(running, mask);
        }
        return sums;
    };

    auto lo = half_sums(coeffs, 0, n_lo, c);
    auto hi = half_sums(coeffs, n_lo, n_hi, 0.0);
    std::sort(hi.begin(), hi.end());

    double best = std::numeric_limits<double>::infinity();
    std::uint64_t best_mask = 0;
    for (const auto& [a, lo_mask] : lo) {
        const auto idx = static_cast<std::size_t>(
            std::lower_bound(hi.begin(), hi.end(), std::make_pair(-a, std::uint64_t{0})) -
            hi.begin());
        for (std::size_t cand : {idx > 0 ? idx - 1 : hi.size(), idx}) {
            if (cand >= hi.size()) continue;
            const double v = std::abs(a + hi[cand].first);
            const std::uint64_t mask = lo_mask | (hi[cand].second << n_lo);
            if (v < best || (v == best && lex_key(mask, n) < lex_key(best_mask, n))) {
                best = v;
                best_mask = mask;
            }
        }
    }
    return {best, mask_to_signs(best_mask, n)};
}

}  // namespace

SubsetSumResult subset_sum_min(cplx c, const std::vector<cplx>& coeffs) {
    const int n = static_cast<int>(coeffs.size());
    if (n == 0) return {std::abs(c), {}};
    if (n <= kEnumerationLimit) return enumerate_signs(c, coeffs);
    const bool real = c.imag() == 0 && std::all_of(coeffs.begin(), coeffs.end(),
                                                   [](cplx x) { return x.imag() == 0; });
    if (real && n <= kMitmLimit) {
        std::vector<double> re(coeffs.size());
        std::transform(coeffs.begin(), coeffs.end(), re.begin(),
                       [](cplx x) { return x.real(); });
        return mitm_real(c.real(), re);
    }
    throw CapacityError("subset-sum limited to " + std::to_string(kEnumerationLimit) +
                        " coefficients (" + std::to_string(kMitmLimit) + " for real inputs)");
}

SubsetSumResult subset_sum_min_meet_in_middle(double c, const std::vector<double>& coeffs) {
    if (coeffs.empty()) return {std::abs(c), {}};
    if (coeffs.size() > kMitmLimit)
        throw CapacityError("meet-in-the-middle limited to " + std::to_string(kMitmLimit) +
                            " coefficients");
    return mitm_real(c, coeffs);
}

namespace {

cplx parse_cplx(const nlohmann::json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("field '" + field + "' must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string knapsack_to_json(const KnapsackNormalForm& nf) {
    nlohmann::ordered_json j;
    j["c"] = {nf.scalar.real(), nf.scalar.imag()};
    j["pairs"] = nlohmann::json::array();
    for (const auto& p : nf.pairs)
        j["pairs"].push_back({{"c_i", {p.c.real(), p.c.imag()}}, {"d_i", p.d}});
    return j.dump();
}

KnapsackNormalForm knapsack_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("knapsack JSON: ") + e.what());
    }
    if (!j.contains("c")) throw ParseError("knapsack JSON needs field 'c'");
    if (j.contains("pairs")) {
        KnapsackNormalForm nf;
        nf.scalar = parse_cplx(j["c"], "c");
        for (const auto& p : j["pairs"]) {
            if (!p.contains("c_i") || !p.contains("d_i"))
                throw ParseError("each pair needs 'c_i' and 'd_i'");
            const double d = p["d_i"].get<double>();
            if (d < 0) throw ParseError("'d_i' must be nonnegative");
            nf.pairs.push_back({parse_cplx(p["c_i"], "c_i"), d});
        }
        return nf;
    }
    if (j.contains("qubits")) {
        KnapsackOperator op;
        op.scalar = parse_cplx(j["c"], "c");
        for (const auto& qj : j["qubits"]) {
            if (!qj.contains("matrix") || !qj["matrix"].is_array() || qj["matrix"].size() != 2)
                throw ParseError("each qubit needs a 2x2 'matrix'");
            Eigen::Matrix2cd m;
            for (int r = 0; r < 2; ++r) {
                if (!qj["matrix"][r].is_array() || qj["matrix"][r].size() != 2)
                    throw ParseError("qubit matrix rows must have two [re, im] entries");
                for (int col = 0; col < 2; ++col)
                    m(r, col) = parse_cplx(qj["matrix"][r][col], "matrix");
            }
            op.qubit_terms.push_back(m);
        }
        return to_normal_form(op).form;
    }
    throw ParseError("knapsack JSON needs 'pairs' (normal form) or 'qubits' (raw)");
}

}  // namespace gramops

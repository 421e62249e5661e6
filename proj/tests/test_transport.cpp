#include <cmath>

#include "doctest.h"

#include "breg/divergence.hpp"
#include "breg/reference.hpp"
#include "breg/rng.hpp"
#include "breg/transport.hpp"
#include "support/test_support.hpp"

using namespace breg;
using breg::test::random_vector;

namespace {

DiscreteDistribution random_dist(Rng& rng, int size, int dim, double lo, double hi) {
    std::vector<Vector> atoms;
    Vector weights;
    for (int k = 0; k < size; ++k) {
        atoms.push_back(random_vector(rng, dim, lo, hi));
        weights.push_back(0.1 + rng.next_unit());
    }
    double s = 0.0;
    for (double w : weights) s += w;
    for (double& w : weights) w /= s;
    return DiscreteDistribution(std::move(atoms), std::move(weights));
}

const DiscreteDistribution& three_atom_p() {
    static const DiscreteDistribution p({{0.0}, {1.0}, {2.0}}, {0.5, 0.3, 0.2});
    return p;
}
const DiscreteDistribution& three_atom_q() {
    static const DiscreteDistribution q({{0.0}, {1.0}, {2.0}}, {0.2, 0.3, 0.5});
    return q;
}

void check_marginals(const TransportPlan& plan, double tol) {
    const int m = plan.coupling.rows(), n = plan.coupling.cols();
    for (int i = 0; i < m; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += plan.coupling(i, j);
        CHECK(std::abs(row - plan.source_weights[static_cast<std::size_t>(i)]) < tol);
    }
    for (int j = 0; j < n; ++j) {
        double col = 0.0;
        for (int i = 0; i < m; ++i) col += plan.coupling(i, j);
        CHECK(std::abs(col - plan.target_weights[static_cast<std::size_t>(j)]) < tol);
    }
}

}  // namespace

TEST_SUITE("transport") {

TEST_CASE("cost matrices match their formulas") {
    const auto sq = make_builtin("squared_l2", 1);
    const auto c1 = bregman_cost_matrix(sq, DiscreteDistribution::dirac({0.0}),
                                        DiscreteDistribution::dirac({1.0}));
    CHECK(c1(0, 0) == doctest::Approx(1.0));

    // neg_entropy on the positive reals: source atom goes first
    const auto ent = make_builtin("neg_entropy", 1);
    const auto c2 = bregman_cost_matrix(ent, DiscreteDistribution::dirac({2.0}),
                                        DiscreteDistribution::dirac({1.0}));
    const double expected = 2.0 * std::log(2.0) - 1.0;
    CHECK(c2(0, 0) == doctest::Approx(expected).epsilon(1e-14));
    // bit-identical to the divergence module's value
    CHECK(c2(0, 0) == bregman_value(ent, {2.0}, {1.0}));

    const auto c3 = metric_cost_matrix(2.0, DiscreteDistribution::dirac({0.0, 0.0}),
                                       DiscreteDistribution::dirac({3.0, 4.0}));
    CHECK(c3(0, 0) == doctest::Approx(25.0));

    const auto c4 = metric_cost_matrix(1.0, DiscreteDistribution::dirac({0.0, 0.0}),
                                       DiscreteDistribution::dirac({3.0, 4.0}));
    CHECK(c4(0, 0) == doctest::Approx(7.0));
}

TEST_CASE("atoms outside the generator domain are rejected") {
    const auto ent = make_builtin("neg_entropy", 1);
    CHECK_THROWS_AS(bregman_cost_matrix(ent, DiscreteDistribution::dirac({-1.0}),
                                        DiscreteDistribution::dirac({1.0})),
                    std::domain_error);
}

TEST_CASE("exact solver on the pinned instances") {
    SUBCASE("identical marginals cost nothing") {
        const auto& p = three_atom_p();
        const auto plan = solve_exact(metric_cost_matrix(2.0, p, p), p, p);
        CHECK(plan.cost <= 1e-12);
        check_marginals(plan, 1e-9);
    }
    SUBCASE("two Diracs force the unique coupling") {
        const auto a = DiscreteDistribution::dirac({0.0});
        const auto b = DiscreteDistribution::dirac({1.0});
        const auto plan = solve_exact(metric_cost_matrix(2.0, a, b), a, b);
        CHECK(plan.cost == doctest::Approx(1.0));
        CHECK(plan.coupling(0, 0) == doctest::Approx(1.0));
    }
    SUBCASE("the 0.6 instance: mass 0.3 moves distance 1 twice") {
        const auto plan = solve_exact(metric_cost_matrix(2.0, three_atom_p(), three_atom_q()),
                                      three_atom_p(), three_atom_q());
        CHECK(std::abs(plan.cost - 0.6) < 1e-12);
        check_marginals(plan, 1e-9);
    }
}

TEST_CASE("exact solver agrees with basic-solution enumeration") {
    Rng rng(71);
    for (int t = 0; t < 60; ++t) {
        const int m = 1 + static_cast<int>(rng.next_u64() % 4);
        const int n = 1 + static_cast<int>(rng.next_u64() % 4);
        const auto src = random_dist(rng, m, 1, -2.0, 2.0);
        const auto dst = random_dist(rng, n, 1, -2.0, 2.0);
        Matrix c(src.size(), dst.size());
        for (double& v : c.data()) v = rng.next_unit();
        const auto plan = solve_exact(c, src, dst);
        const double brute = reference_transport_minimum(c, src.weights(), dst.weights());
        CHECK(std::abs(plan.cost - brute) < 1e-9);
        check_marginals(plan, 1e-9);
        // dual certificate: every reduced cost nonnegative up to 1e-9
        for (int i = 0; i < c.rows(); ++i)
            for (int j = 0; j < c.cols(); ++j)
                CHECK(c(i, j) - plan.dual_u[static_cast<std::size_t>(i)] -
                          plan.dual_v[static_cast<std::size_t>(j)] >=
                      -1e-9);
        // cost consistency with the coupling
        double inner = 0.0;
        for (int i = 0; i < c.rows(); ++i)
            for (int j = 0; j < c.cols(); ++j) inner += plan.coupling(i, j) * c(i, j);
        CHECK(std::abs(inner - plan.cost) < 1e-10);
    }
}

TEST_CASE("degenerate marginals with tied partial sums") {
    const DiscreteDistribution p({{0.0}, {1.0}, {2.0}, {3.0}}, {0.25, 0.25, 0.25, 0.25});
    const DiscreteDistribution q({{0.5}, {1.5}, {2.5}, {3.5}}, {0.25, 0.25, 0.25, 0.25});
    const auto plan = solve_exact(metric_cost_matrix(2.0, p, q), p, q);
    const double brute = reference_transport_minimum(metric_cost_matrix(2.0, p, q), p.weights(),
                                                     q.weights());
    CHECK(std::abs(plan.cost - brute) < 1e-9);
    CHECK(plan.cost == doctest::Approx(0.25));  // each quarter moves 0.5
    check_marginals(plan, 1e-9);
}

TEST_CASE("1-d exact values equal the monotone rearrangement") {
    Rng rng(73);
    for (int t = 0; t < 50; ++t) {
        const int m = 2 + static_cast<int>(rng.next_u64() % 4);
        const int n = 2 + static_cast<int>(rng.next_u64() % 4);
        const auto src = random_dist(rng, m, 1, -2.0, 2.0);
        const auto dst = random_dist(rng, n, 1, -2.0, 2.0);
        const double exact = solve_exact(metric_cost_matrix(2.0, src, dst), src, dst).cost;
        std::vector<double> xa, xb;
        for (const auto& a : src.atoms()) xa.push_back(a[0]);
        for (const auto& b : dst.atoms()) xb.push_back(b[0]);
        const double oracle = reference_wasserstein_1d(xa, src.weights(), xb, dst.weights(), 2.0);
        CHECK(std::abs(exact - oracle) < 1e-12);
    }
}

TEST_CASE("sinkhorn behaviors") {
    SUBCASE("identical marginals with zero-diagonal cost stay near zero") {
        const auto& p = three_atom_p();
        const auto c = metric_cost_matrix(2.0, p, p);
        const auto plan = solve_sinkhorn(c, p, p, 0.01);
        CHECK(plan.converged);
        CHECK(plan.cost <= 0.01 * std::log(3.0) + 1e-6);
        check_marginals(plan, 1e-6);
    }
    SUBCASE("small epsilon approaches the exact optimum") {
        const auto c = metric_cost_matrix(2.0, three_atom_p(), three_atom_q());
        const auto plan = solve_sinkhorn(c, three_atom_p(), three_atom_q(), 1e-3, 200000);
        CHECK(plan.cost >= 0.6 - 1e-9);
        CHECK(plan.cost <= 0.61);
    }
    SUBCASE("large epsilon yields the product coupling") {
        Rng rng(79);
        const auto src = random_dist(rng, 3, 2, -1.0, 1.0);
        const auto dst = random_dist(rng, 4, 2, -1.0, 1.0);
        const auto c = metric_cost_matrix(2.0, src, dst);
        const auto plan = solve_sinkhorn(c, src, dst, 10.0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 4; ++j)
                CHECK(std::abs(plan.coupling(i, j) -
                               src.weights()[static_cast<std::size_t>(i)] *
                                   dst.weights()[static_cast<std::size_t>(j)]) <= 1e-2);
    }
    SUBCASE("returned plan is a feasible coupling with consistent cost") {
        // moderate epsilon: the scaling iteration reaches the 1e-6
        // violation target quickly (small epsilon decays only like 1/t
        // on instances whose optimal plan is sparse)
        const auto c = metric_cost_matrix(2.0, three_atom_p(), three_atom_q());
        const auto plan = solve_sinkhorn(c, three_atom_p(), three_atom_q(), 0.5);
        CHECK(plan.converged);
        check_marginals(plan, 1e-9);  // rounding makes feasibility exact
        double inner = 0.0;
        for (int i = 0; i < c.rows(); ++i)
            for (int j = 0; j < c.cols(); ++j) {
                CHECK(plan.coupling(i, j) >= 0.0);
                inner += plan.coupling(i, j) * c(i, j);
            }
        CHECK(std::abs(inner - plan.cost) < 1e-10);
        CHECK(plan.iteration_violation_l1 <= 1e-6);
    }
    SUBCASE("max_iter exhaustion is reported, plan still feasible") {
        const auto c = metric_cost_matrix(2.0, three_atom_p(), three_atom_q());
        const auto plan = solve_sinkhorn(c, three_atom_p(), three_atom_q(), 1e-3, 5);
        CHECK_FALSE(plan.converged);
        CHECK(plan.iteration_violation_l1 > 1e-6);
        check_marginals(plan, 1e-9);
    }
    SUBCASE("log-domain updates survive large cost scales") {
        // plain-domain scaling would underflow exp(-C/eps) here
        const auto c0 = metric_cost_matrix(2.0, three_atom_p(), three_atom_q());
        Matrix c(c0.rows(), c0.cols());
        for (int i = 0; i < c.rows(); ++i)
            for (int j = 0; j < c.cols(); ++j) c(i, j) = 100.0 * c0(i, j);
        const auto plan = solve_sinkhorn(c, three_atom_p(), three_atom_q(), 0.05, 200000);
        CHECK(std::isfinite(plan.cost));
        CHECK(plan.cost == doctest::Approx(60.0).epsilon(0.02));
    }
}

TEST_CASE("wasserstein_p is a metric") {
    CHECK(wasserstein_p(DiscreteDistribution::dirac({0.0}), DiscreteDistribution::dirac({1.0}),
                        2.0) == doctest::Approx(1.0));
    const double w2sq = wasserstein_p(three_atom_p(), three_atom_q(), 2.0);
    CHECK(w2sq * w2sq == doctest::Approx(0.6).epsilon(1e-12));

    Rng rng(83);
    // 200 random triples across the two orders
    for (int t = 0; t < 100; ++t) {
        const int dim = 1 + static_cast<int>(rng.next_u64() % 2);
        const auto a = random_dist(rng, 3, dim, -1.0, 1.0);
        const auto b = random_dist(rng, 4, dim, -1.0, 1.0);
        const auto c = random_dist(rng, 3, dim, -1.0, 1.0);
        for (double order : {1.0, 2.0}) {
            const double ab = wasserstein_p(a, b, order);
            const double ba = wasserstein_p(b, a, order);
            CHECK(std::abs(ab - ba) < 1e-9);
            CHECK(wasserstein_p(a, a, order) <= 1e-9);
            CHECK(wasserstein_p(a, c, order) <= ab + wasserstein_p(b, c, order) + 1e-9);
        }
    }
}

TEST_CASE("wasserstein_bregman properties") {
    SUBCASE("squared_l2 ground cost reduces to W2 squared") {
        Rng rng(89);
        for (int t = 0; t < 30; ++t) {
            const int dim = 1 + static_cast<int>(rng.next_u64() % 3);
            const auto g = make_builtin("squared_l2", dim);
            const auto a = random_dist(rng, 2 + static_cast<int>(rng.next_u64() % 4), dim, -1.0,
                                       1.0);
            const auto b = random_dist(rng, 2 + static_cast<int>(rng.next_u64() % 4), dim, -1.0,
                                       1.0);
            const double wb = wasserstein_bregman(g, a, b);
            const double w2 = wasserstein_p(a, b, 2.0);
            CHECK(std::abs(wb - w2 * w2) < 1e-9);
        }
    }
    SUBCASE("identical distributions cost nothing") {
        const auto g = make_builtin("neg_entropy", 1);
        const DiscreteDistribution p({{1.0}, {2.0}}, {0.4, 0.6});
        CHECK(wasserstein_bregman(g, p, p) <= 1e-12);
    }
    SUBCASE("two Diracs reproduce the raw divergence bit-for-bit") {
        const auto g = make_builtin("neg_entropy", 1);
        const auto a = DiscreteDistribution::dirac({1.0});
        const auto b = DiscreteDistribution::dirac({2.0});
        CHECK(wasserstein_bregman(g, a, b) == bregman_value(g, {1.0}, {2.0}));
    }
    SUBCASE("asymmetry witness") {
        const auto g = make_builtin("neg_entropy", 1);
        const auto a = DiscreteDistribution::dirac({1.0});
        const auto b = DiscreteDistribution::dirac({2.0});
        CHECK(std::abs(wasserstein_bregman(g, a, b) - wasserstein_bregman(g, b, a)) > 1e-3);
    }
}

TEST_CASE("decomposition into distorted W2 plus penalty") {
    SUBCASE("self-conjugate generator collapses the penalty") {
        const auto half = make_custom(
            "half_squared_l2", 1, [](const Vector& x) { return 0.5 * x[0] * x[0]; },
            [](const Vector& x) { return x; },
            [](const Vector&) { return Matrix::identity(1); }, Domain::full_space, 1.0, 1.0, 0.0,
            [](const Vector& y) { return y; });
        const auto dec = decompose(half, three_atom_q(), three_atom_p());
        CHECK(std::abs(dec.p_term) < 1e-12);
        const double w2 = wasserstein_p(three_atom_q(), three_atom_p(), 2.0);
        CHECK(dec.d_term == doctest::Approx(0.5 * w2 * w2).epsilon(1e-12));
        CHECK(std::abs(dec.total - wasserstein_bregman(half, three_atom_q(), three_atom_p())) <
              1e-8);
    }
    SUBCASE("squared_l2 doubles the pushforward atoms and totals 0.6") {
        const auto g = make_builtin("squared_l2", 1);
        const auto dec = decompose(g, three_atom_q(), three_atom_p());
        CHECK(dec.total == doctest::Approx(0.6).epsilon(1e-9));
        CHECK(std::abs(dec.d_term + dec.p_term -
                       wasserstein_bregman(g, three_atom_q(), three_atom_p())) <= 1e-8);
    }
    SUBCASE("random instances for the exponential generator") {
        Rng rng(97);
        const auto g = make_builtin("exponential", 2);
        for (int t = 0; t < 20; ++t) {
            const auto q = random_dist(rng, 4, 2, -1.0, 1.0);
            const auto p = random_dist(rng, 4, 2, -1.0, 1.0);
            const auto dec = decompose(g, q, p);
            CHECK(std::abs(dec.total - wasserstein_bregman(g, q, p)) <= 1e-8);
        }
    }
}

TEST_CASE("distribution construction merges duplicates and validates") {
    const DiscreteDistribution merged({{1.0}, {1.0}, {2.0}}, {0.25, 0.25, 0.5});
    CHECK(merged.size() == 2);
    CHECK(merged.weights()[0] == doctest::Approx(0.5));
    CHECK_THROWS_AS(DiscreteDistribution({{1.0}}, {0.5}), std::invalid_argument);
    CHECK_THROWS_AS(DiscreteDistribution({{1.0}, {2.0}}, {1.5, -0.5}), std::invalid_argument);
    const auto u = DiscreteDistribution::uniform_on({{0.0}, {1.0}, {2.0}});
    CHECK(u.weights()[1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("size cap on the exact solver") {
    // m*n must stay within 1e6
    Vector w(1001, 1.0 / 1001.0);
    std::vector<Vector> atoms;
    for (int i = 0; i < 1001; ++i) atoms.push_back({static_cast<double>(i)});
    const DiscreteDistribution big(atoms, w);
    CHECK_THROWS_AS(solve_exact(Matrix(1001, 1001), big, big), std::invalid_argument);
}

}  // TEST_SUITE

#include <cmath>

#include "doctest.h"

#include "breg/divergence.hpp"
#include "breg/rng.hpp"
#include "support/test_support.hpp"

using namespace breg;
using breg::test::random_interior_simplex;
using breg::test::random_vector;

namespace {

// direct KL evaluation, the test oracle for the three-term formula
double kl_direct(const Vector& x, const Vector& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] > 0.0) s += x[i] * std::log(x[i] / y[i]);
    return s;
}

ConvexGenerator scaled_half_l2(int d) {
    return make_custom(
        "half_squared_l2", d,
        [](const Vector& x) {
            double s = 0.0;
            for (double v : x) s += 0.5 * v * v;
            return s;
        },
        [](const Vector& x) { return x; },
        [d](const Vector&) { return Matrix::identity(d); }, Domain::full_space, 1.0, 1.0, 0.0,
        [](const Vector& y) { return y; });
}

}  // namespace

TEST_SUITE("divergence") {

TEST_CASE("frozen values from direct evaluation") {
    const auto ent = make_builtin("neg_entropy", 2);
    CHECK(bregman_value(ent, {0.5, 0.5}, {0.5, 0.5}) == 0.0);

    const double expected = kl_direct({0.5, 0.5}, {0.25, 0.75});  // = 0.5 ln(4/3)
    CHECK(expected == doctest::Approx(0.5 * std::log(4.0 / 3.0)).epsilon(1e-15));
    CHECK(bregman_value(ent, {0.5, 0.5}, {0.25, 0.75}) ==
          doctest::Approx(expected).epsilon(1e-13));
    CHECK(bregman_value(ent, {0.5, 0.5}, {0.25, 0.75}) ==
          doctest::Approx(0.143841).epsilon(1e-5));

    // Itakura-Saito in one dimension: x/y - log(x/y) - 1
    const auto is = make_builtin("itakura_saito", 1);
    const double is_expected = 2.0 / 1.0 - std::log(2.0 / 1.0) - 1.0;
    CHECK(bregman_value(is, {2.0}, {1.0}) == doctest::Approx(is_expected).epsilon(1e-14));
    CHECK(is_expected == doctest::Approx(0.306853).epsilon(1e-5));
}

TEST_CASE("three-term formula equals the KL shortcut on the simplex") {
    Rng rng(41);
    const auto ent4 = make_builtin("neg_entropy", 4);
    for (int t = 0; t < 100; ++t) {
        const Vector x = random_interior_simplex(rng, 4);
        const Vector y = random_interior_simplex(rng, 4);
        CHECK(std::abs(bregman_value(ent4, x, y) - kl_direct(x, y)) < 1e-12);
    }
}

TEST_CASE("zero weights: finite in the first slot, rejected in the second") {
    const auto ent = make_builtin("neg_entropy", 2);
    // 0 log 0 = 0 and the linear term stays finite
    CHECK(bregman_value(ent, {0.0, 1.0}, {0.5, 0.5}) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
    // positive mass against a zero second-argument weight is infinite: error
    CHECK_THROWS_AS(bregman_value(ent, {0.5, 0.5}, {0.0, 1.0}), std::domain_error);
}

TEST_CASE("nonnegativity and identity of indiscernibles") {
    Rng rng(43);
    const std::vector<std::string> names{"squared_l2", "neg_entropy", "itakura_saito",
                                         "exponential"};
    for (const auto& name : names) {
        const bool positive = name == "neg_entropy" || name == "itakura_saito";
        for (int t = 0; t < 1000; ++t) {
            const int d = 1 + static_cast<int>(rng.next_u64() % 3);
            const auto g = make_builtin(name, d);
            const Vector x = random_vector(rng, d, positive ? 0.05 : -2.0, 2.0);
            const Vector y = random_vector(rng, d, positive ? 0.05 : -2.0, 2.0);
            CHECK(bregman_value(g, x, y) >= -1e-12);
            CHECK(bregman_value(g, x, x) <= 1e-12);
        }
    }
}

TEST_CASE("asymmetry witness for neg_entropy") {
    const auto ent = make_builtin("neg_entropy", 2);
    const Vector x{0.5, 0.5}, y{0.25, 0.75};
    CHECK(std::abs(bregman_value(ent, x, y) - bregman_value(ent, y, x)) > 1e-3);
}

TEST_CASE("convexity in the first argument") {
    Rng rng(47);
    const auto ent = make_builtin("neg_entropy", 3);
    for (int t = 0; t < 200; ++t) {
        const Vector x1 = random_vector(rng, 3, 0.05, 2.0);
        const Vector x2 = random_vector(rng, 3, 0.05, 2.0);
        const Vector y = random_vector(rng, 3, 0.05, 2.0);
        const double lam = rng.next_unit();
        Vector mix(3);
        for (int i = 0; i < 3; ++i)
            mix[static_cast<std::size_t>(i)] = lam * x1[static_cast<std::size_t>(i)] +
                                               (1.0 - lam) * x2[static_cast<std::size_t>(i)];
        CHECK(bregman_value(ent, mix, y) <=
              lam * bregman_value(ent, x1, y) + (1.0 - lam) * bregman_value(ent, x2, y) + 1e-12);
    }
}

TEST_CASE("duality gap vanishes for the self-conjugate generator") {
    const auto half = scaled_half_l2(2);
    CHECK(duality_gap(half, {1.0, 0.0}, {0.0, 1.0}) < 1e-12);
}

TEST_CASE("neg_entropy conjugate has the exponential closed form") {
    // phi*(y) = sum exp(y_i - 1); validate the inverse-based evaluation
    const auto ent = make_builtin("neg_entropy", 2);
    Rng rng(53);
    for (int t = 0; t < 20; ++t) {
        const Vector p = random_vector(rng, 2, 0.1, 2.0);
        const Vector y = ent.gradient(p);
        const Vector x = legendre_gradient_inverse(ent, y);
        const double conj = dot(y, x) - ent.value(x);
        double closed = 0.0;
        for (double v : y) closed += std::exp(v - 1.0);
        CHECK(conj == doctest::Approx(closed).epsilon(1e-12));
    }
}

TEST_CASE("duality gap stays below 1e-8 on random interior pairs") {
    Rng rng(59);
    const std::vector<std::string> names{"squared_l2", "neg_entropy", "itakura_saito",
                                         "exponential"};
    for (const auto& name : names) {
        const bool positive = name == "neg_entropy" || name == "itakura_saito";
        for (int t = 0; t < 100; ++t) {
            const int d = 1 + static_cast<int>(rng.next_u64() % 3);
            const auto g = make_builtin(name, d);
            const Vector p = random_vector(rng, d, positive ? 0.1 : -1.5, positive ? 2.0 : 1.5);
            const Vector q = random_vector(rng, d, positive ? 0.1 : -1.5, positive ? 2.0 : 1.5);
            CHECK(duality_gap(g, p, q) <= 1e-8);
        }
    }
}

TEST_CASE("bias-variance split is exact") {
    const auto sq1 = make_builtin("squared_l2", 1);
    SUBCASE("hand-computed two-sample case") {
        const std::vector<Vector> samples{{0.0}, {2.0}};
        const auto bv = bias_variance_check(sq1, samples, {0.0});
        CHECK(bv.lhs == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(bv.rhs == doctest::Approx(2.0).epsilon(1e-15));
    }
    SUBCASE("degenerate estimator") {
        const std::vector<Vector> samples{{0.7}};
        const auto bv = bias_variance_check(sq1, samples, {0.7});
        CHECK(bv.lhs == 0.0);
        CHECK(bv.rhs == 0.0);
    }
    SUBCASE("neg_entropy two-dimensional example") {
        const auto ent = make_builtin("neg_entropy", 2);
        const std::vector<Vector> samples{{0.4, 0.6}, {0.6, 0.4}};
        const auto bv = bias_variance_check(ent, samples, {0.5, 0.5});
        CHECK(std::abs(bv.lhs - bv.rhs) <= 1e-10);
    }
    SUBCASE("random sample sets") {
        Rng rng(61);
        const auto ent = make_builtin("neg_entropy", 3);
        for (int t = 0; t < 100; ++t) {
            std::vector<Vector> samples;
            const int count = 2 + static_cast<int>(rng.next_u64() % 6);
            for (int k = 0; k < count; ++k) samples.push_back(random_vector(rng, 3, 0.05, 2.0));
            const auto bv = bias_variance_check(ent, samples, random_vector(rng, 3, 0.05, 2.0));
            CHECK(std::abs(bv.lhs - bv.rhs) <= 1e-10);
        }
    }
    SUBCASE("empty sample list rejected") {
        CHECK_THROWS_AS(bias_variance_check(sq1, std::vector<Vector>{}, {0.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("Fisher identity across the three families") {
    SUBCASE("bernoulli at 1/2 has information 4") {
        const auto fc = fisher_identity_check(ExponentialFamily::bernoulli, 0.5);
        CHECK(fc.rhs == doctest::Approx(4.0).epsilon(1e-14));
        CHECK(std::abs(fc.lhs - fc.rhs) <= 1e-5);
    }
    SUBCASE("unit-variance gaussian is flat") {
        const auto fc = fisher_identity_check(ExponentialFamily::gaussian_unit_var, 0.0);
        CHECK(fc.rhs == 1.0);
        CHECK(std::abs(fc.lhs - fc.rhs) <= 1e-5);
    }
    SUBCASE("poisson at 3 has information 1/3") {
        const auto fc = fisher_identity_check(ExponentialFamily::poisson_truncated, 3.0);
        CHECK(fc.rhs == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
        CHECK(std::abs(fc.lhs - fc.rhs) <= 1e-5);
    }
    SUBCASE("boundary means rejected") {
        CHECK_THROWS_AS(fisher_identity_check(ExponentialFamily::bernoulli, 1.0),
                        std::domain_error);
        CHECK_THROWS_AS(fisher_identity_check(ExponentialFamily::poisson_truncated, 0.0),
                        std::domain_error);
    }
}

TEST_CASE("DivergenceValue carries its context") {
    const auto ent = make_builtin("neg_entropy", 2);
    const auto dv = bregman(ent, {0.5, 0.5}, {0.25, 0.75});
    CHECK(dv.generator == "neg_entropy");
    CHECK(dv.value == bregman_value(ent, {0.5, 0.5}, {0.25, 0.75}));
    CHECK(dv.first_arg[0] == 0.5);
    CHECK(dv.second_arg[1] == 0.75);
}

}  // TEST_SUITE

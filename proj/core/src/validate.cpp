#include "breg/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>

#include "breg/ambiguity.hpp"
#include "breg/asymptotics.hpp"
#include "breg/concentration.hpp"
#include "breg/divergence.hpp"
#include "breg/io.hpp"
#include "breg/learn.hpp"
#include "breg/parallel.hpp"
#include "breg/reference.hpp"
#include "breg/rng.hpp"
#include "breg/stats.hpp"
#include "breg/transport.hpp"

namespace breg {

namespace {

// simulation sizes; the quick preset trades statistical resolution for
// runtime, so its purely statistical tolerances are widened to keep the
// same confidence
struct Sizes {
    int law_n, law_M, law_K;
    double law_ks_bound, symmetry_ks_bound;
    int tail_M;
    int cov_reps, cov_n, cov_K;
    double cov_lo, cov_hi;
    int bf_instances, oned_instances, wb_instances, decomp_instances, duality_pairs,
        bv_sets, tilt_instances, grid_instances, grid_steps;
    int fit_steps;
};

Sizes full_sizes() {
    Sizes s{};
    s.law_n = 5000;
    s.law_M = 20000;
    s.law_K = 1000000;
    s.law_ks_bound = 0.02;
    s.symmetry_ks_bound = 0.03;
    s.tail_M = 50000;
    s.cov_reps = 2000;
    s.cov_n = 2000;
    s.cov_K = 10000;
    s.cov_lo = 0.93;
    s.cov_hi = 0.97;
    s.bf_instances = 200;
    s.oned_instances = 50;
    s.wb_instances = 100;
    s.decomp_instances = 100;
    s.duality_pairs = 100;
    s.bv_sets = 100;
    s.tilt_instances = 200;
    s.grid_instances = 5;
    s.grid_steps = 1000;
    s.fit_steps = 400;
    return s;
}

Sizes quick_sizes() {
    Sizes s = full_sizes();
    s.law_n = 3000;
    s.law_M = 8000;
    s.law_K = 200000;
    s.law_ks_bound = 0.025;  // KS noise ~ 1.36 sqrt(1/M + 1/K)
    s.symmetry_ks_bound = 0.03;
    s.tail_M = 10000;
    s.cov_reps = 400;
    s.cov_n = 1000;
    s.cov_K = 4000;
    s.cov_lo = 0.905;  // binomial 3 sigma at 400 replications
    s.cov_hi = 0.985;
    s.bf_instances = 60;
    s.oned_instances = 20;
    s.wb_instances = 30;
    s.decomp_instances = 25;
    s.duality_pairs = 25;
    s.bv_sets = 30;
    s.tilt_instances = 40;
    s.grid_instances = 2;
    s.grid_steps = 500;
    s.fit_steps = 400;
    return s;
}

class Suite {
public:
    Suite(bool quick, std::uint64_t seed)
        : sizes_(quick ? quick_sizes() : full_sizes()), seed_(seed) {}

    std::vector<CheckResult> run();

private:
    Sizes sizes_;
    std::uint64_t seed_;
    std::vector<CheckResult> results_;
    std::uint64_t next_tag_ = 1;

    std::uint64_t check_seed() { return derive_seed(seed_, 0xC0DE0000ULL + next_tag_); }

    void add(const std::string& name, double bound, const std::string& detail,
             const std::function<double()>& measure) {
        CheckResult r;
        r.name = name;
        r.bound = bound;
        r.comparison = "<=";
        r.detail = detail;
        ++next_tag_;
        const auto start = std::chrono::steady_clock::now();
        try {
            r.measured = measure();
            r.passed = r.measured <= bound;
        } catch (const std::exception& e) {
            r.passed = false;
            r.measured = std::numeric_limits<double>::quiet_NaN();
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results_.push_back(std::move(r));
    }

    void add_interval(const std::string& name, double lo, double hi, const std::string& detail,
                      const std::function<double()>& measure) {
        CheckResult r;
        r.name = name;
        r.bound = hi;
        r.lower_bound = lo;
        r.comparison = "in";
        r.detail = detail;
        ++next_tag_;
        const auto start = std::chrono::steady_clock::now();
        try {
            r.measured = measure();
            r.passed = r.measured >= lo && r.measured <= hi;
        } catch (const std::exception& e) {
            r.passed = false;
            r.measured = std::numeric_limits<double>::quiet_NaN();
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results_.push_back(std::move(r));
    }

    // instance helpers -------------------------------------------------
    static Vector random_interior_simplex(Rng& rng, int d, double floor_margin) {
        Vector w(static_cast<std::size_t>(d));
        for (double& v : w) v = -std::log(rng.next_unit());
        double s = 0.0;
        for (double v : w) s += v;
        for (double& v : w) v /= s;
        return SimplexPoint::clamped(w, floor_margin).weights();
    }

    static DiscreteDistribution random_distribution(Rng& rng, int size, int dim, double lo,
                                                    double hi) {
        std::vector<Vector> atoms;
        Vector weights;
        for (int k = 0; k < size; ++k) {
            Vector a(static_cast<std::size_t>(dim));
            for (double& v : a) v = rng.next_range(lo, hi);
            atoms.push_back(std::move(a));
            weights.push_back(0.1 + rng.next_unit());
        }
        double s = 0.0;
        for (double w : weights) s += w;
        for (double& w : weights) w /= s;
        return DiscreteDistribution(std::move(atoms), std::move(weights));
    }

    struct BuiltinSpec {
        std::string name;
        double atom_lo, atom_hi;
    };

    static const std::vector<BuiltinSpec>& builtin_specs() {
        static const std::vector<BuiltinSpec> specs{{"squared_l2", -1.0, 1.0},
                                                    {"neg_entropy", 0.2, 2.0},
                                                    {"itakura_saito", 0.2, 2.0},
                                                    {"mahalanobis", -1.0, 1.0},
                                                    {"exponential", -1.0, 1.0}};
        return specs;
    }

    static ConvexGenerator builtin_for(const BuiltinSpec& spec, int dim, Rng& rng) {
        BuiltinParams params;
        if (spec.name == "mahalanobis") {
            Matrix b(dim, dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) b(i, j) = rng.next_range(-1.0, 1.0);
            Matrix a = matmul(b, transpose(b));
            for (int i = 0; i < dim; ++i) a(i, i) += 0.5;
            params.mahalanobis_matrix = a;
        }
        return make_builtin(spec.name, dim, params);
    }

    // checks ------------------------------------------------------------
    void limit_law_checks();
    void spectrum_checks();
    void tail_checks();
    void coverage_check();
    void transport_checks();
    void decompose_checks();
    void divergence_checks();
    void learn_checks();
    void worst_case_checks();
};

void Suite::limit_law_checks() {
    const auto g = make_builtin("neg_entropy", 4);
    const SimplexPoint p = SimplexPoint::uniform(4);

    {
        const std::uint64_t s = check_seed();
        add("ks_kl_d4", sizes_.law_ks_bound,
            "KS of n*D(p,p_hat) vs MC limit CDF, neg_entropy d=4", [&, s]() {
                const auto res = empirical_law_check(g, p, sizes_.law_n, sizes_.law_M, s,
                                                     Direction::true_first, sizes_.law_K);
                return res.ks;
            });
    }
    {
        const std::uint64_t s = check_seed();
        add("ks_kl_d4_chi2_oracle", sizes_.law_ks_bound,
            "KS of 2n*KL against the chi-square(3) CDF", [&, s]() {
                Vector stats = simulate_scaled_divergence(g, p, sizes_.law_n, sizes_.law_M,
                                                          Direction::true_first, s);
                for (double& v : stats) v *= 2.0;
                return ks_one_sample(std::move(stats),
                                     [](double x) { return chi2_cdf(x, 3); });
            });
    }
    {
        const std::uint64_t s = check_seed();
        add("ks_direction_symmetry", sizes_.symmetry_ks_bound,
            "KS between n*D(p,p_hat) and n*D(p_hat,p) replicate samples", [&, s]() {
                Vector yfirst = simulate_scaled_divergence(g, p, sizes_.law_n, sizes_.law_M,
                                                           Direction::true_first, s);
                Vector zfirst = simulate_scaled_divergence(g, p, sizes_.law_n, sizes_.law_M,
                                                           Direction::empirical_first, s);
                return ks_two_sample(std::move(yfirst), std::move(zfirst));
            });
    }
}

void Suite::spectrum_checks() {
    {
        const std::uint64_t s = check_seed();
        add("spectrum_neg_entropy", 1e-9,
            "neg_entropy spectrum is 1 repeated d-1 times at 50 random p", [&, s]() {
                Rng rng(s);
                double worst = 0.0;
                for (int t = 0; t < 50; ++t) {
                    const int d = 2 + static_cast<int>(rng.next_u64() % 7);
                    const auto g = make_builtin("neg_entropy", d);
                    const Vector w = random_interior_simplex(rng, d, 0.02);
                    const SpectralLimit spec = limit_spectrum(g, SimplexPoint(w, 0.0));
                    if (spec.rank != d - 1) return 1.0;
                    for (double b : spec.eigenvalues) worst = std::max(worst, std::abs(b - 1.0));
                }
                return worst;
            });
    }
    add("spectrum_squared_l2", 1e-9, "squared_l2 spectrum at p=(1/2,1/2) is {1}", [&]() {
        const auto g = make_builtin("squared_l2", 2);
        const SpectralLimit spec = limit_spectrum(g, SimplexPoint::uniform(2));
        if (spec.rank != 1) return 1.0;
        return std::abs(spec.eigenvalues.front() - 1.0);
    });
}

void Suite::tail_checks() {
    Vector grid;
    for (int k = 1; k <= 15; ++k) grid.push_back(0.02 * static_cast<double>(k));
    const SimplexPoint p = SimplexPoint::uniform(4);

    const std::vector<std::pair<std::string, Direction>> cases{
        {"z", Direction::empirical_first}, {"y", Direction::true_first}};
    for (const std::string gen_name : {"squared_l2", "neg_entropy"}) {
        const auto g = make_builtin(gen_name, 4);
        for (const auto& [suffix, dir] : cases) {
            const std::uint64_t s = check_seed();
            add("tail_" + gen_name + "_" + suffix, 0.0,
                "max over eps grid of freq - (mcdiarmid bound + 3 sigma)", [&, g, dir, s]() {
                    const auto table = empirical_tail_check(dir, g, p, 200, sizes_.tail_M, grid, s);
                    double worst = -1.0;
                    for (const auto& row : table.rows) {
                        const double slack =
                            3.0 * std::sqrt(row.frequency * (1.0 - row.frequency) /
                                            static_cast<double>(sizes_.tail_M));
                        worst = std::max(worst, row.frequency - (row.mcdiarmid_bound + slack));
                    }
                    return worst;
                });
        }
    }
}

void Suite::coverage_check() {
    const std::uint64_t s = check_seed();
    add_interval("coverage_asymptotic", sizes_.cov_lo, sizes_.cov_hi,
                 "fraction of asymptotic 95% sets containing the true p", [&, s]() {
                     const auto g = std::make_shared<const ConvexGenerator>(
                         make_builtin("neg_entropy", 4));
                     const SimplexPoint truth = SimplexPoint::uniform(4);
                     std::vector<char> hit(static_cast<std::size_t>(sizes_.cov_reps), 0);
                     parallel_for(sizes_.cov_reps, [&](std::int64_t rep) {
                         const std::uint64_t rep_seed =
                             derive_seed(s, static_cast<std::uint64_t>(rep));
                         Rng rng(rep_seed);
                         std::vector<long> counts(4, 0);
                         for (int t = 0; t < sizes_.cov_n; ++t)
                             ++counts[static_cast<std::size_t>(
                                 rng.next_categorical(truth.weights()))];
                         const AmbiguitySet set = build_asymptotic(
                             g, counts, 0.95, sizes_.cov_K, derive_seed(rep_seed, 1));
                         hit[static_cast<std::size_t>(rep)] = contains(set, truth) ? 1 : 0;
                     });
                     double covered = 0.0;
                     for (char h : hit) covered += h;
                     return covered / static_cast<double>(sizes_.cov_reps);
                 });
}

void Suite::transport_checks() {
    {
        const std::uint64_t s = check_seed();
        add("ot_exact_bruteforce", 1e-9,
            "max |simplex solver - basic-solution enumeration| on random instances", [&, s]() {
                Rng rng(s);
                double worst = 0.0;
                for (int t = 0; t < sizes_.bf_instances; ++t) {
                    const int m = 1 + static_cast<int>(rng.next_u64() % 4);
                    const int n = 1 + static_cast<int>(rng.next_u64() % 4);
                    const DiscreteDistribution src = random_distribution(rng, m, 1, -2.0, 2.0);
                    const DiscreteDistribution dst = random_distribution(rng, n, 1, -2.0, 2.0);
                    Matrix c(src.size(), dst.size());
                    for (double& v : c.data()) v = rng.next_unit();
                    const double exact = solve_exact(c, src, dst).cost;
                    const double brute =
                        reference_transport_minimum(c, src.weights(), dst.weights());
                    worst = std::max(worst, std::abs(exact - brute));
                }
                return worst;
            });
    }
    {
        const std::uint64_t s = check_seed();
        add("ot_exact_1d_monotone", 1e-12,
            "1-d instances against the monotone-rearrangement value", [&, s]() {
                Rng rng(s);
                double worst = 0.0;
                {
                    // the fixed three-atom instance with value 0.6
                    const DiscreteDistribution p({{0.0}, {1.0}, {2.0}}, {0.5, 0.3, 0.2});
                    const DiscreteDistribution q({{0.0}, {1.0}, {2.0}}, {0.2, 0.3, 0.5});
                    const double w2sq = solve_exact(metric_cost_matrix(2.0, p, q), p, q).cost;
                    worst = std::max(worst, std::abs(w2sq - 0.6));
                }
                for (int t = 0; t < sizes_.oned_instances; ++t) {
                    const int m = 2 + static_cast<int>(rng.next_u64() % 4);
                    const int n = 2 + static_cast<int>(rng.next_u64() % 4);
                    const DiscreteDistribution src = random_distribution(rng, m, 1, -2.0, 2.0);
                    const DiscreteDistribution dst = random_distribution(rng, n, 1, -2.0, 2.0);
                    const double exact =
                        solve_exact(metric_cost_matrix(2.0, src, dst), src, dst).cost;
                    std::vector<double> xa, xb;
                    for (const auto& a : src.atoms()) xa.push_back(a[0]);
                    for (const auto& b : dst.atoms()) xb.push_back(b[0]);
                    const double oracle =
                        reference_wasserstein_1d(xa, src.weights(), xb, dst.weights(), 2.0);
                    worst = std::max(worst, std::abs(exact - oracle));
                }
                return worst;
            });
    }
    {
        const std::uint64_t s = check_seed();
        add("wb_reduces_to_w2sq", 1e-9,
            "wasserstein_bregman(squared_l2) equals wasserstein_p(.,.,2)^2", [&, s]() {
                Rng rng(s);
                double worst = 0.0;
                for (int t = 0; t < sizes_.wb_instances; ++t) {
                    const int dim = 1 + static_cast<int>(rng.next_u64() % 3);
                    const int m = 2 + static_cast<int>(rng.next_u64() % 5);
                    const int n = 2 + static_cast<int>(rng.next_u64() % 5);
                    const auto g = make_builtin("squared_l2", dim);
                    const DiscreteDistribution src = random_distribution(rng, m, dim, -1.0, 1.0);
                    const DiscreteDistribution dst = random_distribution(rng, n, dim, -1.0, 1.0);
                    const double wb = wasserstein_bregman(g, src, dst);
                    const double w2 = wasserstein_p(src, dst, 2.0);
                    worst = std::max(worst, std::abs(wb - w2 * w2));
                }
                return worst;
            });
    }
}

void Suite::decompose_checks() {
    for (const auto& spec : builtin_specs()) {
        const std::uint64_t s = check_seed();
        add("decompose_" + spec.name, 1e-8,
            "max |d_term + p_term - wasserstein_bregman| on random instances", [&, spec, s]() {
                Rng rng(s);
                double worst = 0.0;
                for (int t = 0; t < sizes_.decomp_instances; ++t) {
                    const int dim = 1 + static_cast<int>(rng.next_u64() % 3);
                    const auto g = builtin_for(spec, dim, rng);
                    const int m = 2 + static_cast<int>(rng.next_u64() % 3);
                    const int n = 2 + static_cast<int>(rng.next_u64() % 3);
                    const DiscreteDistribution q =
                        random_distribution(rng, m, dim, spec.atom_lo, spec.atom_hi);
                    const DiscreteDistribution pt =
                        random_distribution(rng, n, dim, spec.atom_lo, spec.atom_hi);
                    const Decomposition dec = decompose(g, q, pt);
                    const double direct = wasserstein_bregman(g, q, pt);
                    worst = std::max(worst, std::abs(dec.total - direct));
                }
                return worst;
            });
    }
}

void Suite::divergence_checks() {
    for (const auto& spec : builtin_specs()) {
        const std::uint64_t s = check_seed();
        add("duality_" + spec.name, 1e-8, "duality gap on random interior pairs", [&, spec, s]() {
            Rng rng(s);
            double worst = 0.0;
            for (int t = 0; t < sizes_.duality_pairs; ++t) {
                const int dim = 1 + static_cast<int>(rng.next_u64() % 3);
                const auto g = builtin_for(spec, dim, rng);
                Vector p(static_cast<std::size_t>(dim)), q(static_cast<std::size_t>(dim));
                for (double& v : p) v = rng.next_range(spec.atom_lo, spec.atom_hi);
                for (double& v : q) v = rng.next_range(spec.atom_lo, spec.atom_hi);
                worst = std::max(worst, duality_gap(g, p, q));
            }
            return worst;
        });
    }
    {
        const std::uint64_t s = check_seed();
        add("bias_variance", 1e-10, "exactness of the decomposition on random sample sets",
            [&, s]() {
                Rng rng(s);
                double worst = 0.0;
                const auto& specs = builtin_specs();
                for (int t = 0; t < sizes_.bv_sets; ++t) {
                    const auto& spec = specs[static_cast<std::size_t>(t) % specs.size()];
                    const int dim = 1 + static_cast<int>(rng.next_u64() % 3);
                    const auto g = builtin_for(spec, dim, rng);
                    const int count = 2 + static_cast<int>(rng.next_u64() % 7);
                    std::vector<Vector> samples;
                    for (int k = 0; k < count; ++k) {
                        Vector v(static_cast<std::size_t>(dim));
                        for (double& x : v) x = rng.next_range(spec.atom_lo, spec.atom_hi);
                        samples.push_back(std::move(v));
                    }
                    Vector theta(static_cast<std::size_t>(dim));
                    for (double& x : theta) x = rng.next_range(spec.atom_lo, spec.atom_hi);
                    const BiasVariance bv = bias_variance_check(g, samples, theta);
                    worst = std::max(worst, std::abs(bv.lhs - bv.rhs));
                }
                return worst;
            });
    }
    add("fisher_bernoulli", 1e-5, "Fisher identity at mu = 0.1 .. 0.9", [&]() {
        double worst = 0.0;
        for (int k = 1; k <= 9; ++k) {
            const FisherCheck fc =
                fisher_identity_check(ExponentialFamily::bernoulli, 0.1 * static_cast<double>(k));
            worst = std::max(worst, std::abs(fc.lhs - fc.rhs));
        }
        return worst;
    });
    add("fisher_gaussian", 1e-5, "Fisher identity for the unit-variance gaussian", [&]() {
        double worst = 0.0;
        for (double mu : {-1.0, 0.0, 2.0}) {
            const FisherCheck fc = fisher_identity_check(ExponentialFamily::gaussian_unit_var, mu);
            worst = std::max(worst, std::abs(fc.lhs - fc.rhs));
        }
        return worst;
    });
    add("fisher_poisson", 1e-5, "Fisher identity for the truncated poisson", [&]() {
        double worst = 0.0;
        for (double mu : {1.0, 3.0, 10.0}) {
            const FisherCheck fc =
                fisher_identity_check(ExponentialFamily::poisson_truncated, mu);
            worst = std::max(worst, std::abs(fc.lhs - fc.rhs));
        }
        return worst;
    });
}

void Suite::learn_checks() {
    // shared realizable instance: 1-d location-scale family, target built
    // from the same base sample at theta_dagger
    const std::uint64_t base_seed = check_seed();
    PushforwardFamily family;
    {
        Rng rng(base_seed);
        for (int k = 0; k < 16; ++k) family.base_sample.push_back({rng.next_normal()});
    }
    const Theta truth{{0.7}, {1.3}};
    const auto g1 = make_builtin("squared_l2", 1);
    const DiscreteDistribution target = pushforward(family, truth);
    const Theta start{{0.3}, {1.0}};

    FitResult realizable;
    add("learn_realizable_objective", 1e-6, "final objective of the realizable fit", [&]() {
        realizable = fit(g1, target, family, start, sizes_.fit_steps, 0.5);
        return realizable.trace.back();
    });
    add("learn_realizable_recovery", 1e-3, "parameter recovery of the realizable fit", [&]() {
        if (realizable.trace.empty()) return 1.0;
        return std::max(std::abs(realizable.theta.loc[0] - truth.loc[0]),
                        std::abs(realizable.theta.scale[0] - truth.scale[0]));
    });

    // non-realizable data, two generators
    const DiscreteDistribution q2({{1.0}, {2.2}}, {0.5, 0.5});
    PushforwardFamily fam2;
    fam2.base_sample = {{-0.5}, {0.5}};
    add("learn_trace_monotone", 0.0, "max increase along any fit trace", [&]() {
        double worst = -1.0;
        auto scan = [&](const Vector& trace) {
            for (std::size_t i = 1; i < trace.size(); ++i)
                worst = std::max(worst, trace[i] - trace[i - 1]);
        };
        scan(realizable.trace);
        const auto fit_sq = fit(g1, q2, fam2, Theta{{1.4}, {0.8}}, 120, 0.3);
        scan(fit_sq.trace);
        const auto g_ent = make_builtin("neg_entropy", 1);
        const auto fit_ent = fit(g_ent, q2, fam2, Theta{{1.4}, {0.8}}, 120, 0.3);
        scan(fit_ent.trace);
        return worst;
    });

    {
        const std::uint64_t s = check_seed();
        add("learn_lipschitz_stable", 2.0,
            "ratio drift of the local Lipschitz probe between radius r and r/2", [&, s]() {
                const Theta at{{1.4}, {0.8}};
                const double r1 = lipschitz_probe(g1, q2, fam2, at, 0.05, 200, s);
                const double r2 = lipschitz_probe(g1, q2, fam2, at, 0.025, 200, s);
                if (!std::isfinite(r1) || !std::isfinite(r2) || r1 <= 0.0 || r2 <= 0.0)
                    return std::numeric_limits<double>::infinity();
                return std::max(r1 / r2, r2 / r1);
            });
    }
}

void Suite::worst_case_checks() {
    {
        const std::uint64_t s = check_seed();
        add("worst_case_kl_tilt", 1e-6,
            "dual bisection vs exponential-tilting closed form", [&, s]() {
                Rng rng(s);
                double worst = 0.0;
                for (int t = 0; t < sizes_.tilt_instances; ++t) {
                    const int d = 3 + static_cast<int>(rng.next_u64() % 2);
                    auto g = std::make_shared<const ConvexGenerator>(
                        make_builtin("neg_entropy", d));
                    const Vector center = random_interior_simplex(rng, d, 0.05);
                    Vector c(static_cast<std::size_t>(d));
                    for (double& v : c) v = rng.next_range(-1.0, 1.0);
                    const double radius = rng.next_range(0.005, 0.03);
                    AmbiguitySet set{SimplexPoint(center, 0.0), g, radius,
                                     ConcentrationProvenance{0.5, BoundForm::mcdiarmid},
                                     1000, d};
                    const WorstCase wc = worst_case_linear(set, c);
                    const KlTiltResult tilt = reference_kl_tilt_worst_case(center, c, radius);
                    double diff = std::abs(wc.value - tilt.value);
                    for (int i = 0; i < d; ++i)
                        diff = std::max(diff, std::abs(wc.maximizer[i] -
                                                       tilt.maximizer[static_cast<std::size_t>(i)]));
                    worst = std::max(worst, diff);
                }
                return worst;
            });
    }
    {
        const std::uint64_t s = check_seed();
        add("worst_case_grid", 1e-4, "dual bisection vs dense grid search on d=3 instances",
            [&, s]() {
                Rng rng(s);
                auto g = std::make_shared<const ConvexGenerator>(make_builtin("neg_entropy", 3));
                double worst = 0.0;
                for (int t = 0; t < sizes_.grid_instances; ++t) {
                    const Vector center = random_interior_simplex(rng, 3, 0.1);
                    Vector c(3);
                    for (double& v : c) v = rng.next_range(0.0, 1.0);
                    const double radius = 0.02;
                    AmbiguitySet set{SimplexPoint(center, 0.0), g, radius,
                                     ConcentrationProvenance{0.5, BoundForm::mcdiarmid},
                                     1000, 3};
                    const WorstCase wc = worst_case_linear(set, c);
                    const double grid = reference_grid_worst_case_kl_d3(
                        center, c, radius, g->delta(), sizes_.grid_steps);
                    worst = std::max(worst, std::abs(wc.value - grid));
                }
                return worst;
            });
    }
}

std::vector<CheckResult> Suite::run() {
    results_.clear();
    limit_law_checks();
    spectrum_checks();
    tail_checks();
    coverage_check();
    transport_checks();
    decompose_checks();
    divergence_checks();
    learn_checks();
    worst_case_checks();
    return results_;
}

}  // namespace

std::vector<CheckResult> run_validation(bool quick, std::uint64_t seed) {
    Suite suite(quick, seed);
    return suite.run();
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

std::string json_number(double v) {
    if (!std::isfinite(v)) return "null";
    return format_number(v, 17);
}

}  // namespace

std::string render_report_json(const std::vector<CheckResult>& results, std::uint64_t seed,
                               bool quick, bool include_timings) {
    std::ostringstream out;
    int failures = 0;
    for (const auto& r : results)
        if (!r.passed) ++failures;
    out << "{\n";
    out << "  \"suite\": \"" << (quick ? "quick" : "full") << "\",\n";
    out << "  \"seed\": " << seed << ",\n";
    out << "  \"total_checks\": " << results.size() << ",\n";
    out << "  \"failures\": " << failures << ",\n";
    out << "  \"passed\": " << (failures == 0 ? "true" : "false") << ",\n";
    out << "  \"checks\": [\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        out << "    {\"name\": \"" << json_escape(r.name) << "\", \"passed\": "
            << (r.passed ? "true" : "false") << ", \"measured\": " << json_number(r.measured)
            << ", \"comparison\": \"" << r.comparison << "\", \"bound\": " << json_number(r.bound);
        if (r.comparison == "in") out << ", \"lower_bound\": " << json_number(r.lower_bound);
        out << ", \"detail\": \"" << json_escape(r.detail) << "\"";
        if (include_timings) out << ", \"seconds\": " << json_number(r.seconds);
        out << "}" << (i + 1 < results.size() ? "," : "") << "\n";
    }
    out << "  ]\n";
    out << "}\n";
    return out.str();
}

}  // namespace breg

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "test_util.hpp"
#include "theta/arithmetic.hpp"

using namespace theta;
using testutil::Rng;

TEST_CASE("is_infinitely_divisible: worked examples") {
    CHECK(is_infinitely_divisible(make_params(1, 1, 0, 0, 0.3)));
    CHECK_FALSE(is_infinitely_divisible(make_params(2, 1, 0, 0, 0.5)));
    CHECK(is_infinitely_divisible(make_params(0, 0, 3, 3, -1)));
    CHECK(is_infinitely_divisible(make_params(1, 1, 0, 0, 0.0)));
    CHECK_FALSE(is_infinitely_divisible(
        ThetaParams{2, 1, 0, 0, KappaSpec::boundary_multiple(1.0, 1)}));
    CHECK_THROWS_AS(is_infinitely_divisible(make_params(1, 2, 0, 0, 0.5)), DomainError);
}

TEST_CASE("nth_root: worked examples") {
    const NthRoot r = nth_root(make_params(1, 1, 0, 0, -0.25), 2);
    CHECK(r.root.sigma == 0.5);
    CHECK(r.root.sigma_prime == 0.5);
    CHECK(resolve_kappa(r.root) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.shift.k == 1);

    const NthRoot g = nth_root(make_params(3, 3, 1.5, 1.5, 1.0), 4);
    CHECK(g.root.sigma == 0.75);
    CHECK(g.root.beta == 0.375);
    CHECK(resolve_kappa(g.root) == 1.0);
    CHECK(g.shift.k == 0);

    CHECK_THROWS_AS(nth_root(make_params(2, 1, 0, 0, 0.5), 4), NotInfinitelyDivisible);
    CHECK_THROWS_AS(nth_root(make_params(1, 1, 0, 0, 0.5), 0), DomainError);
}

TEST_CASE("nth_root: round trip for random divisible tuples") {
    Rng rng(41);
    for (int i = 0; i < 300; ++i) {
        const ThetaParams p = canonicalize(
            rng.pick(4) ? testutil::random_gauss_z2(rng) : testutil::random_haar_line(rng));
        for (unsigned n : {2u, 3u, 5u, 17u}) {
            const NthRoot r = nth_root(p, n);
            ThetaParams acc = point_mass(GroupElement{0.0, 0});
            for (unsigned j = 0; j < n; ++j) acc = convolve(acc, r.root);
            acc = convolve(acc, point_mass(r.shift));
            CHECK(testutil::param_dev(acc, p) <= 1e-12);
        }
    }
}

TEST_CASE("is_indecomposable: worked examples") {
    CHECK(is_indecomposable(ThetaParams{2, 1, 0, 0, KappaSpec::boundary_multiple(1.0, 1)}));
    CHECK_FALSE(is_indecomposable(make_params(2, 1, 0, 0, 0.5)));
    CHECK_FALSE(is_indecomposable(make_params(1, 1, 0, 0, 0.5)));
    CHECK_FALSE(is_indecomposable(make_params(0, 0, 3, 3, -1)));
    CHECK_THROWS_AS(is_indecomposable(make_params(1, 2, 0, 0, 0.5)), DomainError);
}

TEST_CASE("has_indecomposable_factor: worked examples") {
    CHECK(has_indecomposable_factor(make_params(1, 1, 0, 0, 0.0)));
    CHECK_FALSE(has_indecomposable_factor(make_params(0, 0, 2, 2, 0.0)));
    CHECK(has_indecomposable_factor(
        ThetaParams{2, 1, 0, 0, KappaSpec::boundary_multiple(1.0, 1)}));
    CHECK(has_indecomposable_factor(make_params(2, 1, 0, 0, 0.5)));
    CHECK_FALSE(has_indecomposable_factor(make_params(1, 1, 0, 0, 0.5)));
    CHECK_FALSE(has_indecomposable_factor(make_params(0, 0, 3, 3, -1)));
}

TEST_CASE("max_gaussian_factor: worked example is exact") {
    const ThetaParams p = make_params(2, 1, 0, 0, 0.5);
    const Factorization f = max_gaussian_factor(p);
    REQUIRE(f.factors.size() == 1);
    REQUIRE(f.gaussian.has_value());
    CHECK(std::abs(f.gaussian->a - 2.0 / 3.0) <= 1e-15);
    const ThetaParams& nu = f.factors.front();
    CHECK(nu.sigma == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(nu.sigma_prime == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(std::sqrt(nu.sigma_prime / nu.sigma) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(classify(nu) == Classification::Boundary);
    CHECK(is_indecomposable(nu));
    CHECK(testutil::param_dev(reconvolve(f), p) <= 1e-12);

    CHECK_THROWS_AS(
        max_gaussian_factor(ThetaParams{2, 1, 0, 0, KappaSpec::boundary_multiple(1.0, 1)}),
        NotInterior);
    CHECK_THROWS_AS(max_gaussian_factor(make_params(1, 1, 0, 0, 0.5)), NotInterior);
}

TEST_CASE("max_gaussian_factor: shifted example") {
    ThetaParams p{2, 1, 0, 1, KappaSpec{}};
    p.kappa = KappaSpec::explicit_value(0.9 * std::exp(log_boundary_bound(p)));
    const Factorization f = max_gaussian_factor(p);
    CHECK(f.gaussian->a > 0.0);
    CHECK(f.gaussian->a < 1.0);
    CHECK(classify(f.factors.front()) == Classification::Boundary);
    CHECK(testutil::param_dev(reconvolve(f), p) <= 1e-12);
}

TEST_CASE("max_gaussian_factor: random interior tuples") {
    Rng rng(42);
    for (int i = 0; i < 400; ++i) {
        const ThetaParams p = testutil::random_interior(rng);
        const Factorization f = max_gaussian_factor(p);
        const double a = f.gaussian->a;
        CHECK(a > 0.0);
        CHECK(a < p.sigma_prime);
        const ThetaParams& nu = f.factors.front();
        CHECK(classify(nu) == Classification::Boundary);

        // boundary identity: |kappa| equals nu's bound
        CHECK(std::abs(log_abs_kappa(p) - log_boundary_bound(nu)) <= 1e-10);

        CHECK(testutil::param_dev(reconvolve(f), p) <= 1e-12);

        // maximality: inflating a makes nu invalid
        const double a2 = a * (1.0 + 1e-6);
        const ThetaParams overshoot = make_params(
            p.sigma - a2, p.sigma_prime - a2, p.beta, p.beta_prime, resolve_kappa(p));
        CHECK(classify(overshoot) == Classification::Invalid);
    }
}

TEST_CASE("factor_chain: worked examples") {
    const ThetaParams p = make_params(2, 1, 0, 0, 0.5);

    const Factorization f1 = factor_chain(p, 1);
    const Factorization g = max_gaussian_factor(p);
    REQUIRE(f1.factors.size() == 1);
    CHECK(testutil::param_dev(f1.factors.front(), g.factors.front()) <= 1e-15);
    CHECK(f1.gaussian->a == g.gaussian->a);

    const Factorization f3 = factor_chain(p, 3);
    REQUIRE(f3.factors.size() == 3);
    for (const ThetaParams& nu : f3.factors) {
        CHECK(classify(nu) == Classification::Boundary);
        CHECK(is_indecomposable(nu));
    }
    CHECK(f3.gaussian->a > 0.0);
    CHECK(testutil::param_dev(reconvolve(f3), p) <= 1e-9);

    CHECK_THROWS_AS(
        factor_chain(ThetaParams{2, 1, 0, 0, KappaSpec::boundary_multiple(1.0, 1)}, 2),
        NotInterior);
    CHECK_THROWS_AS(factor_chain(p, 0), DomainError);
}

TEST_CASE("factor_chain: random interior tuples across lengths") {
    Rng rng(43);
    for (int i = 0; i < 60; ++i) {
        const ThetaParams p = testutil::random_interior(rng);
        for (std::size_t n : {1u, 2u, 5u, 10u}) {
            const Factorization f = factor_chain(p, n);
            REQUIRE(f.factors.size() == n);
            for (const ThetaParams& nu : f.factors)
                CHECK(classify(nu) == Classification::Boundary);
            CHECK(f.gaussian->a > 0.0);
            CHECK(testutil::param_dev(reconvolve(f), p) <= 1e-9);
        }
    }
}

TEST_CASE("lambda_pi_decomposition: worked examples") {
    const ThetaParams p = make_params(2, 1, 0, 0, 0.5);
    const Factorization f = lambda_pi_decomposition(p);
    REQUIRE(f.factors.size() == 1);
    REQUIRE(f.z2.has_value());
    CHECK_FALSE(f.gaussian.has_value());
    CHECK(classify(f.factors.front()) == Classification::Boundary);
    CHECK(f.z2->kappa() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(f.z2->mass0 == doctest::Approx(0.8535533905932737).epsilon(1e-12));
    CHECK(f.z2->mass1 == doctest::Approx(0.1464466094067262).epsilon(1e-10));

    // negative kappa flips the boundary factor's sign, not pi
    const Factorization fn = lambda_pi_decomposition(make_params(2, 1, 0, 0, -0.5));
    CHECK(kappa_sign(fn.factors.front()) == -1);
    CHECK(fn.z2->kappa() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));

    CHECK_THROWS_AS(
        lambda_pi_decomposition(ThetaParams{2, 1, 0, 0, KappaSpec::boundary_multiple(1.0, 1)}),
        NotInterior);
}

TEST_CASE("lambda_pi_decomposition: pointwise char-fn product") {
    Rng rng(44);
    for (int i = 0; i < 300; ++i) {
        const ThetaParams p = testutil::random_interior(rng);
        const Factorization f = lambda_pi_decomposition(p);
        const double kpi = f.z2->kappa();
        CHECK(kpi > 0.0);
        CHECK(kpi < 1.0);
        for (const auto& [s, l] : testutil::charfn_grid(p)) {
            const std::complex<double> lhs =
                char_fn(f.factors.front(), s, l) * (l == 0 ? 1.0 : kpi);
            CHECK(std::abs(lhs - char_fn(p, s, l)) <= 1e-12);
        }
    }
}

TEST_CASE("invariant: no admissible split reaches an indecomposable kappa") {
    Rng rng(45);
    for (int i = 0; i < 25; ++i) {
        const ThetaParams p = canonicalize(testutil::random_boundary(rng));
        const double logk = log_abs_kappa(p);
        for (int j = 0; j < 400; ++j) {
            // random split with sigma'_i < sigma_i on both sides
            double u, v;
            do {
                u = rng.uniform(0.01, 0.99);
                v = rng.uniform(0.01, 0.99);
            } while (v * p.sigma_prime >= u * p.sigma ||
                     (1.0 - v) * p.sigma_prime >= (1.0 - u) * p.sigma);
            const double b1 = p.beta + rng.uniform(-3.0, 3.0) * std::sqrt(p.sigma);
            const double bp1 = p.beta_prime + rng.uniform(-3.0, 3.0) * std::sqrt(p.sigma_prime);
            const ThetaParams h1{u * p.sigma, v * p.sigma_prime, b1, bp1, KappaSpec{}};
            const ThetaParams h2{p.sigma - h1.sigma, p.sigma_prime - h1.sigma_prime,
                                 p.beta - b1, p.beta_prime - bp1, KappaSpec{}};
            const double cap = log_boundary_bound(h1) + log_boundary_bound(h2);
            CHECK(cap < logk);
        }
    }
}

TEST_CASE("invariant: quotient-square inequality") {
    Rng rng(46);
    for (int i = 0; i < 20000; ++i) {
        const double a = rng.uniform(-10.0, 10.0);
        const double b = rng.uniform(-10.0, 10.0);
        const double c = rng.uniform(1e-3, 10.0);
        const double d = rng.uniform(1e-3, 10.0);
        CHECK((a + b) * (a + b) / (c + d) <= a * a / c + b * b / d + 1e-9);
    }
}

TEST_CASE("invariant: adding a gaussian-shape factor raises the variance ratio") {
    Rng rng(47);
    for (int i = 0; i < 20000; ++i) {
        const double s1 = rng.uniform(1e-3, 10.0);
        const double sp1 = rng.uniform(1e-6, 1.0) * s1;
        const double s2 = rng.uniform(1e-3, 10.0);
        CHECK(std::sqrt((sp1 + s2) / (s1 + s2)) > std::sqrt(sp1 / s1));
    }
}

TEST_CASE("invariant: divisibility classes are stable under convolution") {
    Rng rng(48);
    for (int i = 0; i < 3000; ++i) {
        const ThetaParams p = rng.pick(2) ? testutil::random_gauss_z2(rng)
                                          : testutil::random_haar_line(rng);
        const ThetaParams q = rng.pick(2) ? testutil::random_gauss_z2(rng)
                                          : testutil::random_atom(rng);
        CHECK(is_infinitely_divisible(convolve(p, q)));
    }
    for (int i = 0; i < 3000; ++i) {
        const ThetaParams b = testutil::random_boundary(rng);
        ThetaParams other;
        switch (rng.pick(3)) {
            case 0: other = testutil::random_interior(rng); break;
            case 1: other = testutil::random_gauss_z2(rng); break;
            default: other = testutil::random_atom(rng); break;
        }
        const Classification c = classify(convolve(b, other));
        CHECK((c == Classification::Interior || c == Classification::Boundary));
    }
}

TEST_CASE("embeddings reproduce their char fns") {
    const GaussianFactor g{0.7, 1.2};
    const ThetaParams pg = embed(g);
    CHECK(classify(pg) == Classification::GaussZ2);
    for (double s : {-1.0, 0.4}) {
        const std::complex<double> want =
            std::polar(std::exp(-g.a * s * s), g.shift * s);
        CHECK(std::abs(char_fn(pg, s, 0) - want) <= 1e-15);
        CHECK(std::abs(char_fn(pg, s, 1) - want) <= 1e-15);
    }

    const Z2Distribution z{0.8, 0.2};
    const ThetaParams pz = embed(z);
    for (double s : {-2.0, 0.9}) {
        CHECK(std::abs(char_fn(pz, s, 0) - 1.0) <= 1e-15);
        CHECK(std::abs(char_fn(pz, s, 1) - z.kappa()) <= 1e-15);
    }
}

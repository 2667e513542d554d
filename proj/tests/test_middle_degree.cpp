#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "lpspec/middle_degree.hpp"
#include "lpspec/radial_ode.hpp"
#include "lpspec/spectral_regions.hpp"

using namespace lpspec::middle;

TEST_CASE("radial profile wk") {
    CHECK(wk(0.0, 4.0) == 0.0);
    // wk ~ 2 e^{-r/2} at infinity
    for (double r : {20.0, 30.0, 40.0})
        CHECK(wk(r, 4.0) * std::exp(0.5 * r) == doctest::Approx(2.0).epsilon(1e-6));
    // the lowest family member for N = 3 sits at the co-closed 1-form bottom
    CHECK(lpspec::radial::sphere_eigenvalue(3, 1, 0, lpspec::radial::SphereMode::coclosed) ==
          doctest::Approx(4.0));
    // minimum lambda over the family is ((N+1)/2)^2
    for (int N : {3, 5, 7})
        CHECK(lpspec::radial::sphere_eigenvalue(N, (N - 1) / 2, 0,
                                                lpspec::radial::SphereMode::coclosed) ==
              doctest::Approx(0.25 * (N + 1.0) * (N + 1.0)));
    CHECK_THROWS_AS(wk(1.0, 0.2), std::domain_error);
}

TEST_CASE("integrand exponent law") {
    // e(p) = 0 exactly at p = 2N/(N+1)
    for (int N : {3, 5, 7})
        CHECK(integrand_exponent(threshold(N), N) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(threshold(3) == doctest::Approx(1.5));
    CHECK(threshold(5) == doctest::Approx(5.0 / 3.0));
    // threshold tends to 2 from below
    CHECK(threshold(401) > 1.99);
    CHECK(threshold(401) < 2.0);
}

TEST_CASE("measured log-slope at r = 30 matches the exponent law") {
    for (int N : {3, 5})
        for (double p : {1.0, 1.5, 2.0, 3.0})
            for (double lam : {4.0, 9.0, 16.0}) {
                if (!(lam > 0.25)) continue;
                MiddleFamily fam(N, lam, p);
                const auto t = lp_tail(fam, 30.0);
                CHECK(std::abs(t.exponent_estimate - integrand_exponent(p, N)) <= 1e-3);
            }
}

TEST_CASE("tail convergence and divergence") {
    // p = 2, N = 3: e(2) = -1, increments decay geometrically
    MiddleFamily conv(3, 4.0, 2.0);
    const double i10 = lp_tail(conv, 10.0).value;
    const double i20 = lp_tail(conv, 20.0).value;
    const double i40 = lp_tail(conv, 40.0).value;
    CHECK(i20 > i10);  // monotone in R
    CHECK((i40 - i20) < 0.01 * (i20 - i10));
    // p = 1, N = 3: e(1) = 1, integral blows up like e^R
    MiddleFamily div(3, 4.0, 1.0);
    const double j10 = lp_tail(div, 10.0).value;
    const double j20 = lp_tail(div, 20.0).value;
    CHECK(j20 / j10 > 1e3);
}

TEST_CASE("threshold detection by bisection") {
    for (int N : {3, 5}) {
        const double lam0 = 0.25 * (N + 1.0) * (N + 1.0);
        for (double lam : {lam0, lam0 + 5.0, lam0 + 12.0}) {
            const double measured = measured_threshold(N, lam);
            CHECK(std::abs(measured - threshold(N)) <= 0.02);
        }
    }
}

TEST_CASE("pairing integral diverges logarithmically") {
    // J(2R) - J(R) -> log 2
    for (double R : {500.0, 2000.0})
        CHECK(pairing_divergence(4.0, 2.0 * R) - pairing_divergence(4.0, R) ==
              doctest::Approx(std::log(2.0)).epsilon(5e-3));
    // increment from 10^3 to 10^4 within 5 percent of log 10
    const double inc = pairing_divergence(4.0, 1e4) - pairing_divergence(4.0, 1e3);
    CHECK(std::abs(inc - std::log(10.0)) <= 0.05 * std::log(10.0));
    // monotone in R
    CHECK(pairing_divergence(4.0, 100.0) > pairing_divergence(4.0, 50.0));
    // J(R) - log(1 + R) settles to a constant
    const double c1 = pairing_divergence(9.0, 1e3) - std::log(1e3 + 1.0);
    const double c2 = pairing_divergence(9.0, 1e4) - std::log(1e4 + 1.0);
    CHECK(std::abs(c1 - c2) < 2e-3);
}

TEST_CASE("coexistence with the isolated spectral point at p = 2") {
    // the tail converges at p = 2 while 0 sits in sigma(2, (N+1)/2)
    for (int N : {3, 5}) {
        CHECK(integrand_exponent(2.0, N) == doctest::Approx(-1.0));
        lpspec::regions::RegionSpec spec(N, (N + 1) / 2, 2.0);
        CHECK(lpspec::regions::spectrum_contains(spec, {0.0, 0.0}));
        CHECK_FALSE(lpspec::regions::contains(spec, {0.0, 0.0}, lpspec::regions::Mode::closed));
    }
}

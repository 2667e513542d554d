#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "lpspec/model_kernels.hpp"
#include "lpspec/quadrature.hpp"

using namespace lpspec::kernels;

namespace {
double urand(std::mt19937_64& rng, double lo, double hi) {
    const double t = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * t;
}
}  // namespace

TEST_CASE("heat kernel values and mass") {
    CHECK(h3_heat(1.0, 0.0) ==
          doctest::Approx(std::pow(4.0 * M_PI, -1.5) * std::exp(-1.0)).epsilon(1e-14));
    // r/sinh r limit is continuous at 0
    CHECK(h3_heat(1.0, 1e-9) == doctest::Approx(h3_heat(1.0, 0.0)).epsilon(1e-9));
    // stochastic completeness at three times
    for (double t : {0.1, 1.0, 10.0}) CHECK(h3_heat_mass(t) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("semigroup property on the diagonal") {
    for (auto [s, t] : {std::pair{0.3, 0.5}, {1.0, 1.0}, {0.2, 2.0}}) {
        CHECK(std::abs(h3_semigroup_diag(s, t) - h3_heat(s + t, 0.0)) <= 1e-4);
    }
}

TEST_CASE("Gaussian upper bound constants") {
    const auto res = gaussian_bound_check();
    CHECK(res.feasible);
    CHECK(res.C2_min <= 8.0);
    CHECK(res.C1 > 0.0);
    // sharp small-time factor e^{-r^2/4t}: C2 slightly above 4 suffices there
    CHECK(res.small_time_feasible);
    CHECK(res.small_time_C2 <= 4.5);
}

TEST_CASE("resolvent kernel against the m = 1 closed form") {
    // g_{1,xi}(r) = e^{-sqrt(xi^2+1) r} / (4 pi sinh r)
    for (double xi : {1.0, 2.0}) {
        for (double r : {0.4, 1.5, 3.0}) {
            const double closed =
                std::exp(-std::sqrt(xi * xi + 1.0) * r) / (4.0 * M_PI * std::sinh(r));
            CHECK(resolvent_kernel({1.0, xi}, r) == doctest::Approx(closed).epsilon(1e-8));
        }
    }
    // monotone decreasing in r
    const ResolventParams pr{0.5, 2.0};
    CHECK(resolvent_kernel(pr, 0.5) > resolvent_kernel(pr, 1.0));
    CHECK(resolvent_kernel(pr, 1.0) > resolvent_kernel(pr, 2.0));
}

TEST_CASE("resolvent mass identity") {
    CHECK(resolvent_mass({1.0, 2.0}) == doctest::Approx(0.25).epsilon(1e-6));
    for (double m : {0.5, 1.0, 2.0})
        for (double xi : {1.0, 4.0}) {
            const double expect = std::pow(xi, -2.0 * m);
            CHECK(std::abs(resolvent_mass({m, xi}) - expect) <= 1e-6);
        }
}

TEST_CASE("trade inequality") {
    CHECK(impo_check(1.0, 2.0, 1.0, 4.0));  // -1.25 <= -1
    CHECK(impo_check(3.0, 0.0, 0.5, 2.0));  // d = 0
    // equality case t = d / (2 sigma sqrt(C2))
    CHECK(impo_check(1.5, 2.0, 2.0 / (2.0 * 1.5 * std::sqrt(3.0)), 3.0));
    std::mt19937_64 rng(777u);
    int fails = 0;
    for (int i = 0; i < 100000; ++i) {
        if (!impo_check(urand(rng, 1e-3, 10.0), urand(rng, 0.0, 20.0), urand(rng, 1e-3, 10.0),
                        urand(rng, 0.1, 50.0)))
            ++fails;
    }
    CHECK(fails == 0);
}

TEST_CASE("Schur bound never violated") {
    const auto res = schur_bound_check(100, 4, 20240801u);
    CHECK(res.trials >= 300);
    CHECK(res.violations == 0);
    CHECK(res.max_ratio <= 1.0);
    CHECK(res.max_ratio > 0.05);  // the bound is exercised, not vacuous
}

TEST_CASE("ball volumes and growth rate") {
    // closed form in H^3 (N = 2 ambient sphere dimension for log_ball_volume)
    CHECK(std::exp(log_ball_volume(2, 2.0)) == doctest::Approx(h3_ball_volume(2.0)).epsilon(1e-10));
    // d log vol / dR -> N: fitted slope over [20, 40]
    for (int N : {1, 2, 3, 5}) {
        std::vector<double> grid;
        for (double R = 20.0; R <= 40.0 + 1e-9; R += 2.0) grid.push_back(R);
        const auto res = volume_growth(N, grid);
        CHECK(res.fitted_slope == doctest::Approx(static_cast<double>(N)).epsilon(1e-6));
        CHECK(res.bound_holds);
        CHECK(res.fitted_C > 0.0);
        // fitted limsup estimate stays below gamma + 1e-2
        CHECK(res.fitted_slope <= N + 1e-2);
        // raw rate at R = 40 carries the prefactor log(omega_N/(N 2^N))/R
        const double prefactor =
            std::log(2.0 * std::pow(M_PI, 0.5 * (N + 1.0)) / std::tgamma(0.5 * (N + 1.0)) /
                     (N * std::pow(2.0, N)));
        CHECK(res.rate_at_R == doctest::Approx(N + prefactor / 40.0).epsilon(1e-4));
    }
}

TEST_CASE("wave cone: outside-cone energy vanishes under refinement") {
    WaveParams wp;
    wp.h = 4e-3;
    const auto coarse = wave_cone_check(wp);
    CHECK(coarse.initial_energy > 0.0);
    CHECK(coarse.outside_fraction < 1e-4);
    wp.h = 2e-3;
    const auto fine = wave_cone_check(wp);
    // second-order scheme: at least 4x improvement unless already at noise floor
    if (coarse.outside_fraction > 1e-12)
        CHECK(fine.outside_fraction <= coarse.outside_fraction / 4.0);
    // T too large for the box is rejected
    WaveParams bad = wp;
    bad.T = 6.0;
    CHECK_THROWS_AS(wave_cone_check(bad), std::domain_error);
}

TEST_CASE("Taylor remainder identity") {
    const SmoothFunction g1 = resolvent_symbol({2.0, 0.8});
    const SmoothFunction g2 = simple_pole(1.0);
    const SmoothFunction g3 = cubic_poly();
    for (int n : {1, 2, 4}) {
        CHECK(taylor_remainder_check(g1, 0.7, n, 1.0) <= 1e-10);
        CHECK(taylor_remainder_check(g2, 1.0, n, 1.0) <= 1e-10);
        CHECK(taylor_remainder_check(g3, 1.3, n, 0.4) <= 1e-10);
    }
    // degree < n: the quadrature term vanishes and the identity is Taylor-exact
    CHECK(taylor_remainder_check(g3, 1.3, 4, 0.4) <= 1e-13);
    // n = 1 reduces to b_1 = g(x + alpha) - g(x)
    const Complex b1 = g2(0, 1.0 + 0.5) - g2(0, 1.0);
    const Complex quad = 0.5 * lpspec::integrate_adaptive_complex(
                                   [&](double t) { return g2(1, 1.0 + 0.5 * t); }, 0.0, 1.0,
                                   {1e-13, 1e-13});
    CHECK(std::abs(b1 - quad) <= 1e-12);
}

TEST_CASE("Fourier decay of the Lorentzian") {
    const auto res = fourier_decay_check(2.0, 1.5, 0.2);
    CHECK(res.max_abs_err <= 1e-6);
    CHECK(res.lemma_bound_holds);
    CHECK_THROWS_AS(fourier_decay_check(0.5, 1.5, 0.3), std::domain_error);
}

TEST_CASE("symbol decay in the strip") {
    const auto res = symbol_decay_check({1.0, 1.5}, 4);
    REQUIRE(res.sup_by_order.size() == 5);
    CHECK(res.finite);
    for (double s : res.sup_by_order) CHECK(s < 1e6);
    // far field well below the global sup (the |w|^{-j} rate)
    for (std::size_t j = 1; j < res.sup_by_order.size(); ++j)
        CHECK(res.far_field_sup[j] <= res.sup_by_order[j] * (1.0 + 1e-12));
    CHECK(res.refine_ratio == doctest::Approx(1.0).epsilon(0.01));
}

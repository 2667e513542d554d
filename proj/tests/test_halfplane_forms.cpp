#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "lpspec/halfplane_forms.hpp"
#include "lpspec/spectral_regions.hpp"

using namespace lpspec::forms;
namespace regions = lpspec::regions;

namespace {

double urand(std::mt19937_64& rng, double lo, double hi) {
    const double t = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * t;
}

// max hyperbolic pointwise norm over a lattice of (x1, x2, y)
double max_residual(const TemplateForm& f, double xlo, double xhi, double ylo, double yhi,
                    int n = 8) {
    double m = 0.0;
    std::vector<double> x(static_cast<std::size_t>(f.ambient_N()), 0.3);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                x[0] = xlo + (xhi - xlo) * i / (n - 1);
                if (f.ambient_N() > 1) x[1] = xlo + (xhi - xlo) * j / (n - 1);
                const double y = ylo * std::pow(yhi / ylo, static_cast<double>(l) / (n - 1));
                m = std::max(m, f.pointwise_norm(x, y));
            }
    return m;
}

TemplateForm single_term(int N, CoefficientTerm c, BasisForm b) {
    TemplateForm f(N, b.degree());
    f.add_term(std::move(c), std::move(b));
    return f;
}

// random coefficient built from a plateau in log y and bumps in x
TemplateForm random_form(std::mt19937_64& rng, int N, int degree) {
    TemplateForm f(N, degree);
    const int nterms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < nterms; ++t) {
        CoefficientTerm c;
        c.coef = Complex(urand(rng, -2, 2), urand(rng, -2, 2));
        c.mu = Complex(urand(rng, -2, 2), urand(rng, -2, 2));
        c.c = make_plateau(-3.0, 1.0);
        const int naxes = static_cast<int>(rng() % static_cast<unsigned>(N + 1));
        for (int a = 1; a <= naxes; ++a) c.xfactors.push_back({a, make_bump(0.0, 1.0), 0});
        // random basis of the requested degree
        std::vector<int> pool(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
        std::shuffle(pool.begin(), pool.end(), rng);
        const bool use_a = (degree >= 1) && (rng() % 2 == 0);
        const int nidx = use_a ? degree - 1 : degree;
        if (nidx > N) continue;
        std::vector<int> idx(pool.begin(), pool.begin() + nidx);
        std::sort(idx.begin(), idx.end());
        f.add_term(std::move(c), use_a ? basis_a(idx) : basis_b(idx));
    }
    return f;
}

}  // namespace

TEST_CASE("wedge and contraction signs") {
    // dx^2 ^ dx^{1,3} = -dx^{1,2,3}
    auto w = wedge_dx(2, basis_b({1, 3}));
    CHECK(w.sign == -1);
    CHECK(w.basis == basis_b({1, 2, 3}));
    // dx^1 ^ (dy ^ dx^2) = -dy ^ dx^{1,2}
    w = wedge_dx(1, basis_a({2}));
    CHECK(w.sign == -1);
    CHECK(w.basis == basis_a({1, 2}));
    // i(dx_2) dx^{1,2} = -dx^1
    auto c = contract_dx(2, basis_b({1, 2}));
    CHECK(c.sign == -1);
    CHECK(c.basis == basis_b({1}));
    // i(dx_1)(dy ^ dx^{1,2}) = -dy ^ dx^2 (anticommutes past dy)
    c = contract_dx(1, basis_a({1, 2}));
    CHECK(c.sign == -1);
    CHECK(c.basis == basis_a({2}));
    // absent index contracts to zero
    CHECK(contract_dx(1, basis_b({2})).sign == 0);
    CHECK(contract_dx(1, basis_a({})).sign == 0);
}

TEST_CASE("covariant derivative table") {
    // D_dy (dy ^ dx^1) = (2/y) dy ^ dx^1 at k = 2
    auto f = covariant_derivative(3, basis_a({1}), Direction::y);
    REQUIRE(f.terms().size() == 1);
    CHECK(f.terms()[0].coef.coef == Complex(2.0, 0.0));
    CHECK(f.terms()[0].coef.mu == Complex(-1.0, 0.0));
    CHECK(f.terms()[0].basis == basis_a({1}));
    // D_dy (dx^{1,2}) = (2/y) dx^{1,2}
    f = covariant_derivative(3, basis_b({1, 2}), Direction::y);
    REQUIRE(f.terms().size() == 1);
    CHECK(f.terms()[0].coef.coef == Complex(2.0, 0.0));
    // D_dx1 (dx^2) = -(1/y) i(dx_1)(dy ^ dx^2) = 0
    f = covariant_derivative(3, basis_b({2}), Direction::x, 1);
    CHECK(f.empty());
    // D_dx1 (dx^1) = (1/y) dy
    f = covariant_derivative(3, basis_b({1}), Direction::x, 1);
    REQUIRE(f.terms().size() == 1);
    CHECK(f.terms()[0].basis == basis_a({}));
    CHECK(f.terms()[0].coef.coef == Complex(1.0, 0.0));
    // D_dx1 (dy ^ dx^2) = -(1/y) dx^{1,2}
    f = covariant_derivative(3, basis_a({2}), Direction::x, 1);
    REQUIRE(f.terms().size() == 1);
    CHECK(f.terms()[0].basis == basis_b({1, 2}));
    CHECK(f.terms()[0].coef.coef == Complex(-1.0, 0.0));
}

TEST_CASE("codifferential base actions") {
    // delta(y^2 dx^{1,2}) = 0 for any N
    auto f = codifferential(monomial_form(3, 2.0, basis_b({1, 2})));
    CHECK(f.empty());
    // delta(y^mu dy ^ dx^1) at N = 3, k = 2: -(mu - 4 + 4) y^{mu+1} dx^1
    const Complex mu(0.7, -1.3);
    f = codifferential(monomial_form(3, mu, basis_a({1})));
    REQUIRE(f.terms().size() == 1);
    CHECK(std::abs(f.terms()[0].coef.coef - (-mu)) < 1e-15);
    CHECK(f.terms()[0].coef.mu == mu + 1.0);
    CHECK(f.terms()[0].basis == basis_b({1}));
    // the annihilating power mu = N + 1 - 2k
    for (int N : {3, 5}) {
        for (int k = 1; k <= N; ++k) {
            std::vector<int> I;
            for (int i = 1; i < k; ++i) I.push_back(i);
            const double mu0 = N + 1.0 - 2.0 * k;
            CHECK(codifferential(monomial_form(N, mu0, basis_a(I))).empty());
        }
    }
}

TEST_CASE("exterior derivative basics") {
    // d(y dx^1) = dy ^ dx^1
    auto f = exterior_derivative(monomial_form(3, 1.0, basis_b({1})));
    REQUIRE(f.terms().size() == 1);
    CHECK(f.terms()[0].basis == basis_a({1}));
    CHECK(f.terms()[0].coef.coef == Complex(1.0, 0.0));
    CHECK(f.terms()[0].coef.mu == Complex(0.0, 0.0));
    // d(dx^{1,2}) = 0
    CHECK(exterior_derivative(monomial_form(3, 0.0, basis_b({1, 2}))).empty());
    // d(x_1 dx^1) = 0 (symmetric wedge)
    CoefficientTerm c;
    c.xfactors.push_back({1, make_monomial(1), 0});
    CHECK(exterior_derivative(single_term(3, c, basis_b({1}))).empty());
    // d(x_2 dx^1) = -dx^{1,2}
    CoefficientTerm c2;
    c2.xfactors.push_back({2, make_monomial(1), 0});
    f = exterior_derivative(single_term(3, c2, basis_b({1})));
    REQUIRE(f.terms().size() == 1);
    CHECK(f.terms()[0].basis == basis_b({1, 2}));
    CHECK(f.terms()[0].coef.coef == Complex(-1.0, 0.0));
}

TEST_CASE("Laplacian base eigenvalues") {
    const Complex mu(1.1, 0.4);
    // B type: -mu (mu - N + 2k)
    for (int N : {3, 4, 6}) {
        auto f = monomial_form(N, mu, basis_b({1, 2}));
        const Complex lam = extract_eigenvalue(f, laplacian(f));
        CHECK(std::abs(lam - (-mu * (mu - static_cast<double>(N) + 4.0))) < 1e-12);
    }
    // y^1 dx^1 with N = 3, k = 1 is harmonic: -1 (1 - 3 + 2) = 0
    CHECK(laplacian(monomial_form(3, 1.0, basis_b({1}))).empty());
    // A type at N = 3, k = 2, mu = 2: -(3)(2 - 4 + 4) = -6
    auto fa = monomial_form(3, 2.0, basis_a({1}));
    CHECK(std::abs(extract_eigenvalue(fa, laplacian(fa)) - Complex(-6.0, 0.0)) < 1e-12);
}

TEST_CASE("product-rule route reproduces the base eigenvalues") {
    std::mt19937_64 rng(4242u);
    for (int trial = 0; trial < 60; ++trial) {
        const int N = 2 + static_cast<int>(rng() % 4);
        const Complex mu(urand(rng, -3, 3), urand(rng, -3, 3));
        const int deg = static_cast<int>(rng() % static_cast<unsigned>(N + 1));
        std::vector<int> idx;
        const bool use_a = (rng() % 2 == 0) && deg >= 1;
        const int nidx = use_a ? deg - 1 : deg;
        for (int i = 0; i < nidx; ++i) idx.push_back(i + 1);
        auto f = use_a ? monomial_form(N, mu, basis_a(idx)) : monomial_form(N, mu, basis_b(idx));
        auto direct = laplacian(f);
        auto via_product = laplacian_product_rule(f);
        const Complex l1 = direct.empty() ? Complex{} : extract_eigenvalue(f, direct);
        const Complex l2 = via_product.empty() ? Complex{} : extract_eigenvalue(f, via_product);
        CHECK(std::abs(l1 - l2) <= 1e-12 * (1.0 + std::abs(l1)));
    }
}

TEST_CASE("two Laplacian routes agree pointwise on profile coefficients") {
    std::mt19937_64 rng(77u);
    for (int trial = 0; trial < 25; ++trial) {
        const int N = 3;
        const int deg = static_cast<int>(rng() % 4);
        auto f = random_form(rng, N, deg);
        auto a = laplacian(f);
        auto b = laplacian_product_rule(f);
        auto diff = a - b;
        const double scale = 1.0 + max_residual(a, -0.9, 0.9, 0.2, 2.0, 5);
        CHECK(max_residual(diff, -0.9, 0.9, 0.2, 2.0, 5) <= 1e-12 * scale);
    }
}

TEST_CASE("function Laplacian: eigenfunctions and a finite-difference oracle") {
    // Lap(y^mu) = -mu (mu - N) y^mu through the 0-form pipeline
    for (int N : {2, 3, 5}) {
        const Complex mu(0.8, 2.0);
        auto f = monomial_form(N, mu, basis_b({}));
        const Complex lam = extract_eigenvalue(f, laplacian(f));
        CHECK(std::abs(lam - (-mu * (mu - static_cast<double>(N)))) < 1e-12);
    }
    // FD stencil in u = log y: Lap f = N f_u - f_uu for x-independent f;
    // second-order convergence on halving h
    const int N = 3;
    const Complex mu(1.3, 0.9);
    const double u0 = 0.37;
    auto fval = [&](double u) { return std::exp(mu * u); };
    const Complex exact = -mu * (mu - static_cast<double>(N)) * fval(u0);
    auto fd = [&](double h) {
        const Complex fu = (fval(u0 + h) - fval(u0 - h)) / (2.0 * h);
        const Complex fuu = (fval(u0 + h) - 2.0 * fval(u0) + fval(u0 - h)) / (h * h);
        return static_cast<double>(N) * fu - fuu;
    };
    const double e1 = std::abs(fd(1e-2) - exact);
    const double e2 = std::abs(fd(5e-3) - exact);
    CHECK(std::log2(e1 / e2) >= 1.9);
}

TEST_CASE("d d = 0 and delta delta = 0") {
    std::mt19937_64 rng(10101u);
    for (int trial = 0; trial < 30; ++trial) {
        const int N = 3;
        const int deg = static_cast<int>(rng() % 3);
        auto f = random_form(rng, N, deg);
        auto dd = exterior_derivative(exterior_derivative(f));
        CHECK(max_residual(dd, -0.9, 0.9, 0.1, 2.5, 5) <= 1e-12);
        auto f2 = random_form(rng, N, 2 + static_cast<int>(rng() % 2));
        auto deltadelta = codifferential(codifferential(f2));
        const double scale = 1.0 + max_residual(f2, -0.9, 0.9, 0.1, 2.5, 5);
        CHECK(max_residual(deltadelta, -0.9, 0.9, 0.1, 2.5, 5) <= 1e-12 * scale);
    }
}

TEST_CASE("lp norm: closed form on box profiles and homogeneity") {
    const int N = 3;
    const double p = 1.7;
    // omega = y^{N/p} chi(log y) box(x) dx^{} : |omega|^p dv integrand == 1 on the box
    CoefficientTerm c;
    c.mu = Complex(N / p, 0.0);
    c.c = make_box(-1.5, 0.75);
    ProfilePtr bx = make_box(-0.8, 0.8);
    for (int a = 1; a <= N; ++a) c.xfactors.push_back({a, bx, 0});
    auto omega = single_term(N, c, basis_b({}));
    auto grid = QuadratureGrid::box(0.8, 12, std::exp(-1.5), std::exp(0.75), 6);
    const double expect = std::pow(2.25 * std::pow(1.6, N), 1.0 / p);
    CHECK(lp_norm(omega, p, grid) == doctest::Approx(expect).epsilon(1e-8));
    // homogeneity under complex scalars
    const Complex s(1.2, -2.3);
    CHECK(lp_norm(s * omega, p, grid) ==
          doctest::Approx(std::abs(s) * lp_norm(omega, p, grid)).epsilon(1e-12));
    // zero form
    CHECK(lp_norm(TemplateForm(N, 0), p, grid) == 0.0);
}

TEST_CASE("lp norm flags grid undercoverage") {
    const int N = 2;
    CoefficientTerm c;
    c.mu = 1.0;
    c.c = make_plateau(-6.0, 4.0);
    c.xfactors.push_back({1, make_bump(0.0, 1.0), 0});
    c.xfactors.push_back({2, make_bump(0.0, 1.0), 0});
    auto f = single_term(N, c, basis_b({}));
    auto good = QuadratureGrid::box(1.0, 16, std::exp(-6.0), std::exp(4.0), 20);
    CHECK(lp_norm_checked(f, 2.0, good).coverage_ok);
    auto bad = QuadratureGrid::box(1.0, 16, std::exp(-2.0), std::exp(1.0), 8);
    CHECK_FALSE(lp_norm_checked(f, 2.0, bad).coverage_ok);
}

TEST_CASE("d / delta adjointness via integration by parts") {
    const int N = 2;
    CoefficientTerm ca;
    ca.c = make_plateau(-4.0, -1.0);
    ca.xfactors.push_back({1, make_bump(0.1, 0.9), 0});
    ca.xfactors.push_back({2, make_bump(-0.1, 0.8), 0});
    auto alpha = single_term(N, ca, basis_b({1}));  // 1-form
    CoefficientTerm cb;
    cb.coef = Complex(0.7, 0.3);
    cb.c = make_plateau(-4.5, -0.5);
    cb.xfactors.push_back({1, make_bump(-0.2, 0.8), 0});
    cb.xfactors.push_back({2, make_bump(0.2, 0.85), 0});
    auto beta = single_term(N, cb, basis_a({1}));  // 2-form
    auto grid = QuadratureGrid::box(1.2, 28, std::exp(-5.0), std::exp(0.0), 40);
    const Complex lhs = l2_pairing(exterior_derivative(alpha), beta, grid);
    const Complex rhs = l2_pairing(alpha, codifferential(beta), grid);
    CHECK(std::abs(lhs - rhs) <= 1e-6 * (1.0 + std::abs(lhs)));
    CHECK(std::abs(lhs) > 1e-6);  // the pairing is not trivially zero
}

TEST_CASE("weyl family: support, eigen target, monotonicity") {
    const int N = 3, k = 1;
    const double p = 1.5, s = 0.8;
    auto omega = weyl_form(4, N, k, p, s);
    auto sup = omega.support();
    CHECK(sup.u_lo == doctest::Approx(-std::pow(4.0, 3.0 * p)));
    CHECK(sup.u_hi == doctest::Approx(std::log(4.0)));
    for (double xl : sup.x_lo) CHECK(xl == doctest::Approx(-1.0));
    // target eigenvalue equals the boundary parametrization at the same s
    const Complex target = weyl_eigenvalue(N, k, p, s);
    const auto bp = regions::boundary_point(regions::RegionSpec(N, k, p), s);
    CHECK(std::abs(target - bp.value()) <= 1e-12 * (1.0 + std::abs(target)));
    // and equals the Laplacian eigenvalue of the pure-power form
    auto pure = monomial_form(N, Complex(N / p - k, s), basis_b({1}));
    CHECK(std::abs(extract_eigenvalue(pure, laplacian(pure)) - target) <=
          1e-12 * (1.0 + std::abs(target)));
    // norm grows with n on a common grid
    auto grid = weyl_grid(3, N, p);
    CHECK(lp_norm(weyl_form(3, N, k, p, s), p, grid) >=
          lp_norm(weyl_form(2, N, k, p, s), p, grid));
}

TEST_CASE("weyl quotient decays and is dominated by the y^{mu+2} block") {
    const int N = 3, k = 0;
    const double p = 1.0, s = 0.0;
    const double q4 = weyl_quotient(4, N, k, p, s);
    const double q8 = weyl_quotient(8, N, k, p, s);
    CHECK(q4 > 0.0);
    CHECK(q8 > 0.0);
    CHECK(q8 / q4 <= 0.75);
    // residual is asymptotically carried by the terms with exponent mu + 2
    auto omega = weyl_form(8, N, k, p, s);
    auto residual = laplacian(omega) - weyl_eigenvalue(N, k, p, s) * omega;
    const Complex mu(N / p - k, s);
    TemplateForm dominant(N, k), rest(N, k);
    for (const Term& t : residual.terms()) {
        (std::abs(t.coef.mu - (mu + 2.0)) < 1e-9 ? dominant : rest).add_term(t.coef, t.basis);
    }
    auto grid = weyl_grid(8, N, p);
    const double nd = lp_norm(dominant, p, grid);
    const double nr = lp_norm(residual, p, grid);
    const double nrest = lp_norm(rest, p, grid);
    CHECK(nd / nr > 0.6);
    CHECK(nrest < nd);
}

TEST_CASE("weyl quotient decay is uniform over the boundary parameter") {
    for (double s : {1.0, 2.0}) {
        const double q4 = weyl_quotient(4, 3, 0, 1.0, s);
        const double q8 = weyl_quotient(8, 3, 0, 1.0, s);
        CHECK(q8 / q4 <= 0.75);
    }
}

TEST_CASE("weyl norm grows like n^{3p}") {
    const int N = 3, k = 1;
    const double p = 1.0;
    auto normp = [&](int n) {
        const double v = lp_norm(weyl_form(n, N, k, p, 0.0), p, weyl_grid(n, N, p));
        return std::pow(v, p) / std::pow(n, 3.0 * p);
    };
    const double c4 = normp(4), c8 = normp(8);
    CHECK(c4 > 0.0);
    // the ratio ||omega_n||_p^p / n^{3p} settles to the bump-mass constant
    CHECK(c8 / c4 == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("template form serialization") {
    auto phi = middle_harmonic(1.0, 1, {2}, 3);
    const std::string js = to_json(phi);
    CHECK(js.find("\"degree\":2") != std::string::npos);
    CHECK(js.find("expdecay") != std::string::npos);
    CHECK(js.find("planewave") != std::string::npos);
    CHECK(js.find("\"basis\":\"dy^dx\"") != std::string::npos);
    CHECK(js == to_json(phi));  // deterministic
}

TEST_CASE("harmonic middle-degree form") {
    auto phi = middle_harmonic(1.0, 1, {2}, 3);
    CHECK(phi.degree() == 2);
    const double scale = max_residual(phi, -3.0, 3.0, 0.05, 6.0);
    CHECK(scale > 0.1);
    CHECK(max_residual(laplacian(phi), -3.0, 3.0, 0.05, 6.0) <= 1e-10 * scale);
    CHECK(max_residual(exterior_derivative(phi), -3.0, 3.0, 0.05, 6.0) <= 1e-10 * scale);
    CHECK(max_residual(codifferential(phi), -3.0, 3.0, 0.05, 6.0) <= 1e-10 * scale);
    // the y-profile is square integrable: int |phi|^2 y^{-N-1} dy = 1/sqrt(nu)
    for (double nu : {1.0, 2.5}) {
        auto ph = middle_harmonic(nu, 1, {2}, 3);
        std::vector<double> x{0.3, -0.8, 0.0};
        const double integral = lpspec::integrate_adaptive(
            [&](double y) {
                const double pn = ph.pointwise_norm(x, y);
                return pn * pn * std::pow(y, -4.0);
            },
            1e-8, 40.0 / std::sqrt(nu), {1e-12, 1e-12});
        CHECK(integral == doctest::Approx(1.0 / std::sqrt(nu)).epsilon(1e-6));
    }
    CHECK_THROWS_AS(middle_harmonic(1.0, 2, {2}, 3), std::domain_error);  // index clash
    CHECK_THROWS_AS(middle_harmonic(1.0, 1, {2}, 4), std::domain_error);  // N even
}

TEST_CASE("derivative budget errors surface as UnsupportedCoefficient") {
    CoefficientTerm c;
    c.c = make_box(-1.0, 1.0);  // no derivatives available
    auto f = single_term(3, c, basis_b({1}));
    CHECK_THROWS_AS(laplacian(f), UnsupportedCoefficient);
    CHECK_THROWS_AS(exterior_derivative(f), UnsupportedCoefficient);
}

TEST_CASE("eigen-consistency with the region boundary parametrization") {
    double worst = 0.0;
    for (int N = 1; N <= 6; ++N)
        for (int k = 0; 2 * k <= N; ++k)
            for (double p : {1.0, 1.5, 2.0})
                for (double s = -5.0; s <= 5.0; s += 1.0) {
                    auto idx = std::vector<int>{};
                    for (int i = 1; i <= k; ++i) idx.push_back(i);
                    auto f = monomial_form(N, Complex(N / p - k, s), basis_b(idx));
                    auto lap = laplacian(f);
                    const Complex lam = lap.empty() ? Complex{} : extract_eigenvalue(f, lap);
                    const auto bp = regions::boundary_point(regions::RegionSpec(N, k, p), s);
                    worst = std::max(worst, std::abs(lam - bp.value()));
                }
    CHECK(worst <= 1e-10);
}

#include "lpspec/middle_degree.hpp"

#include <cmath>

#include "lpspec/quadrature.hpp"

namespace lpspec::middle {

double wk(double r, double lambda) {
    if (r < 0.0) throw std::domain_error("wk: r must be >= 0");
    if (!(lambda > 0.25)) throw std::domain_error("wk: lambda must exceed 1/4");
    const double expo = std::sqrt(lambda) - 0.5;
    return std::pow(std::tanh(0.5 * r), expo) / std::cosh(0.5 * r);
}

namespace {

// log of the tail integrand w(r)^p sinh(r)^{N - Np/2}, overflow-safe
double log_integrand(double r, const MiddleFamily& fam) {
    const double expo = std::sqrt(fam.lambda) - 0.5;
    const double logw = expo * std::log(std::tanh(0.5 * r)) - std::log(std::cosh(0.5 * r));
    // log sinh r = r - log 2 + log(1 - e^{-2r})
    const double logsinh = r - M_LN2 + std::log1p(-std::exp(-2.0 * r));
    return fam.p * logw + (fam.N - 0.5 * fam.N * fam.p) * logsinh;
}

}  // namespace

TailIntegral lp_tail(const MiddleFamily& fam, double R) {
    if (!(R >= 2.0)) throw std::domain_error("lp_tail: need R >= 2");
    TailIntegral t;
    t.R = R;
    t.value = integrate_adaptive(
        [&](double r) { return std::exp(log_integrand(r, fam)); }, 1.0, R,
        {1e-10, 1e-10, 400000});
    const double h = 1e-2;
    t.exponent_estimate = (log_integrand(R, fam) - log_integrand(R - h, fam)) / h;
    return t;
}

double measured_threshold(int N, double lambda, double r_probe, double p_tol) {
    if (N < 1 || N % 2 == 0) throw std::domain_error("measured_threshold: N must be odd");
    auto exponent_at = [&](double p) {
        MiddleFamily fam(N, lambda, p);
        const double h = 1e-2;
        return (log_integrand(r_probe, fam) - log_integrand(r_probe - h, fam)) / h;
    };
    double lo = 1.0, hi = 2.0;
    if (!(exponent_at(lo) > 0.0 && exponent_at(hi) < 0.0))
        throw std::runtime_error("measured_threshold: no sign change on [1, 2]");
    while (hi - lo > p_tol) {
        const double mid = 0.5 * (lo + hi);
        (exponent_at(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double pairing_divergence(double lambda, double R) {
    if (!(lambda > 0.0)) throw std::domain_error("pairing_divergence: lambda must be > 0");
    if (!(R >= 2.0)) throw std::domain_error("pairing_divergence: need R >= 2");
    const double expo = std::sqrt(lambda);
    return integrate_adaptive(
        [&](double r) { return std::pow(std::tanh(0.5 * r), expo) / (1.0 + r); }, 1.0, R,
        {1e-10, 1e-10, 400000});
}

}  // namespace lpspec::middle

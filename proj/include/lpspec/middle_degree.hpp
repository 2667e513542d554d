// middle_degree.hpp — the harmonic middle-degree family on H^{N+1} (N odd)
// and its L^p tail integrals.
//
// The radial profile of the family is
//
//   w(r) = (tanh r/2)^{sqrt(lambda) - 1/2} / cosh(r/2),   lambda > 1/4,
//
// and the L^p norm of a family member reduces (up to an r-independent
// spherical constant) to the 1-D tail integral
//
//   I(R) = int_1^R w(r)^p (sinh r)^{N - Np/2} dr,
//
// whose integrand has asymptotic log-slope e(p) = -p/2 + N(1 - p/2).  The
// integral converges iff e(p) < 0 iff p > 2N/(N+1); that threshold is
// independent of lambda.

#pragma once

#include <stdexcept>

namespace lpspec::middle {

// radial profile; requires lambda > 1/4 (bounded at r = 0)
double wk(double r, double lambda);

struct MiddleFamily {
    int N = 3;            // odd
    double lambda = 4.0;  // co-closed (N-1)/2 sphere eigenvalue; minimum ((N+1)/2)^2
    double p = 2.0;

    MiddleFamily(int N_, double lambda_, double p_) : N(N_), lambda(lambda_), p(p_) {
        if (N < 1 || N % 2 == 0) throw std::domain_error("MiddleFamily: N must be odd");
        if (!(lambda > 0.25)) throw std::domain_error("MiddleFamily: lambda must exceed 1/4");
        if (!(p >= 1.0)) throw std::domain_error("MiddleFamily: p must be >= 1");
    }
};

struct TailIntegral {
    double R = 0.0;
    double value = 0.0;
    double exponent_estimate = 0.0;  // log-increment slope of the integrand at r = R
};

// I(R) with an exponent estimate from log-increments at r = R
TailIntegral lp_tail(const MiddleFamily& fam, double R);

// e(p) = -p/2 + N(1 - p/2)
inline double integrand_exponent(double p, int N) { return -0.5 * p + N * (1.0 - 0.5 * p); }

// 2N/(N+1): I(R) converges iff p exceeds this
inline double threshold(int N) {
    if (N < 1 || N % 2 == 0) throw std::domain_error("threshold: N must be odd");
    return 2.0 * N / (N + 1.0);
}

// Bisection on p of the measured integrand exponent at r = r_probe.
double measured_threshold(int N, double lambda, double r_probe = 30.0, double p_tol = 1e-4);

// J(R) = int_1^R (tanh r/2)^{sqrt(lambda)} / (1 + r) dr; J(R) - log(1 + R)
// converges, so the family pairs divergently against its boundary data.
double pairing_divergence(double lambda, double R);

}  // namespace lpspec::middle

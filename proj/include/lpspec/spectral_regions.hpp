// spectral_regions.hpp — geometry of the L^p spectral regions of the Hodge
// Laplacian on k-forms over H^{N+1}.
//
// For reduced degree k' and 1 <= p <= 2 the region is
//
//   Q_{p,k} = { v + z^2 : |Im z| <= d },   v = (N/2 - k')^2,  d = |N/p - N/2|,
//
// with boundary parabola
//
//   P_{p,k}(s) = -(N/p + is - k') (N(1/p - 1) + is + k'),   s in R,
//
// the two parametrizations agreeing via z = -s + i d.  Degrees fold by
// k -> N+1-k above the middle, and exponents fold by p -> p* (1/p + 1/p* = 1),
// so every query reduces to k' <= (N+1)/2 and p <= 2.  Membership uses the
// closed form
//
//   x + iy in Q_{p,k}   <=>   x >= v - d^2 + y^2/(4 d^2)        (d > 0)
//                       <=>   y == 0  and  x >= v               (d = 0),
//
// obtained by minimizing over |Im z| <= d; the reduction is cross-checked
// against a brute-force search over z in the acceptance suite.
//
// Classification rules implemented here:
//   * spectrum(p,k) = Q_{p,k}, plus the isolated point {0} at the middle
//     degree when N is odd;
//   * for p > 2 every interior point of Q_{p,k} is an L^p eigenvalue, and
//     for p <= 2 no point is.

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace lpspec::regions {

inline constexpr double kRegionTol = 1e-12;  // comparison tolerance on region inequalities

// A candidate spectral value lambda = x + iy.
struct SpectralPoint {
    double re = 0.0;
    double im = 0.0;

    SpectralPoint() = default;
    SpectralPoint(double x, double y) : re(x), im(y) {
        if (!std::isfinite(x) || !std::isfinite(y))
            throw std::domain_error("SpectralPoint: components must be finite");
    }
    SpectralPoint(std::complex<double> z) : SpectralPoint(z.real(), z.imag()) {}
    std::complex<double> value() const { return {re, im}; }
};

// (N, k, p): region Q_{p,k} for the k-form Laplacian on H^{N+1}.
// p = infinity is representable and handled through duality.
struct RegionSpec {
    int N = 1;
    int k = 0;
    double p = 2.0;

    RegionSpec(int N_, int k_, double p_) : N(N_), k(k_), p(p_) {
        if (N < 1) throw std::domain_error("RegionSpec: N must be >= 1");
        if (k < 0 || k > N + 1) throw std::domain_error("RegionSpec: degree k out of [0, N+1]");
        if (!(p >= 1.0)) throw std::domain_error("RegionSpec: p must be >= 1");
    }
};

// Vertex/half-width data of the boundary parabola.
struct ParabolaGeometry {
    double vertex_v = 0.0;      // (N/2 - k')^2
    double half_width_d = 0.0;  // |N/p - N/2|; zero iff p == 2
};

enum class Mode { closed, interior };

// Conjugate exponent: 1/p + 1/p* = 1 (1 <-> infinity).
inline double dual_exponent(double p) {
    if (!(p >= 1.0)) throw std::domain_error("dual_exponent: p must be >= 1");
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

// Fold the degree below the middle: k' = min(k, N+1-k).
inline int reduce_degree(int N, int k) {
    if (k < 0 || k > N + 1) throw std::domain_error("reduce_degree: k out of [0, N+1]");
    return (2 * k <= N + 1) ? k : (N + 1 - k);
}

inline ParabolaGeometry parabola_geometry(const RegionSpec& spec) {
    const int kr = reduce_degree(spec.N, spec.k);
    ParabolaGeometry g;
    const double u = 0.5 * spec.N - kr;
    g.vertex_v = u * u;
    const double np = std::isinf(spec.p) ? 0.0 : spec.N / spec.p;
    g.half_width_d = std::abs(np - 0.5 * spec.N);
    return g;
}

// Boundary parabola P_{p,k}(s); exponents above 2 are folded to p* first.
inline SpectralPoint boundary_point(const RegionSpec& spec, double s) {
    double p = spec.p;
    if (p > 2.0) p = dual_exponent(p);
    const int kr = reduce_degree(spec.N, spec.k);
    const double np = spec.N / p;  // p <= 2 here, finite
    const std::complex<double> is(0.0, s);
    const std::complex<double> lhs = np + is - static_cast<double>(kr);
    const std::complex<double> rhs = spec.N * (1.0 / p - 1.0) + is + static_cast<double>(kr);
    return SpectralPoint(-lhs * rhs);
}

// Membership in Q_{p,k}.  `margin` shifts the boundary: closed queries
// accept up to `margin` outside, interior queries require at least `margin`
// of clearance (callers near the boundary should pass one explicitly).
inline bool contains(const RegionSpec& spec, const SpectralPoint& lambda, Mode mode,
                     double margin = 0.0) {
    const ParabolaGeometry g = parabola_geometry(spec);
    const double x = lambda.re, y = lambda.im;
    if (g.half_width_d == 0.0) {
        // p = 2: the region degenerates to the ray [v, inf) on the real axis
        if (mode == Mode::interior) return false;  // empty interior in C
        return std::abs(y) <= margin + kRegionTol && x >= g.vertex_v - margin - kRegionTol;
    }
    const double d2 = g.half_width_d * g.half_width_d;
    const double bound = g.vertex_v - d2 + y * y / (4.0 * d2);
    if (mode == Mode::closed) return x >= bound - margin - kRegionTol;
    return x > bound + margin + kRegionTol;
}

// sigma(p,k): the closed region, plus {0} at the middle degree for N odd.
inline bool spectrum_contains(const RegionSpec& spec, const SpectralPoint& lambda) {
    if (contains(spec, lambda, Mode::closed)) return true;
    const int kr = reduce_degree(spec.N, spec.k);
    const bool middle = (spec.N % 2 == 1) && (2 * kr == spec.N + 1);
    return middle && std::abs(lambda.re) <= kRegionTol && std::abs(lambda.im) <= kRegionTol;
}

// Eigenvalues: the interior of Q_{p,k} for p > 2; nothing for p <= 2.
inline bool is_lp_eigenvalue(const RegionSpec& spec, const SpectralPoint& lambda,
                             double margin = 0.0) {
    if (!(spec.p > 2.0)) return false;
    return contains(spec, lambda, Mode::interior, margin);
}

// (lambda_1, lambda_2) = ((N/2 - k' + 1)^2, (N/2 - k')^2): the bottoms of the
// two p = 2 eigenvalue families; the second is the bottom of the L^2 spectrum.
inline std::pair<double, double> bottom_values(int N, int k) {
    const int kr = reduce_degree(N, k);
    const double u = 0.5 * N - kr;
    return {(u + 1.0) * (u + 1.0), u * u};
}

// For N odd and middle degree, 0 lies outside Q_{p,k} exactly for
// 2N/(N+1) < p < 2N/(N-1); this window is where {0} is an isolated
// spectral point.
inline bool zero_excluded_window(int N, double p) {
    if (N % 2 == 0) throw std::domain_error("zero_excluded_window: N must be odd");
    const double lo = 2.0 * N / (N + 1.0);
    if (N == 1) return p > lo;  // upper endpoint 2N/(N-1) degenerates
    const double hi = 2.0 * N / (N - 1.0);
    return p > lo && p < hi;
}

}  // namespace lpspec::regions

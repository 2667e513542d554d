// radial_ode.hpp — the radial eigen-equation for co-closed sphere data on the
// ball model of H^{N+1}:
//
//   phi'' + (N - 2k) coth(r) phi' - lambda phi / sinh^2(r) + Lambda phi = 0,
//
// a regular-singular problem at r = 0 with indicial equation
// alpha(alpha - 1) + (N - 2k) alpha - lambda = 0.  The recessive-at-0 branch
// is started by a Frobenius series (even powers r^{alpha + 2m}) and continued
// by an adaptive embedded Runge-Kutta 5(4) integrator with logarithmic
// renormalization against overflow.
//
// At infinity the equation is asymptotically constant-coefficient with
// characteristic exponents -m +- lambda_o, m = (N - 2k)/2 and
//
//   lambda_o = sqrt(m^2 - x - i y) = a + i b,
//   a^2 = [ (m^2 - x) + sqrt((m^2 - x)^2 + y^2) ] / 2,  b = -y / (2a),
//
// so the generic solution grows like e^{(-m + a) r}.  growth_exponent fits
// that rate from the windowed-max envelope of |phi| (the envelope suppresses
// the e^{i b r} beat), and the L^p test  a < N(1/2 - 1/p)  (p > 2) classifies
// integrability; it agrees with interior membership in the spectral region.

#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace lpspec::radial {

using Complex = std::complex<double>;

enum class SphereMode { closed, coclosed };

// Eigenvalues of the k-form Laplacian on S^N:
//   closed:    (s + k)(s + N - k + 1)
//   co-closed: (N - k + s)(s + k + 1),  s = 0, 1, 2, ...
double sphere_eigenvalue(int N, int k, int s, SphereMode mode);

struct RadialProblem {
    int N = 3;
    int k = 1;
    double sphere_eig = 4.0;  // lambda: co-closed sphere eigenvalue (or override)
    Complex spectral{0.0, 0.0};  // Lambda

    double m() const { return 0.5 * (N - 2.0 * k); }
};

// problem at the s-th co-closed sphere eigenvalue
RadialProblem make_problem(int N, int k, int s, Complex spectral);

struct FrobeniusData {
    Complex alpha;                // larger indicial root
    std::vector<Complex> series;  // a_0, a_1, ... : phi = r^alpha sum a_m r^{2m}
};

// Indicial root with the larger real part (series empty).
FrobeniusData frobenius_index(int N, int k, double lambda);

// Frobenius start: series coefficients until the tail changes phi(r0) by
// less than 1e-14 relatively; requires r0 <= 0.3.
FrobeniusData frobenius_series(const RadialProblem& prob, double r0, int max_terms = 16);

// series value/derivatives at r (phi, phi', phi'')
struct SeriesEval {
    Complex phi, dphi, ddphi;
};
SeriesEval eval_series(const FrobeniusData& f, double r);

struct GrowthData {
    double a = 0.0;  // Re lambda_o >= 0
    double b = 0.0;  // Im lambda_o
};

// closed-form lambda_o from the spectral parameter
GrowthData lambda_o(Complex spectral, double m);

struct Profile {
    std::vector<double> r;         // strictly increasing, geometric spacing
    std::vector<Complex> phi;      // renormalized samples
    std::vector<Complex> dphi;
    std::vector<double> log_offset;  // true phi = phi * e^{log_offset}

    double log_abs_phi(std::size_t i) const {
        return std::log(std::abs(phi[i])) + log_offset[i];
    }
};

struct IntegrateOptions {
    double r0 = 1e-3;   // Frobenius handoff point (<= 0.3)
    double tol = 1e-10; // local error tolerance per step
    int samples = 1200; // geometric output grid size
    Complex scale{1.0, 0.0};  // multiplies the series start (linearity checks)
};

// recessive-at-0 solution on [r0, R]
Profile integrate(const RadialProblem& prob, double R, const IntegrateOptions& opt = {});

// Least-squares slope of the windowed-max envelope of log|phi| over
// [fit_lo, fit_hi]; osc_period > 0 sets the window from the expected beat.
struct SlopeFit {
    double slope = 0.0;
    double residual = 0.0;  // rms deviation of envelope points from the line
    double fit_lo = 0.0, fit_hi = 0.0;
    bool window_ok = true;  // false when the envelope fit is too oscillatory
};
SlopeFit growth_exponent(const Profile& prof, double fit_lo, double fit_hi,
                         double osc_period = 0.0);

// a < N (1/2 - 1/p), p > 2 (1e-12 interior slack; boundary equality excluded)
bool is_lp_integrable(Complex spectral, double p, int N, int k);

// One growth-oracle run: fitted slope vs the closed form -m + a.
struct GrowthCheck {
    Complex spectral;
    GrowthData closed_form;
    double slope_expected = 0.0;
    double slope_fitted = 0.0;
    double fit_residual = 0.0;
    bool flagged = false;  // envelope fit disagreed or was too oscillatory
};
GrowthCheck growth_check(const RadialProblem& prob, double R = 200.0,
                         const IntegrateOptions& opt = {});

}  // namespace lpspec::radial

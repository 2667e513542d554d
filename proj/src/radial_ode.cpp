#include "lpspec/radial_ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace lpspec::radial {

namespace {

// Laurent data at r = 0:
//   coth r      = 1/r + sum_{j>=1} c_j r^{2j-1}
//   1/sinh^2 r  = 1/r^2 + sum_{j>=0} s_j r^{2j},   s_j = -(2j+1) c_{j+1}
constexpr std::array<double, 7> kCoth = {0.0,  // unused index 0
                                         1.0 / 3.0,
                                         -1.0 / 45.0,
                                         2.0 / 945.0,
                                         -1.0 / 4725.0,
                                         2.0 / 93555.0,
                                         -1382.0 / 638512875.0};

double coth_coeff(int j) { return kCoth[static_cast<std::size_t>(j)]; }
double sinh2_coeff(int j) { return -(2.0 * j + 1.0) * coth_coeff(j + 1); }

double stable_coth(double r) {
    if (r > 20.0) {
        const double e = std::exp(-2.0 * r);
        return 1.0 + 2.0 * e / (1.0 - e);
    }
    return 1.0 / std::tanh(r);
}

double stable_inv_sinh2(double r) {
    if (r > 20.0) {
        const double e = std::exp(-2.0 * r);
        const double q = 1.0 - e;
        return 4.0 * e / (q * q);
    }
    const double s = std::sinh(r);
    return 1.0 / (s * s);
}

}  // namespace

double sphere_eigenvalue(int N, int k, int s, SphereMode mode) {
    if (k < 0 || k > N) throw std::domain_error("sphere_eigenvalue: degree out of [0, N]");
    if (s < 0) throw std::domain_error("sphere_eigenvalue: s must be >= 0");
    if (mode == SphereMode::closed)
        return (s + static_cast<double>(k)) * (s + static_cast<double>(N - k) + 1.0);
    return (static_cast<double>(N - k) + s) * (s + static_cast<double>(k) + 1.0);
}

RadialProblem make_problem(int N, int k, int s, Complex spectral) {
    RadialProblem p;
    p.N = N;
    p.k = k;
    p.sphere_eig = sphere_eigenvalue(N, k, s, SphereMode::coclosed);
    p.spectral = spectral;
    return p;
}

FrobeniusData frobenius_index(int N, int k, double lambda) {
    // alpha(alpha - 1) + (N - 2k) alpha - lambda = 0, root of larger real part
    const double beta = static_cast<double>(N - 2 * k);
    const Complex disc = (beta - 1.0) * (beta - 1.0) + 4.0 * lambda;
    const Complex root = std::sqrt(disc);
    FrobeniusData f;
    f.alpha = 0.5 * (-(beta - 1.0) + root);
    return f;
}

FrobeniusData frobenius_series(const RadialProblem& prob, double r0, int max_terms) {
    if (!(r0 > 0.0 && r0 <= 0.3))
        throw std::domain_error("frobenius_series: need 0 < r0 <= 0.3");
    const double beta = static_cast<double>(prob.N - 2 * prob.k);
    const double lambda = prob.sphere_eig;
    FrobeniusData f = frobenius_index(prob.N, prob.k, lambda);
    const Complex alpha = f.alpha;
    auto indicial = [&](Complex x) { return x * (x - 1.0) + beta * x - lambda; };

    f.series.assign(1, Complex{1.0, 0.0});
    const double r2 = r0 * r0;
    double rpow = 1.0;
    Complex partial{1.0, 0.0};
    for (int M = 1; M < max_terms; ++M) {
        Complex rhs{};
        rhs += prob.spectral * f.series[static_cast<std::size_t>(M - 1)];
        for (int j = 1; j <= std::min(M, 6); ++j)
            rhs += beta * coth_coeff(j) * (alpha + 2.0 * (M - j)) *
                   f.series[static_cast<std::size_t>(M - j)];
        for (int j = 0; j <= std::min(M - 1, 5); ++j)
            rhs -= lambda * sinh2_coeff(j) * f.series[static_cast<std::size_t>(M - 1 - j)];
        const Complex aM = -rhs / indicial(alpha + 2.0 * M);
        f.series.push_back(aM);
        rpow *= r2;
        partial += aM * rpow;
        if (std::abs(aM) * rpow <= 1e-14 * std::abs(partial)) break;
    }
    return f;
}

SeriesEval eval_series(const FrobeniusData& f, double r) {
    SeriesEval e{};
    const Complex ralpha = std::exp(f.alpha * std::log(r));
    double rpow = 1.0;
    for (std::size_t m = 0; m < f.series.size(); ++m) {
        const Complex expo = f.alpha + 2.0 * static_cast<double>(m);
        const Complex term = f.series[m] * rpow;
        e.phi += term;
        e.dphi += term * expo / r;
        e.ddphi += term * expo * (expo - 1.0) / (r * r);
        rpow *= r * r;
    }
    e.phi *= ralpha;
    e.dphi *= ralpha;
    e.ddphi *= ralpha;
    return e;
}

GrowthData lambda_o(Complex spectral, double m) {
    const double x = spectral.real(), y = spectral.imag();
    const double d = m * m - x;
    GrowthData g;
    const double a2 = 0.5 * (d + std::hypot(d, y));
    g.a = (a2 > 0.0) ? std::sqrt(a2) : 0.0;
    if (g.a > 0.0)
        g.b = -y / (2.0 * g.a);
    else
        g.b = std::sqrt(Complex(d, -y)).imag();
    return g;
}

namespace {

struct State {
    Complex phi, dphi;
};

State axpy(const State& s, double h, const State& d) {
    return {s.phi + h * d.phi, s.dphi + h * d.dphi};
}

double state_norm(const State& s) { return std::max(std::abs(s.phi), std::abs(s.dphi)); }

}  // namespace

Profile integrate(const RadialProblem& prob, double R, const IntegrateOptions& opt) {
    if (!(R > opt.r0)) throw std::domain_error("integrate: need R > r0");
    if (!(opt.tol > 0.0)) throw std::domain_error("integrate: tol must be > 0");
    if (opt.samples < 8) throw std::domain_error("integrate: need >= 8 samples");
    const double beta = static_cast<double>(prob.N - 2 * prob.k);
    const double lambda = prob.sphere_eig;
    const Complex Lambda = prob.spectral;

    auto rhs = [&](double r, const State& s) -> State {
        return {s.dphi, -beta * stable_coth(r) * s.dphi +
                            (lambda * stable_inv_sinh2(r) - Lambda) * s.phi};
    };

    const FrobeniusData series = frobenius_series(prob, opt.r0);
    const SeriesEval start = eval_series(series, opt.r0);
    State y{opt.scale * start.phi, opt.scale * start.dphi};

    Profile out;
    out.r.resize(static_cast<std::size_t>(opt.samples));
    out.phi.resize(out.r.size());
    out.dphi.resize(out.r.size());
    out.log_offset.resize(out.r.size());
    const double ratio = R / opt.r0;
    for (int i = 0; i < opt.samples; ++i)
        out.r[static_cast<std::size_t>(i)] =
            opt.r0 * std::pow(ratio, static_cast<double>(i) / (opt.samples - 1));
    out.r.front() = opt.r0;
    out.r.back() = R;

    // Dormand-Prince 5(4) with PI-free step control
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    double r = opt.r0;
    double log_off = 0.0;
    double h = 0.05 * opt.r0;
    std::size_t next = 0;

    long long step_budget = 40'000'000;
    while (next < out.r.size()) {
        if (r >= out.r[next] - 1e-14 * (1.0 + r)) {
            out.phi[next] = y.phi;
            out.dphi[next] = y.dphi;
            out.log_offset[next] = log_off;
            ++next;
            continue;
        }
        double hstep = std::min(h, out.r[next] - r);
        bool accepted = false;
        while (!accepted) {
            if (--step_budget <= 0) throw std::runtime_error("integrate: step budget exhausted");
            const State k1 = rhs(r, y);
            const State k2 = rhs(r + c2 * hstep, axpy(y, hstep * a21, k1));
            State tmp = axpy(axpy(y, hstep * a31, k1), hstep * a32, k2);
            const State k3 = rhs(r + c3 * hstep, tmp);
            tmp = axpy(axpy(axpy(y, hstep * a41, k1), hstep * a42, k2), hstep * a43, k3);
            const State k4 = rhs(r + c4 * hstep, tmp);
            tmp = axpy(axpy(axpy(axpy(y, hstep * a51, k1), hstep * a52, k2), hstep * a53, k3),
                       hstep * a54, k4);
            const State k5 = rhs(r + c5 * hstep, tmp);
            tmp = axpy(axpy(axpy(axpy(axpy(y, hstep * a61, k1), hstep * a62, k2), hstep * a63, k3),
                            hstep * a64, k4),
                       hstep * a65, k5);
            const State k6 = rhs(r + hstep, tmp);
            State y5 = axpy(axpy(axpy(axpy(axpy(y, hstep * b1, k1), hstep * b3, k3), hstep * b4, k4),
                                 hstep * b5, k5),
                            hstep * b6, k6);
            const State k7 = rhs(r + hstep, y5);
            State err{};
            err = axpy(err, hstep * e1, k1);
            err = axpy(err, hstep * e3, k3);
            err = axpy(err, hstep * e4, k4);
            err = axpy(err, hstep * e5, k5);
            err = axpy(err, hstep * e6, k6);
            err = axpy(err, hstep * e7, k7);
            const double sc = 1e-280 + opt.tol * std::max(state_norm(y), state_norm(y5));
            const double erat = state_norm(err) / sc;
            if (erat <= 1.0) {
                r += hstep;
                y = y5;
                accepted = true;
            }
            const double fac = std::clamp(0.9 * std::pow(std::max(erat, 1e-10), -0.2), 0.2, 5.0);
            h = hstep * fac;
            if (!accepted) hstep = h;
            if (h < 1e-13 * (1.0 + r))
                throw std::runtime_error("integrate: tolerance unreachable (step underflow)");
        }
        // logarithmic renormalization against overflow
        const double mag = state_norm(y);
        if (mag > 1e120) {
            y.phi /= mag;
            y.dphi /= mag;
            log_off += std::log(mag);
        }
    }
    return out;
}

SlopeFit growth_exponent(const Profile& prof, double fit_lo, double fit_hi, double osc_period) {
    SlopeFit fit;
    fit.fit_lo = fit_lo;
    fit.fit_hi = fit_hi;
    if (!(fit_hi > fit_lo)) throw std::domain_error("growth_exponent: empty fit window");
    const double span = fit_hi - fit_lo;
    double seg = span / 12.0;
    if (osc_period > 0.0) seg = std::clamp(osc_period, seg, span / 4.0);

    // windowed maxima of log|phi|
    std::vector<double> xs, vs;
    std::size_t i = 0;
    while (i < prof.r.size() && prof.r[i] < fit_lo) ++i;
    while (i < prof.r.size() && prof.r[i] <= fit_hi) {
        const double seg_end = std::min(prof.r[i] + seg, fit_hi + 1e-12);
        double best_v = -1e308, best_r = prof.r[i];
        while (i < prof.r.size() && prof.r[i] <= seg_end) {
            const double v = prof.log_abs_phi(i);
            if (v > best_v) {
                best_v = v;
                best_r = prof.r[i];
            }
            ++i;
        }
        xs.push_back(best_r);
        vs.push_back(best_v);
    }
    if (xs.size() < 3) throw std::domain_error("growth_exponent: too few envelope points");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) {
        sx += xs[j];
        sy += vs[j];
        sxx += xs[j] * xs[j];
        sxy += xs[j] * vs[j];
    }
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icpt = (sy - fit.slope * sx) / n;
    double rss = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        const double d = vs[j] - (fit.slope * xs[j] + icpt);
        rss += d * d;
    }
    fit.residual = std::sqrt(rss / n);
    fit.window_ok = fit.residual <= 0.2;
    return fit;
}

bool is_lp_integrable(Complex spectral, double p, int N, int k) {
    if (!(p > 2.0)) throw std::domain_error("is_lp_integrable: the criterion requires p > 2");
    const double m = 0.5 * (N - 2.0 * k);
    return lambda_o(spectral, m).a < N * (0.5 - 1.0 / p) - 1e-12;
}

GrowthCheck growth_check(const RadialProblem& prob, double R, const IntegrateOptions& opt) {
    GrowthCheck g;
    g.spectral = prob.spectral;
    g.closed_form = lambda_o(prob.spectral, prob.m());
    g.slope_expected = -prob.m() + g.closed_form.a;
    // the geometric grid must resolve the e^{ibr} beat near r = R
    IntegrateOptions o = opt;
    const int dense = static_cast<int>(40.0 * R * std::max(1.0, std::abs(g.closed_form.b)));
    o.samples = std::clamp(std::max(o.samples, dense), 2000, 100000);
    const Profile prof = integrate(prob, R, o);
    const double period = (g.closed_form.b != 0.0) ? M_PI / std::abs(g.closed_form.b) : 0.0;
    const SlopeFit fit = growth_exponent(prof, 0.6 * R, 0.99 * R, period);
    g.slope_fitted = fit.slope;
    g.fit_residual = fit.residual;
    g.flagged = !fit.window_ok;
    return g;
}

}  // namespace lpspec::radial

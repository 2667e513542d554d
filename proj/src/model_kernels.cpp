#include "lpspec/model_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "lpspec/quadrature.hpp"

namespace lpspec::kernels {

namespace {
double urand(std::mt19937_64& rng, double lo, double hi) {
    const double t = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * t;
}
}  // namespace

// --- heat kernel --------------------------------------------------------------

double h3_heat(double t, double r) {
    if (!(t > 0.0)) throw std::domain_error("h3_heat: t must be > 0");
    if (r < 0.0) throw std::domain_error("h3_heat: r must be >= 0");
    const double pref = std::pow(4.0 * M_PI * t, -1.5);
    const double ratio = (r < 1e-8) ? 1.0 / (1.0 + r * r / 6.0) : r / std::sinh(r);
    return pref * ratio * std::exp(-t - r * r / (4.0 * t));
}

namespace {
double heat_r_cutoff(double t) { return 2.0 * t + 20.0 * std::sqrt(t) + 60.0; }
}  // namespace

double h3_heat_mass(double t) {
    return integrate_adaptive(
        [&](double r) {
            const double s = std::sinh(r);
            return h3_heat(t, r) * 4.0 * M_PI * s * s;
        },
        0.0, heat_r_cutoff(t), {1e-11, 1e-11, 400000});
}

double h3_semigroup_diag(double s, double t) {
    const double rmax = heat_r_cutoff(std::min(s, t));
    return integrate_adaptive(
        [&](double r) {
            const double sh = std::sinh(r);
            return h3_heat(s, r) * h3_heat(t, r) * 4.0 * M_PI * sh * sh;
        },
        0.0, rmax, {1e-12, 1e-11, 400000});
}

// --- Gaussian upper bound -------------------------------------------------------

double h3_ball_volume(double rho) {
    if (!(rho > 0.0)) throw std::domain_error("h3_ball_volume: radius must be > 0");
    return M_PI * std::sinh(2.0 * rho) - 2.0 * M_PI * rho;
}

namespace {

double log_h3_heat(double t, double r) {
    const double log_ratio =
        (r < 1e-8) ? -std::log1p(r * r / 6.0)
                   : std::log(r) - (r - M_LN2 + std::log1p(-std::exp(-2.0 * r)));
    return -1.5 * std::log(4.0 * M_PI * t) + log_ratio - t - r * r / (4.0 * t);
}

// log of h / (vol^{-1} e^{sqrt(2t)} e^{-r^2/(C2 t)}), evaluated without
// under/overflow so bad C2 values surface as huge finite ratios
double log_gaussian_ratio(double t, double r, double C2) {
    return log_h3_heat(t, r) + std::log(h3_ball_volume(std::sqrt(t))) - std::sqrt(2.0 * t) +
           r * r / (C2 * t);
}

double max_log_gaussian_ratio(std::span<const double> ts, std::span<const double> rs, double C2) {
    double m = -1e308;
    for (double t : ts)
        for (double r : rs) m = std::max(m, log_gaussian_ratio(t, r, C2));
    return m;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return v;
}

std::vector<double> lin_spaced(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1.0);
    return v;
}

}  // namespace

GaussianBoundResult gaussian_bound_check(double C2_cap) {
    GaussianBoundResult res;
    const auto t_build = log_spaced(1e-2, 10.0, 25);
    const auto r_build = lin_spaced(0.0, 12.0, 49);
    const auto t_val = log_spaced(8e-3, 12.0, 61);
    const auto r_val = lin_spaced(0.0, 16.0, 161);
    // a pair (C1, C2) counts as feasible only when the sup-ratio constant is
    // an honest O(1) number and survives the denser validation grid
    const double log_C1_cap = std::log(1e6);
    auto scan = [&](std::span<const double> tb, std::span<const double> tv, bool& ok, double& c2min,
                    double* c1out) {
        for (double C2 = 2.0; C2 <= C2_cap + 1e-9; C2 += 0.05) {
            const double logC1 = std::log(1.02) + max_log_gaussian_ratio(tb, r_build, C2);
            if (logC1 > log_C1_cap) continue;
            if (max_log_gaussian_ratio(tv, r_val, C2) <= logC1) {
                ok = true;
                c2min = C2;
                if (c1out) *c1out = std::exp(logC1);
                return;
            }
        }
        ok = false;
    };
    scan(t_build, t_val, res.feasible, res.C2_min, &res.C1);
    // small-time sub-grid
    const auto t_build_s = log_spaced(1e-2, 0.1, 15);
    const auto t_val_s = log_spaced(8e-3, 0.12, 41);
    scan(t_build_s, t_val_s, res.small_time_feasible, res.small_time_C2, nullptr);
    return res;
}

// --- resolvent -------------------------------------------------------------------

double resolvent_kernel(const ResolventParams& params, double r) {
    const double m = params.m_pow, xi = params.xi;
    if (!(m > 0.0)) throw std::domain_error("resolvent_kernel: m must be > 0");
    if (!(xi > 0.0)) throw std::domain_error("resolvent_kernel: xi must be > 0");
    if (!(r > 0.0)) throw std::domain_error("resolvent_kernel: r must be > 0 (on-diagonal blowup)");
    // substitution t = tau^2 regularizes the t^{m-1} endpoint for m < 1; the
    // tolerance is purely relative (the integral is exponentially small in r)
    const double tau_max = 8.0 / xi + 3.0;
    const double val = integrate_adaptive(
        [&](double tau) {
            const double t = tau * tau;
            if (t == 0.0) return 0.0;
            return 2.0 * std::pow(tau, 2.0 * m - 1.0) * std::exp(-xi * xi * t) * h3_heat(t, r);
        },
        0.0, tau_max, {1e-300, 1e-10, 400000});
    return val / std::tgamma(m);
}

double resolvent_mass(const ResolventParams& params) {
    const double decay = std::sqrt(params.xi * params.xi + 1.0) - 1.0;
    const double rmax = 3.0 + 80.0 / decay;
    return integrate_adaptive(
        [&](double r) {
            if (r == 0.0) return 0.0;
            const double s = std::sinh(r);
            return resolvent_kernel(params, r) * 4.0 * M_PI * s * s;
        },
        0.0, rmax, {1e-9, 5e-9, 200000});
}

// --- trade inequality ---------------------------------------------------------

bool impo_check(double sigma, double d, double t, double C2) {
    if (!(sigma > 0.0 && t > 0.0 && C2 > 0.0 && d >= 0.0))
        throw std::domain_error("impo_check: need sigma, t, C2 > 0 and d >= 0");
    const double lhs = -d * d / (4.0 * C2 * t) - sigma * sigma * t;
    const double rhs = -sigma * d / std::sqrt(C2);
    return lhs <= rhs + 1e-12 * (1.0 + std::abs(lhs) + std::abs(rhs));
}

// --- Schur / Young ---------------------------------------------------------------

SchurCheck schur_bound_check(int n_kernels, int n_vectors, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SchurCheck out;
    const int M = 24;
    for (int trial = 0; trial < n_kernels; ++trial) {
        const double rstar = (trial % 3 == 0) ? 1.0 : (trial % 3 == 1 ? 1.5 : 2.0);
        const double p_hi = (rstar == 1.0) ? 4.0 : rstar / (rstar - 1.0);
        const double p = urand(rng, 1.0, std::min(p_hi, 4.0) - 0.05);
        const double qinv = 1.0 / p + 1.0 / rstar - 1.0;
        if (qinv <= 1e-6) continue;
        const double q = 1.0 / qinv;

        std::vector<double> w(M), K(static_cast<std::size_t>(M) * M);
        for (auto& wi : w) wi = urand(rng, 0.5, 1.5);
        for (auto& kij : K) {
            const double u = urand(rng, 0.0, 1.0);
            kij = -std::log(1.0 - 0.999 * u);  // exp(1)-ish nonnegative entries
        }
        double c_row = 0.0, c_col = 0.0;
        for (int i = 0; i < M; ++i) {
            double srow = 0.0, scol = 0.0;
            for (int j = 0; j < M; ++j) {
                srow += std::pow(K[static_cast<std::size_t>(i) * M + j], rstar) * w[static_cast<std::size_t>(j)];
                scol += std::pow(K[static_cast<std::size_t>(j) * M + i], rstar) * w[static_cast<std::size_t>(j)];
            }
            c_row = std::max(c_row, std::pow(srow, 1.0 / rstar));
            c_col = std::max(c_col, std::pow(scol, 1.0 / rstar));
        }
        const double C = std::max(c_row, c_col);

        auto norm = [&](const std::vector<double>& v, double expo) {
            double s = 0.0;
            for (int i = 0; i < M; ++i)
                s += std::pow(std::abs(v[static_cast<std::size_t>(i)]), expo) *
                     w[static_cast<std::size_t>(i)];
            return std::pow(s, 1.0 / expo);
        };
        for (int vtrial = 0; vtrial < n_vectors; ++vtrial) {
            std::vector<double> omega(M), timg(M, 0.0);
            for (auto& o : omega) o = urand(rng, -1.0, 1.0);
            for (int i = 0; i < M; ++i)
                for (int j = 0; j < M; ++j)
                    timg[static_cast<std::size_t>(i)] += K[static_cast<std::size_t>(i) * M + j] *
                                                         omega[static_cast<std::size_t>(j)] *
                                                         w[static_cast<std::size_t>(j)];
            const double ratio = norm(timg, q) / (C * norm(omega, p));
            out.max_ratio = std::max(out.max_ratio, ratio);
            out.violations += (ratio > 1.0 + 1e-12);
            ++out.trials;
        }
    }
    return out;
}

// --- volume growth -----------------------------------------------------------------

double log_ball_volume(int N, double R) {
    if (N < 1) throw std::domain_error("log_ball_volume: N must be >= 1");
    if (!(R > 0.0)) throw std::domain_error("log_ball_volume: R must be > 0");
    // area of the unit N-sphere
    const double log_omega =
        std::log(2.0) + 0.5 * (N + 1.0) * std::log(M_PI) - std::lgamma(0.5 * (N + 1.0));
    const int cells = std::max(16, static_cast<int>(2.0 * R));
    const CompositeRule rule = CompositeRule::uniform(0.0, R, cells, 12);
    LogAccumulator acc;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double rho = rule.x[i];
        if (rho <= 0.0) continue;
        const double logsinh = (rho > 30.0)
                                   ? rho - M_LN2 + std::log1p(-std::exp(-2.0 * rho))
                                   : std::log(std::sinh(rho));
        acc.add(std::log(rule.w[i]) + N * logsinh);
    }
    return log_omega + acc.log_value();
}

VolumeGrowthResult volume_growth(int N, std::span<const double> R_grid, double eps) {
    if (R_grid.size() < 2) throw std::domain_error("volume_growth: need >= 2 grid radii");
    VolumeGrowthResult res;
    std::vector<double> logs(R_grid.size());
    for (std::size_t i = 0; i < R_grid.size(); ++i) logs[i] = log_ball_volume(N, R_grid[i]);
    res.rate_at_R = logs.back() / R_grid.back();

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(R_grid.size());
    for (std::size_t i = 0; i < R_grid.size(); ++i) {
        sx += R_grid[i];
        sy += logs[i];
        sxx += R_grid[i] * R_grid[i];
        sxy += R_grid[i] * logs[i];
    }
    res.fitted_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    // smallest C(eps) with vol(B_R) <= C vol(B_1) e^{(N + eps) R}: the excess
    // log vol - (N + eps) R peaks at small R (slope (N+1)/R there), so fit over
    // a dense scan of the whole range, then validate on a shifted denser grid
    const double log_vol1 = log_ball_volume(N, 1.0);
    double logC = -1e308;
    const int n_fit = 400;
    for (int i = 0; i < n_fit; ++i) {
        const double R =
            R_grid.front() + (R_grid.back() - R_grid.front()) * i / (n_fit - 1.0);
        logC = std::max(logC, log_ball_volume(N, R) - log_vol1 - (N + eps) * R);
    }
    logC += std::log(1.005);  // headroom for the scan resolution
    res.fitted_C = std::exp(logC);

    res.bound_holds = true;
    const int n_val = 1001;
    for (int i = 0; i < n_val; ++i) {
        const double R = R_grid.front() +
                         (R_grid.back() - R_grid.front()) * (i + 0.37) / n_val;
        const double lhs = log_ball_volume(N, R);
        if (lhs > logC + log_vol1 + (N + eps) * R) {
            res.bound_holds = false;
            break;
        }
    }
    return res;
}

// --- radial wave cone ------------------------------------------------------------

WaveConeResult wave_cone_check(const WaveParams& wp) {
    if (!(wp.h > 0.0 && wp.T > 0.0 && wp.R > 0.0))
        throw std::domain_error("wave_cone_check: bad parameters");
    const double sponge_lo = wp.R - 0.75;
    if (wp.r0 + wp.delta + wp.T + 1.0 > sponge_lo)
        throw std::domain_error("wave_cone_check: T too large, wave would reach the boundary pad");
    if (wp.r0 - wp.delta - wp.T < 0.5)
        throw std::domain_error("wave_cone_check: inner front would reach the origin");

    const int M = static_cast<int>(std::round(wp.R / wp.h));
    const double h = wp.R / M;
    const int steps = static_cast<int>(std::ceil(wp.T / (0.5 * h)));
    const double dt = wp.T / steps;  // CFL: dt <= h/2 by construction

    std::vector<double> u0(static_cast<std::size_t>(M) + 1), u1, coth(u0.size()),
        sponge(u0.size(), 0.0);
    for (int i = 1; i <= M; ++i) coth[static_cast<std::size_t>(i)] = 1.0 / std::tanh(i * h);
    for (int i = 0; i <= M; ++i) {
        const double r = i * h;
        if (r > sponge_lo) {
            const double s = (r - sponge_lo) / (wp.R - sponge_lo);
            sponge[static_cast<std::size_t>(i)] = 8.0 * s * s;
        }
        const double s = (r - wp.r0) / wp.delta;
        u0[static_cast<std::size_t>(i)] =
            (std::abs(s) < 1.0) ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
    }

    auto lap = [&](const std::vector<double>& u, int i) {
        if (i == 0) return (wp.N + 1.0) * 2.0 * (u[1] - u[0]) / (h * h);
        if (i == M) return 2.0 * (u[static_cast<std::size_t>(M - 1)] - u[static_cast<std::size_t>(M)]) / (h * h);
        const double urr = (u[static_cast<std::size_t>(i + 1)] - 2.0 * u[static_cast<std::size_t>(i)] +
                            u[static_cast<std::size_t>(i - 1)]) /
                           (h * h);
        const double ur = (u[static_cast<std::size_t>(i + 1)] - u[static_cast<std::size_t>(i - 1)]) / (2.0 * h);
        return urr + wp.N * coth[static_cast<std::size_t>(i)] * ur;
    };

    // energy with weight sinh^N(r) dr
    std::vector<double> weight(u0.size());
    for (int i = 0; i <= M; ++i)
        weight[static_cast<std::size_t>(i)] = std::pow(std::sinh(i * h), wp.N) * h;
    auto energy_density = [&](const std::vector<double>& ua, const std::vector<double>& ub, int i) {
        const double v = (ub[static_cast<std::size_t>(i)] - ua[static_cast<std::size_t>(i)]) / dt;
        double ur;
        if (i == 0 || i == M)
            ur = 0.0;
        else
            ur = (ub[static_cast<std::size_t>(i + 1)] - ub[static_cast<std::size_t>(i - 1)]) / (2.0 * h);
        return 0.5 * (v * v + ur * ur) * weight[static_cast<std::size_t>(i)];
    };

    WaveConeResult out;
    for (int i = 1; i < M; ++i) {
        const double ur = (u0[static_cast<std::size_t>(i + 1)] - u0[static_cast<std::size_t>(i - 1)]) / (2.0 * h);
        out.initial_energy += 0.5 * ur * ur * weight[static_cast<std::size_t>(i)];
    }

    // Taylor start (u_t = 0), then leapfrog with sponge damping
    u1 = u0;
    for (int i = 0; i <= M; ++i)
        u1[static_cast<std::size_t>(i)] += 0.5 * dt * dt * lap(u0, i);
    std::vector<double> um = u0, uc = u1, un(u0.size());
    for (int n = 1; n < steps; ++n) {
        for (int i = 0; i <= M; ++i) {
            const std::size_t I = static_cast<std::size_t>(i);
            un[I] = 2.0 * uc[I] - um[I] + dt * dt * lap(uc, i) -
                    sponge[I] * dt * (uc[I] - um[I]);
        }
        std::swap(um, uc);
        std::swap(uc, un);
    }

    out.margin_used = (wp.margin > 0.0) ? wp.margin : std::max(5.0 * h, 5e-3);
    const double lo = wp.r0 - wp.delta - wp.T - out.margin_used;
    const double hi = wp.r0 + wp.delta + wp.T + out.margin_used;
    double outside = 0.0;
    for (int i = 1; i < M; ++i) {
        const double r = i * h;
        if (r > sponge_lo) continue;  // the pad is excluded from the check window
        if (r >= lo && r <= hi) continue;
        outside += energy_density(um, uc, i);
    }
    out.outside_fraction = outside / out.initial_energy;
    return out;
}

// --- scalar lemmas ------------------------------------------------------------------

SmoothFunction resolvent_symbol(Complex z) {
    const Complex z2 = z * z;
    return [z2](int order, double s) {
        Complex v = 1.0 / (s - z2);
        double fact = 1.0;
        for (int j = 1; j <= order; ++j) {
            fact *= -j;
            v /= (s - z2);
        }
        return fact * v;
    };
}

SmoothFunction simple_pole(double a) {
    return [a](int order, double s) {
        Complex v = 1.0 / (s + a);
        double fact = 1.0;
        for (int j = 1; j <= order; ++j) {
            fact *= -j;
            v /= (s + a);
        }
        return fact * v;
    };
}

SmoothFunction cubic_poly() {
    return [](int order, double s) -> Complex {
        switch (order) {
            case 0: return s * s * s - 2.0 * s + 1.0;
            case 1: return 3.0 * s * s - 2.0;
            case 2: return 6.0 * s;
            case 3: return 6.0;
            default: return 0.0;
        }
    };
}

double taylor_remainder_check(const SmoothFunction& g, double alpha, int n_terms, double x) {
    if (!(alpha > 0.0)) throw std::domain_error("taylor_remainder_check: alpha must be > 0");
    if (n_terms < 1) throw std::domain_error("taylor_remainder_check: need n_terms >= 1");
    Complex sum{};
    double apow = 1.0, fact = 1.0;
    for (int j = 0; j < n_terms; ++j) {
        if (j > 0) {
            apow *= alpha;
            fact *= j;
        }
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        sum += sign * apow / fact * g(j, x + alpha);
    }
    double fnm1 = 1.0;
    for (int j = 1; j <= n_terms - 1; ++j) fnm1 *= j;
    const Complex bn = std::pow(alpha, n_terms) / fnm1 *
                       integrate_adaptive_complex(
                           [&](double t) {
                               return g(n_terms, x + t * alpha) * std::pow(t, n_terms - 1);
                           },
                           0.0, 1.0, {1e-13, 1e-13});
    const double sign_n = (n_terms % 2 == 0) ? 1.0 : -1.0;
    return std::abs(g(0, x) - (sum + sign_n * bn));
}

FourierDecayResult fourier_decay_check(double c, double gamma0, double eps0) {
    if (!(c > 0.5 * gamma0 + eps0))
        throw std::domain_error("fourier_decay_check: need c > gamma0/2 + eps0");
    FourierDecayResult out;
    out.lemma_bound_holds = true;
    const double T = 2000.0;
    for (double xi = 0.0; xi <= 10.0 + 1e-9; xi += 0.5) {
        double numeric;
        if (xi == 0.0) {
            const double body = 2.0 * integrate_adaptive(
                                          [&](double t) { return 1.0 / (t * t + c * c); }, 0.0, T,
                                          {1e-12, 1e-12});
            numeric = body + 2.0 * (0.5 * M_PI - std::atan(T / c)) / c;  // exact arctan tail
        } else {
            const double width = std::min(0.5, 0.25 * M_PI / xi);
            const int cells = static_cast<int>(std::ceil(T / width));
            const CompositeRule rule = CompositeRule::uniform(0.0, T, cells, 6);
            std::vector<double> vals(rule.x.size());
            for (std::size_t i = 0; i < rule.x.size(); ++i) {
                const double t = rule.x[i];
                vals[i] = rule.w[i] * std::cos(xi * t) / (t * t + c * c);
            }
            double body = 2.0 * CompositeRule::pairwise_sum(std::span<const double>(vals));
            // two integrations by parts for the oscillatory tail:
            //   int_T^inf cos(xi t) f dt = -sin(xi T) f(T)/xi - cos(xi T) f'(T)/xi^2 + O(f''/xi^2)
            const double f = 1.0 / (T * T + c * c);
            const double fp = -2.0 * T * f * f;
            body += 2.0 * (-std::sin(xi * T) * f / xi - std::cos(xi * T) * fp / (xi * xi));
            numeric = body;
        }
        const double closed = M_PI / c * std::exp(-c * xi);
        out.max_abs_err = std::max(out.max_abs_err, std::abs(numeric - closed));
        const double lemma = M_PI / c * std::exp(-(0.5 * gamma0 + 0.5 * eps0) * xi);
        if (std::abs(numeric) > lemma * (1.0 + 1e-9)) out.lemma_bound_holds = false;
    }
    return out;
}

SymbolDecayResult symbol_decay_check(Complex z, int j_max) {
    if (std::abs(z.imag()) <= 0.0)
        throw std::domain_error("symbol_decay_check: need Im z != 0");
    SymbolDecayResult out;
    const SmoothFunction g = resolvent_symbol(z);
    const double X = 50.0, tau0 = 0.45;
    auto sup_on = [&](int j, int nx, int ntau, double x_lo) {
        double sup = 0.0;
        for (int ix = 0; ix < nx; ++ix)
            for (int it = 0; it < ntau; ++it) {
                const double x = x_lo + (X - x_lo) * ix / (nx - 1.0);
                const double tau = -tau0 + 2.0 * tau0 * it / (ntau - 1.0);
                const Complex w(x, tau);
                const Complex w2 = w * w;
                // g^{(j)} evaluated at the complex point w^2
                Complex v = 1.0 / (w2 - z * z);
                double fact = 1.0;
                for (int l = 1; l <= j; ++l) {
                    fact *= -l;
                    v /= (w2 - z * z);
                }
                sup = std::max(sup, std::abs(fact * v) * std::pow(1.0 + std::abs(w), j));
            }
        return sup;
    };
    for (int j = 0; j <= j_max; ++j) {
        const double s = sup_on(j, 801, 9, -X);
        out.sup_by_order.push_back(s);
        out.far_field_sup.push_back(sup_on(j, 401, 9, 0.5 * X));
        if (!std::isfinite(s) || s > 1e12) out.finite = false;
    }
    if (j_max >= 1) {
        const double coarse = sup_on(1, 801, 9, -X);
        const double fine = sup_on(1, 3201, 33, -X);
        out.refine_ratio = fine / coarse;
    }
    return out;
}

}  // namespace lpspec::kernels

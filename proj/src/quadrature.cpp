#include "lpspec/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace lpspec {

QuadNodes gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    QuadNodes q;
    q.x.resize(static_cast<std::size_t>(n));
    q.w.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev guess for the i-th root of P_n
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // recurrence for P_n(x) and P'_n(x)
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.x[static_cast<std::size_t>(i)] = -x;
        q.x[static_cast<std::size_t>(n - 1 - i)] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        q.w[static_cast<std::size_t>(i)] = w;
        q.w[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) q.x[static_cast<std::size_t>(n / 2)] = 0.0;
    return q;
}

const QuadNodes& gauss_legendre_cached(int n) {
    static std::map<int, QuadNodes> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
    return it->second;
}

CompositeRule CompositeRule::over_cells(std::span<const double> bp, int per_cell) {
    if (bp.size() < 2) throw std::invalid_argument("CompositeRule: need >= 2 breakpoints");
    const QuadNodes& g = gauss_legendre_cached(per_cell);
    CompositeRule r;
    r.x.reserve((bp.size() - 1) * static_cast<std::size_t>(per_cell));
    r.w.reserve(r.x.capacity());
    for (std::size_t c = 0; c + 1 < bp.size(); ++c) {
        const double a = bp[c], b = bp[c + 1];
        if (!(b > a)) throw std::invalid_argument("CompositeRule: breakpoints must increase");
        const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            r.x.push_back(mid + hw * g.x[i]);
            r.w.push_back(hw * g.w[i]);
        }
    }
    return r;
}

CompositeRule CompositeRule::uniform(double a, double b, int n_cells, int per_cell) {
    std::vector<double> bp(static_cast<std::size_t>(n_cells) + 1);
    for (int i = 0; i <= n_cells; ++i) bp[static_cast<std::size_t>(i)] = a + (b - a) * i / n_cells;
    return over_cells(bp, per_cell);
}

namespace {

// One panel evaluated at two nested orders; the difference is the error
// estimate.
template <class R, class F>
std::pair<R, double> panel(const F& f, double a, double b) {
    const QuadNodes& lo = gauss_legendre_cached(12);
    const QuadNodes& hi = gauss_legendre_cached(24);
    const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
    R s_lo{}, s_hi{};
    for (std::size_t i = 0; i < lo.x.size(); ++i) s_lo += f(mid + hw * lo.x[i]) * (hw * lo.w[i]);
    for (std::size_t i = 0; i < hi.x.size(); ++i) s_hi += f(mid + hw * hi.x[i]) * (hw * hi.w[i]);
    return {s_hi, std::abs(s_hi - s_lo)};
}

template <class R, class F>
R adaptive_impl(const F& f, double a, double b, const AdaptiveOptions& opt) {
    struct Seg {
        double a, b;
        R val;
        double err;
    };
    auto [v0, e0] = panel<R>(f, a, b);
    std::vector<Seg> segs{{a, b, v0, e0}};
    int budget = opt.max_intervals;
    for (;;) {
        R total{};
        double err = 0.0, scale = 0.0;
        for (const Seg& s : segs) {
            total += s.val;
            err += s.err;
            scale += std::abs(s.val);
        }
        if (err <= opt.abs_tol || err <= opt.rel_tol * scale) return total;
        // split the worst segment
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].err > segs[worst].err) worst = i;
        if (--budget <= 0) throw std::runtime_error("integrate_adaptive: interval budget exhausted");
        Seg s = segs[worst];
        const double m = 0.5 * (s.a + s.b);
        auto [vl, el] = panel<R>(f, s.a, m);
        auto [vr, er] = panel<R>(f, m, s.b);
        segs[worst] = {s.a, m, vl, el};
        segs.push_back({m, s.b, vr, er});
    }
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const AdaptiveOptions& opt) {
    if (a == b) return 0.0;
    return adaptive_impl<double>(f, a, b, opt);
}

std::complex<double> integrate_adaptive_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const AdaptiveOptions& opt) {
    if (a == b) return {0.0, 0.0};
    return adaptive_impl<std::complex<double>>(f, a, b, opt);
}

}  // namespace lpspec

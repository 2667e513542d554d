// quadrature.hpp — 1-D quadrature building blocks shared by all modules.
//
//   gauss_legendre(n)        : nodes/weights on [-1, 1] by Newton iteration
//   CompositeRule            : Gauss panels over an arbitrary cell list
//   integrate_adaptive(...)  : bisection-adaptive Gauss with embedded error
//   pairwise_sum(...)        : deterministic reduction (fixed split order)
//   LogAccumulator           : log-space sum  log(Σ w_i e^{f_i})  (overflow-safe)

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace lpspec {

struct QuadNodes {
    std::vector<double> x;  // nodes
    std::vector<double> w;  // weights
};

// Gauss–Legendre rule on [-1,1]. Nodes are roots of P_n found by Newton
// iteration from the Chebyshev initial guess; exact for polynomials of
// degree 2n-1.
QuadNodes gauss_legendre(int n);

// Cached access (rules are reused heavily by the tensor-product code).
const QuadNodes& gauss_legendre_cached(int n);

// A 1-D composite rule: Gauss panels over consecutive cells.
struct CompositeRule {
    std::vector<double> x;
    std::vector<double> w;

    // cells given by breakpoints b_0 < b_1 < ... < b_m, `per_cell` Gauss
    // points in each [b_i, b_{i+1}]
    static CompositeRule over_cells(std::span<const double> breakpoints, int per_cell);

    // uniform split of [a,b] into `n_cells` cells
    static CompositeRule uniform(double a, double b, int n_cells, int per_cell);

    template <class F>
    auto apply(F&& f) const {
        using R = decltype(f(0.0));
        std::vector<R> vals(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) vals[i] = f(x[i]) * w[i];
        return pairwise_sum(std::span<const R>(vals));
    }

    template <class T>
    static T pairwise_sum(std::span<const T> v) {
        if (v.empty()) return T{};
        if (v.size() == 1) return v[0];
        const std::size_t h = v.size() / 2;
        return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
    }
};

// Adaptive integration of a real- or complex-valued function on [a, b].
// Each interval is measured with embedded Gauss 12/24; intervals that
// disagree are bisected.  Throws std::runtime_error when the interval
// budget is exhausted.
struct AdaptiveOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_intervals = 200000;
};

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const AdaptiveOptions& opt = {});

std::complex<double> integrate_adaptive_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const AdaptiveOptions& opt = {});

// log(Σ w_i e^{f_i}) accumulated without overflow; w_i > 0.
class LogAccumulator {
public:
    void add(double log_term) {
        if (std::isinf(log_term) && log_term < 0) return;
        if (log_term > peak_) {
            if (std::isfinite(peak_)) sum_ *= std::exp(peak_ - log_term);
            peak_ = log_term;
            sum_ += 1.0;
        } else {
            sum_ += std::exp(log_term - peak_);
        }
    }
    // log of the accumulated sum; -inf when empty
    double log_value() const {
        if (!std::isfinite(peak_)) return -std::numeric_limits<double>::infinity();
        return peak_ + std::log(sum_);
    }

private:
    double peak_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
};

}  // namespace lpspec

// profiles.hpp — the scalar profile algebra used in template-form
// coefficients.  A Profile1D is a smooth function of one real variable with
// derivatives evaluable up to max_order(); coefficients of template forms
// are products  y^mu (log y)^j c^(a)(log y) * prod_i b_i^(d_i)(x_i)  built
// from these.
//
// All bump/plateau profiles come from the C-infinity glue phi(t) = e^{-1/t}:
//   smoothstep  psi(t) = phi(t) / (phi(t) + phi(1-t))   (0 for t<=0, 1 for t>=1)
//   plateau     c(u)   = psi(u - lo) * psi(hi - u)      (==1 on [lo+1, hi-1])
//   bump        beta(s) = e^{1 - 1/(1-s^2)}             (support [-1,1], beta(0)=1)
// Derivatives are analytic closed forms; the quadrature pipeline never
// differentiates numerically.

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <string>
#include <stdexcept>

namespace lpspec::forms {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class Profile1D {
public:
    virtual ~Profile1D() = default;
    // order-th derivative at t; throws std::domain_error for order > max_order()
    virtual Complex eval(int order, double t) const = 0;
    virtual int max_order() const = 0;
    virtual double support_lo() const { return -kInf; }
    virtual double support_hi() const { return kInf; }
    virtual std::string describe() const { return "profile"; }
};

using ProfilePtr = std::shared_ptr<const Profile1D>;

// --- smoothstep pieces -------------------------------------------------------

struct SmoothStepValues {
    double psi, dpsi, ddpsi;
};

// psi and its first two derivatives at t
inline SmoothStepValues smoothstep(double t) {
    if (t <= 0.0) return {0.0, 0.0, 0.0};
    if (t >= 1.0) return {1.0, 0.0, 0.0};
    const double A = std::exp(-1.0 / t);
    const double B = std::exp(-1.0 / (1.0 - t));
    const double S = A + B;
    const double t2 = t * t, s1 = 1.0 - t, s2 = s1 * s1;
    const double dA = A / t2;
    const double dB = -B / s2;
    const double ddA = A * (1.0 - 2.0 * t) / (t2 * t2);
    const double ddB = B * (2.0 * t - 1.0) / (s2 * s2);
    const double num = dA * B - A * dB;
    const double dnum = ddA * B - A * ddB;
    const double dS = dA + dB;
    SmoothStepValues v;
    v.psi = A / S;
    v.dpsi = num / (S * S);
    v.ddpsi = (dnum * S - 2.0 * num * dS) / (S * S * S);
    return v;
}

// --- concrete profiles -------------------------------------------------------

// Plateau on [lo, hi] with unit-width smooth ramps; identically 1 on
// [lo+1, hi-1].  |c'|, |c''| are bounded by constants independent of lo, hi.
class SmoothPlateau final : public Profile1D {
public:
    SmoothPlateau(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(hi - lo >= 2.0))
            throw std::domain_error("SmoothPlateau: need hi - lo >= 2 for the ramps");
    }
    Complex eval(int order, double t) const override {
        const auto l = smoothstep(t - lo_);
        const auto r = smoothstep(hi_ - t);
        switch (order) {
            case 0: return l.psi * r.psi;
            case 1: return l.dpsi * r.psi - l.psi * r.dpsi;
            case 2: return l.ddpsi * r.psi - 2.0 * l.dpsi * r.dpsi + l.psi * r.ddpsi;
            default: throw std::domain_error("SmoothPlateau: derivative order > 2 unsupported");
        }
    }
    int max_order() const override { return 2; }
    double support_lo() const override { return lo_; }
    double support_hi() const override { return hi_; }
    std::string describe() const override {
        return "plateau[" + std::to_string(lo_) + "," + std::to_string(hi_) + "]";
    }

private:
    double lo_, hi_;
};

// Tensor-bump factor beta((t-center)/halfwidth) with beta(s) = e^{1-1/(1-s^2)}.
class SmoothBump final : public Profile1D {
public:
    SmoothBump(double center, double halfwidth) : c_(center), w_(halfwidth) {
        if (!(halfwidth > 0.0)) throw std::domain_error("SmoothBump: halfwidth must be > 0");
    }
    Complex eval(int order, double t) const override {
        const double s = (t - c_) / w_;
        if (std::abs(s) >= 1.0) return 0.0;
        const double q = 1.0 - s * s;
        const double beta = std::exp(1.0 - 1.0 / q);
        // g = -1/(1-s^2); beta = e^{1+g}; derivatives via Faa di Bruno
        const double g1 = -2.0 * s / (q * q);
        const double g2 = -2.0 * (1.0 + 3.0 * s * s) / (q * q * q);
        const double g3 = -24.0 * s * (1.0 + s * s) / (q * q * q * q);
        double d;
        switch (order) {
            case 0: return beta;
            case 1: d = g1 * beta; break;
            case 2: d = (g2 + g1 * g1) * beta; break;
            case 3: d = (g3 + 3.0 * g1 * g2 + g1 * g1 * g1) * beta; break;
            default: throw std::domain_error("SmoothBump: derivative order > 3 unsupported");
        }
        return d / std::pow(w_, order);
    }
    int max_order() const override { return 3; }
    double support_lo() const override { return c_ - w_; }
    double support_hi() const override { return c_ + w_; }
    std::string describe() const override {
        return "bump(" + std::to_string(c_) + "," + std::to_string(w_) + ")";
    }

private:
    double c_, w_;
};

// Plane wave e^{i kappa t}; any derivative order.
class PlaneWave final : public Profile1D {
public:
    explicit PlaneWave(double kappa) : kappa_(kappa) {}
    Complex eval(int order, double t) const override {
        const Complex ik(0.0, kappa_);
        Complex f = std::exp(ik * t);
        for (int j = 0; j < order; ++j) f *= ik;
        return f;
    }
    int max_order() const override { return 64; }
    std::string describe() const override { return "planewave(" + std::to_string(kappa_) + ")"; }

private:
    double kappa_;
};

// c(u) = e^{-s e^u}, i.e. e^{-s y} as a profile in u = log y.  With
// w = s e^u the derivatives are polynomial multiples of c:
//   c' = -w c,  c'' = (w^2 - w) c,  c''' = (-w^3 + 3w^2 - w) c.
class ExpDecayY final : public Profile1D {
public:
    explicit ExpDecayY(double s) : s_(s) {
        if (!(s > 0.0)) throw std::domain_error("ExpDecayY: decay rate must be > 0");
    }
    Complex eval(int order, double u) const override {
        const double w = s_ * std::exp(u);
        const double c = std::exp(-w);
        switch (order) {
            case 0: return c;
            case 1: return -w * c;
            case 2: return (w * w - w) * c;
            case 3: return (-w * w * w + 3.0 * w * w - w) * c;
            default: throw std::domain_error("ExpDecayY: derivative order > 3 unsupported");
        }
    }
    int max_order() const override { return 3; }
    std::string describe() const override { return "expdecay(" + std::to_string(s_) + ")"; }

private:
    double s_;
};

// t^m; any derivative order (falling factorials).
class Monomial final : public Profile1D {
public:
    explicit Monomial(int m) : m_(m) {
        if (m < 0) throw std::domain_error("Monomial: power must be >= 0");
    }
    Complex eval(int order, double t) const override {
        if (order > m_) return 0.0;
        double c = 1.0;
        for (int j = 0; j < order; ++j) c *= (m_ - j);
        double v = 1.0;
        for (int j = 0; j < m_ - order; ++j) v *= t;
        return c * v;
    }
    int max_order() const override { return 64; }
    std::string describe() const override { return "t^" + std::to_string(m_); }

private:
    int m_;
};

// Indicator of [lo, hi]; no derivatives (norm tests only).
class BoxProfile final : public Profile1D {
public:
    BoxProfile(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(hi > lo)) throw std::domain_error("BoxProfile: need hi > lo");
    }
    Complex eval(int order, double t) const override {
        if (order != 0) throw std::domain_error("BoxProfile: not differentiable");
        return (t >= lo_ && t <= hi_) ? 1.0 : 0.0;
    }
    int max_order() const override { return 0; }
    double support_lo() const override { return lo_; }
    double support_hi() const override { return hi_; }
    std::string describe() const override {
        return "box[" + std::to_string(lo_) + "," + std::to_string(hi_) + "]";
    }

private:
    double lo_, hi_;
};

inline ProfilePtr make_plateau(double lo, double hi) {
    return std::make_shared<SmoothPlateau>(lo, hi);
}
inline ProfilePtr make_bump(double center, double halfwidth) {
    return std::make_shared<SmoothBump>(center, halfwidth);
}
inline ProfilePtr make_plane_wave(double kappa) { return std::make_shared<PlaneWave>(kappa); }
inline ProfilePtr make_monomial(int m) { return std::make_shared<Monomial>(m); }
inline ProfilePtr make_exp_decay_y(double s) { return std::make_shared<ExpDecayY>(s); }
inline ProfilePtr make_box(double lo, double hi) { return std::make_shared<BoxProfile>(lo, hi); }

}  // namespace lpspec::forms

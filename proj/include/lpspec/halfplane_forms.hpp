// halfplane_forms.hpp — exterior calculus for template forms on the
// upper-half-space model {(x, y) : x in R^N, y > 0} of H^{N+1}, carrying the
// metric g = y^{-2}(dx^2 + dy^2), volume element dv = y^{-N-1} dy dx, and
// pointwise norms |dy ^ dx^I| = |dx^J| = y^k.
//
// A TemplateForm is a finite sum of terms
//
//     K * y^mu (log y)^j c^(a)(log y) * prod_i b_i^(d_i)(x_i)  x  basis,
//
// basis in {dy ^ dx^I, dx^J}.  The algebra is closed under d, delta and the
// Laplacian as long as the profiles have derivatives left; operations that
// would exceed a profile's derivative budget throw UnsupportedCoefficient.
//
// Base actions frozen here (k = form degree, D the Levi-Civita connection):
//
//   D_{dy}   (dy^dx^I) = (k/y) dy^dx^I          D_{dy}   (dx^J) = (k/y) dx^J
//   D_{dx_i} (dy^dx^I) = -(1/y) dx^i ^ dx^I     D_{dx_i} (dx^J) = -(1/y) i(dx_i)(dy^dx^J)
//
//   delta(y^mu dy^dx^I) = -(mu - N - 1 + 2k) y^{mu+1} dx^I,   delta(y^mu dx^J) = 0
//
//   Lap(y^mu dy^dx^I) = -(mu+1)(mu - N - 1 + 2k) y^mu dy^dx^I
//   Lap(y^mu dx^J)    = -mu (mu - N + 2k) y^mu dx^J
//
//   Lap f = -y^{N+1} d_y(y^{1-N} d_y f) - y^2 sum_i d^2_{x_i} f   (functions)
//
// and the product rule Lap(f eta) = f Lap(eta) - 2 Grad_{grad f} eta + (Lap f) eta
// with the hyperbolic gradient grad f = y^2 (d_y f dy + sum_i d_{x_i} f dx_i).
//
// Contraction convention: i(dx_i)(dy ^ dx^J) anticommutes past dy first,
//   i(dx_i)(dy ^ dx^J) = -dy ^ (i(dx_i) dx^J);
// this sign is validated numerically via d/delta adjointness in the tests.

#pragma once

#include <complex>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>
#include <string>

#include "lpspec/profiles.hpp"
#include "lpspec/quadrature.hpp"

namespace lpspec::forms {

struct UnsupportedCoefficient : std::domain_error {
    using std::domain_error::domain_error;
};

// --- basis forms -------------------------------------------------------------

struct BasisForm {
    enum class Kind { A, B };  // A: dy ^ dx^I,  B: dx^J
    Kind kind = Kind::B;
    std::vector<int> idx;  // strictly increasing, values in [1, N]

    int degree() const { return static_cast<int>(idx.size()) + (kind == Kind::A ? 1 : 0); }
    bool operator==(const BasisForm&) const = default;
    auto operator<=>(const BasisForm&) const = default;
};

BasisForm basis_a(std::vector<int> idx);  // dy ^ dx^idx
BasisForm basis_b(std::vector<int> idx);  // dx^idx

struct SignedBasis {
    int sign = 0;  // 0 encodes the zero form
    BasisForm basis;
};

// dx^i ^ basis, dy ^ basis, i(dx_i) basis, i(dy) basis with the signs above.
SignedBasis wedge_dx(int i, const BasisForm& b);
SignedBasis wedge_dy(const BasisForm& b);
SignedBasis contract_dx(int i, const BasisForm& b);
SignedBasis contract_dy(const BasisForm& b);

// --- coefficient terms ---------------------------------------------------

struct AxisFactor {
    int axis = 1;  // 1-based x-axis index
    ProfilePtr profile;
    int order = 0;  // derivative order applied

    bool operator==(const AxisFactor& o) const {
        return axis == o.axis && profile == o.profile && order == o.order;
    }
};

// K * y^mu (log y)^logpow c^(c_order)(log y) * prod factors(x)
struct CoefficientTerm {
    Complex coef{1.0, 0.0};
    Complex mu{0.0, 0.0};
    int logpow = 0;
    ProfilePtr c;  // nullptr = constant 1
    int c_order = 0;
    std::vector<AxisFactor> xfactors;  // sorted by axis, at most one per axis

    // coefficient value at (x, u), u = log y
    Complex eval(std::span<const double> x, double u) const;
    // same but with y^mu replaced by y^{mu + shift} (norm weighting)
    Complex eval_shifted(std::span<const double> x, double u, double shift) const;
};

struct Term {
    CoefficientTerm coef;
    BasisForm basis;
};

// --- template forms ------------------------------------------------------

class TemplateForm {
public:
    TemplateForm(int ambient_N, int degree) : N_(ambient_N), degree_(degree) {
        if (ambient_N < 1) throw std::domain_error("TemplateForm: ambient N must be >= 1");
        if (degree < 0 || degree > ambient_N + 1)
            throw std::domain_error("TemplateForm: degree out of [0, N+1]");
    }

    int ambient_N() const { return N_; }
    int degree() const { return degree_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    void add_term(CoefficientTerm c, BasisForm b);
    TemplateForm& operator*=(Complex s);
    friend TemplateForm operator*(Complex s, TemplateForm f) { return f *= s; }
    friend TemplateForm operator+(TemplateForm a, const TemplateForm& b);
    friend TemplateForm operator-(TemplateForm a, const TemplateForm& b);

    // merge terms with identical (basis, mu, logpow, profiles, orders); drops
    // exact zeros, so analytically cancelling pairs vanish from the term list
    void collect();

    // support box: [lo, hi] in u = log y and, per axis, in x (infinite when
    // a profile is unbounded)
    struct Support {
        double u_lo, u_hi;
        std::vector<double> x_lo, x_hi;  // size N
    };
    Support support() const;

    // pointwise data at (x, y): coefficients per basis group
    std::vector<std::pair<BasisForm, Complex>> group_values(std::span<const double> x,
                                                            double u) const;
    // sqrt(sum_groups |coef|^2) * y^k  (hyperbolic pointwise norm)
    double pointwise_norm(std::span<const double> x, double y) const;

private:
    int N_;
    int degree_;
    std::vector<Term> terms_;
};

// y^mu * basis as a one-term form
TemplateForm monomial_form(int N, Complex mu, BasisForm basis, Complex coef = 1.0);

// --- differential operators ----------------------------------------------

enum class Direction { y, x };

// Levi-Civita derivative of a basis form per the table above; `axis` is the
// 1-based x-axis index when direction == x.
TemplateForm covariant_derivative(int N, const BasisForm& basis, Direction dir, int axis = 1);

TemplateForm exterior_derivative(const TemplateForm& form);
TemplateForm codifferential(const TemplateForm& form);
TemplateForm laplacian(const TemplateForm& form);

// Same Laplacian evaluated entirely through the product rule with base
// degree zero (independent route; used as an oracle against (D1)/(D2)).
TemplateForm laplacian_product_rule(const TemplateForm& form);

// Extracts lambda with image = lambda * form (termwise, after collection);
// throws std::runtime_error if the image is not proportional.
Complex extract_eigenvalue(const TemplateForm& form, const TemplateForm& image, double tol = 1e-9);

// --- quadrature ----------------------------------------------------------

// Tensor grid: one composite rule in u = log y, one composite rule shared by
// all N x-axes.
struct QuadratureGrid {
    CompositeRule u_rule;
    CompositeRule x_rule;

    // x-box [-L, L]^N with n_x points per axis (single Gauss panel), y-range
    // [y_min, y_max] with n_y log-spaced cells of `per_cell` points
    static QuadratureGrid box(double L, int n_x, double y_min, double y_max, int n_y_cells,
                              int per_cell = 8);
};

struct NormResult {
    double value = 0.0;
    bool coverage_ok = true;
    double boundary_integrand = 0.0;  // largest |integrand| sampled on the grid hull
};

// (integral of |form|^p dv)^{1/p} over the grid; the y^{-N-1} measure and the
// y^k basis norms are absorbed into per-term exponents so huge |log y| is safe.
NormResult lp_norm_checked(const TemplateForm& form, double p, const QuadratureGrid& grid);
double lp_norm(const TemplateForm& form, double p, const QuadratureGrid& grid);

// L^2 pairing <f, g> = integral of <f, g>_pointwise dv (hermitian in g).
Complex l2_pairing(const TemplateForm& f, const TemplateForm& g, const QuadratureGrid& grid);

// --- the approximate-eigenform family -------------------------------------

// omega_n = c_n(log y) b(x) y^{N/p - k + i s} dx^J, J = {1..k}: c_n a smoothed
// plateau supported on [-n^{3p}, log n] (== 1 on [-n^{3p}+1, log n - 1]) and b
// a tensor bump of halfwidth 1.  Requires p <= 2, k <= N, n >= 2.
TemplateForm weyl_form(int n, int N, int k, double p, double s);

// Target eigenvalue -mu(mu + 2k - N) for the family above.
Complex weyl_eigenvalue(int N, int k, double p, double s);

// Structured grid resolving the plateau ramps and the e^{pu}-weighted right
// tail of the quotient integrand.
QuadratureGrid weyl_grid(int n, int N, double p, int x_points = 24, int u_per_cell = 10);

// || Lap omega_n - lambda omega_n ||_p / || omega_n ||_p  (decays like 1/n)
double weyl_quotient(int n, int N, int k, double p, double s, const QuadratureGrid& grid);
double weyl_quotient(int n, int N, int k, double p, double s);  // on weyl_grid(n, N, p)

// --- the harmonic middle-degree form --------------------------------------

// phi = e^{-sqrt(nu) y} e^{i sqrt(nu) x_j} (dx^j ^ dx^I + i dy ^ dx^I),
// N odd, |I| = (N-1)/2, j not in I; closed, co-closed and harmonic.
TemplateForm middle_harmonic(double nu, int j, std::vector<int> I, int N);

// JSON serialization of the term list (coefficient data plus profile
// descriptions and basis indices).
std::string to_json(const TemplateForm& form);

}  // namespace lpspec::forms

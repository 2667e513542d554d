#include "lpspec/halfplane_forms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <tuple>

#include "lpspec/report.hpp"

namespace lpspec::forms {

namespace {

// Eigen factors of the base actions; weyl_eigenvalue reuses these verbatim so
// the eigen-term of Lap(omega) - lambda omega cancels exactly in collect().
inline Complex eigen_factor_a(Complex mu, int N, int k) {
    return -(mu + 1.0) * (mu - (N + 1.0) + 2.0 * k);
}
inline Complex eigen_factor_b(Complex mu, int N, int k) {
    return -mu * (mu - static_cast<double>(N) + 2.0 * k);
}

// signed insertion of i into a strictly increasing index list
SignedBasis insert_index(int i, const BasisForm& b, BasisForm::Kind out_kind) {
    auto pos = std::lower_bound(b.idx.begin(), b.idx.end(), i);
    if (pos != b.idx.end() && *pos == i) return {0, {}};
    SignedBasis r;
    r.sign = (std::distance(b.idx.begin(), pos) % 2 == 0) ? 1 : -1;
    r.basis.kind = out_kind;
    r.basis.idx = b.idx;
    r.basis.idx.insert(r.basis.idx.begin() + std::distance(b.idx.begin(), pos), i);
    return r;
}

// signed deletion of i from a strictly increasing index list
SignedBasis delete_index(int i, const BasisForm& b, BasisForm::Kind out_kind) {
    auto pos = std::lower_bound(b.idx.begin(), b.idx.end(), i);
    if (pos == b.idx.end() || *pos != i) return {0, {}};
    SignedBasis r;
    r.sign = (std::distance(b.idx.begin(), pos) % 2 == 0) ? 1 : -1;
    r.basis.kind = out_kind;
    r.basis.idx = b.idx;
    r.basis.idx.erase(r.basis.idx.begin() + std::distance(b.idx.begin(), pos));
    return r;
}


}  // namespace

BasisForm basis_a(std::vector<int> idx) {
    BasisForm b{BasisForm::Kind::A, std::move(idx)};
    for (std::size_t i = 0; i + 1 < b.idx.size(); ++i)
        if (b.idx[i] >= b.idx[i + 1]) throw std::domain_error("basis_a: indices must increase");
    return b;
}

BasisForm basis_b(std::vector<int> idx) {
    BasisForm b{BasisForm::Kind::B, std::move(idx)};
    for (std::size_t i = 0; i + 1 < b.idx.size(); ++i)
        if (b.idx[i] >= b.idx[i + 1]) throw std::domain_error("basis_b: indices must increase");
    return b;
}

SignedBasis wedge_dx(int i, const BasisForm& b) {
    if (b.kind == BasisForm::Kind::B) return insert_index(i, b, BasisForm::Kind::B);
    // dx^i ^ (dy ^ dx^I) = -dy ^ (dx^i ^ dx^I)
    SignedBasis r = insert_index(i, b, BasisForm::Kind::A);
    r.sign = -r.sign;
    return r;
}

SignedBasis wedge_dy(const BasisForm& b) {
    if (b.kind == BasisForm::Kind::A) return {0, {}};
    return {1, BasisForm{BasisForm::Kind::A, b.idx}};
}

SignedBasis contract_dx(int i, const BasisForm& b) {
    if (b.kind == BasisForm::Kind::B) return delete_index(i, b, BasisForm::Kind::B);
    // i(dx_i)(dy ^ dx^I) = -dy ^ (i(dx_i) dx^I): anticommute past dy first
    SignedBasis r = delete_index(i, b, BasisForm::Kind::A);
    r.sign = -r.sign;
    return r;
}

SignedBasis contract_dy(const BasisForm& b) {
    if (b.kind == BasisForm::Kind::B) return {0, {}};
    return {1, BasisForm{BasisForm::Kind::B, b.idx}};
}

// --- coefficient evaluation ----------------------------------------------

Complex CoefficientTerm::eval_shifted(std::span<const double> x, double u, double shift) const {
    Complex v = coef * std::exp((mu + shift) * u);
    if (logpow > 0) {
        double up = 1.0;
        for (int j = 0; j < logpow; ++j) up *= u;
        v *= up;
    }
    if (c) v *= c->eval(c_order, u);
    for (const AxisFactor& f : xfactors) {
        if (v == Complex{}) return v;
        v *= f.profile->eval(f.order, x[static_cast<std::size_t>(f.axis - 1)]);
    }
    return v;
}

Complex CoefficientTerm::eval(std::span<const double> x, double u) const {
    return eval_shifted(x, u, 0.0);
}

// --- template forms --------------------------------------------------------

void TemplateForm::add_term(CoefficientTerm c, BasisForm b) {
    if (b.degree() != degree_) throw std::domain_error("TemplateForm: degree mismatch");
    for (int i : b.idx)
        if (i < 1 || i > N_) throw std::domain_error("TemplateForm: basis index out of [1,N]");
    std::sort(c.xfactors.begin(), c.xfactors.end(),
              [](const AxisFactor& a, const AxisFactor& f) { return a.axis < f.axis; });
    for (std::size_t i = 0; i + 1 < c.xfactors.size(); ++i)
        if (c.xfactors[i].axis == c.xfactors[i + 1].axis)
            throw std::domain_error("TemplateForm: duplicate x-axis factor");
    for (const AxisFactor& f : c.xfactors)
        if (f.axis < 1 || f.axis > N_ || !f.profile)
            throw std::domain_error("TemplateForm: bad axis factor");
    if (c.coef != Complex{}) terms_.push_back({std::move(c), std::move(b)});
}

TemplateForm& TemplateForm::operator*=(Complex s) {
    if (s == Complex{}) {
        terms_.clear();
        return *this;
    }
    for (Term& t : terms_) t.coef.coef *= s;
    return *this;
}

TemplateForm operator+(TemplateForm a, const TemplateForm& b) {
    if (a.N_ != b.N_ || a.degree_ != b.degree_)
        throw std::domain_error("TemplateForm: ambient/degree mismatch in sum");
    for (const Term& t : b.terms_) a.terms_.push_back(t);
    a.collect();
    return a;
}

TemplateForm operator-(TemplateForm a, const TemplateForm& b) {
    TemplateForm nb = b;
    nb *= Complex{-1.0, 0.0};
    return std::move(a) + nb;
}

namespace {

using TermKey = std::tuple<BasisForm, double, double, int, const Profile1D*, int,
                           std::vector<std::tuple<int, const Profile1D*, int>>>;

TermKey key_of(const Term& t) {
    std::vector<std::tuple<int, const Profile1D*, int>> xf;
    xf.reserve(t.coef.xfactors.size());
    for (const AxisFactor& f : t.coef.xfactors) xf.emplace_back(f.axis, f.profile.get(), f.order);
    return {t.basis, t.coef.mu.real(), t.coef.mu.imag(), t.coef.logpow, t.coef.c.get(),
            t.coef.c_order, std::move(xf)};
}

}  // namespace

void TemplateForm::collect() {
    std::map<TermKey, Term> merged;
    for (Term& t : terms_) {
        TermKey k = key_of(t);
        auto it = merged.find(k);
        if (it == merged.end())
            merged.emplace(std::move(k), std::move(t));
        else
            it->second.coef.coef += t.coef.coef;
    }
    terms_.clear();
    for (auto& [k, t] : merged)
        if (t.coef.coef != Complex{}) terms_.push_back(std::move(t));
}

TemplateForm::Support TemplateForm::support() const {
    Support s;
    s.u_lo = kInf;
    s.u_hi = -kInf;
    s.x_lo.assign(static_cast<std::size_t>(N_), kInf);
    s.x_hi.assign(static_cast<std::size_t>(N_), -kInf);
    for (const Term& t : terms_) {
        s.u_lo = std::min(s.u_lo, t.coef.c ? t.coef.c->support_lo() : -kInf);
        s.u_hi = std::max(s.u_hi, t.coef.c ? t.coef.c->support_hi() : kInf);
        std::vector<bool> seen(static_cast<std::size_t>(N_), false);
        for (const AxisFactor& f : t.coef.xfactors) {
            const std::size_t a = static_cast<std::size_t>(f.axis - 1);
            seen[a] = true;
            s.x_lo[a] = std::min(s.x_lo[a], f.profile->support_lo());
            s.x_hi[a] = std::max(s.x_hi[a], f.profile->support_hi());
        }
        for (std::size_t a = 0; a < seen.size(); ++a)
            if (!seen[a]) {
                s.x_lo[a] = -kInf;
                s.x_hi[a] = kInf;
            }
    }
    return s;
}

std::vector<std::pair<BasisForm, Complex>> TemplateForm::group_values(std::span<const double> x,
                                                                      double u) const {
    std::map<BasisForm, Complex> g;
    for (const Term& t : terms_) g[t.basis] += t.coef.eval(x, u);
    return {g.begin(), g.end()};
}

double TemplateForm::pointwise_norm(std::span<const double> x, double y) const {
    if (!(y > 0.0)) throw std::domain_error("pointwise_norm: y must be > 0");
    const double u = std::log(y);
    double s2 = 0.0;
    for (const auto& [b, v] : group_values(x, u)) s2 += std::norm(v);
    return std::sqrt(s2) * std::exp(degree_ * u);
}

TemplateForm monomial_form(int N, Complex mu, BasisForm basis, Complex coef) {
    TemplateForm f(N, basis.degree());
    CoefficientTerm c;
    c.coef = coef;
    c.mu = mu;
    f.add_term(std::move(c), std::move(basis));
    return f;
}

// --- term derivative helpers ------------------------------------------------

namespace {

// d/du of the u-part e^{mu u} u^j c^(a)(u): up to three pieces
void append_u_derivative(const CoefficientTerm& t, std::vector<CoefficientTerm>& out) {
    if (t.mu != Complex{}) {
        CoefficientTerm s = t;
        s.coef *= t.mu;
        out.push_back(std::move(s));
    }
    if (t.logpow > 0) {
        CoefficientTerm s = t;
        s.coef *= static_cast<double>(t.logpow);
        s.logpow -= 1;
        out.push_back(std::move(s));
    }
    if (t.c) {
        if (t.c_order + 1 > t.c->max_order())
            throw UnsupportedCoefficient("coefficient profile lacks a derivative in log y");
        CoefficientTerm s = t;
        s.c_order += 1;
        out.push_back(std::move(s));
    }
}

std::vector<CoefficientTerm> u_derivative(const CoefficientTerm& t) {
    std::vector<CoefficientTerm> out;
    append_u_derivative(t, out);
    return out;
}

// d/dx_i; empty when the term does not depend on x_i
std::vector<CoefficientTerm> x_derivative(const CoefficientTerm& t, int axis) {
    for (std::size_t i = 0; i < t.xfactors.size(); ++i) {
        if (t.xfactors[i].axis != axis) continue;
        if (t.xfactors[i].order + 1 > t.xfactors[i].profile->max_order())
            throw UnsupportedCoefficient("coefficient profile lacks an x-derivative");
        CoefficientTerm s = t;
        s.xfactors[i].order += 1;
        return {std::move(s)};
    }
    return {};
}

// Lap f = [N f_u - f_uu] - y^2 sum_i d^2_{x_i} f  on the coefficient algebra
std::vector<CoefficientTerm> function_laplacian(const CoefficientTerm& t, int N) {
    std::vector<CoefficientTerm> out;
    std::vector<CoefficientTerm> d1 = u_derivative(t);
    for (CoefficientTerm s : d1) {
        s.coef *= static_cast<double>(N);
        out.push_back(std::move(s));
    }
    for (const CoefficientTerm& s : d1) {
        for (CoefficientTerm s2 : u_derivative(s)) {
            s2.coef *= -1.0;
            out.push_back(std::move(s2));
        }
    }
    for (std::size_t i = 0; i < t.xfactors.size(); ++i) {
        if (t.xfactors[i].order + 2 > t.xfactors[i].profile->max_order())
            throw UnsupportedCoefficient("coefficient profile lacks a second x-derivative");
        CoefficientTerm s = t;
        s.xfactors[i].order += 2;
        s.mu += 2.0;
        s.coef *= -1.0;
        out.push_back(std::move(s));
    }
    return out;
}

// covariant x-derivative of a basis form: D_{dx_i} basis = (1/y) * sign * basis'
SignedBasis cov_x_basis(int i, const BasisForm& b) {
    if (b.kind == BasisForm::Kind::A) {
        SignedBasis w = wedge_dx(i, BasisForm{BasisForm::Kind::B, b.idx});
        w.sign = -w.sign;
        return w;
    }
    SignedBasis c = contract_dx(i, BasisForm{BasisForm::Kind::A, b.idx});
    c.sign = -c.sign;
    return c;
}

}  // namespace

TemplateForm covariant_derivative(int N, const BasisForm& basis, Direction dir, int axis) {
    TemplateForm out(N, basis.degree());
    const int k = basis.degree();
    if (dir == Direction::y) {
        CoefficientTerm c;
        c.coef = static_cast<double>(k);
        c.mu = -1.0;
        if (k != 0) out.add_term(std::move(c), basis);
        return out;
    }
    SignedBasis d = cov_x_basis(axis, basis);
    if (d.sign != 0) {
        CoefficientTerm c;
        c.coef = static_cast<double>(d.sign);
        c.mu = -1.0;
        out.add_term(std::move(c), d.basis);
    }
    return out;
}

TemplateForm exterior_derivative(const TemplateForm& form) {
    TemplateForm out(form.ambient_N(), form.degree() + 1);
    for (const Term& t : form.terms()) {
        // d_y f  dy ^ basis
        SignedBasis wy = wedge_dy(t.basis);
        if (wy.sign != 0) {
            for (CoefficientTerm s : u_derivative(t.coef)) {
                s.mu -= 1.0;
                s.coef *= static_cast<double>(wy.sign);
                out.add_term(std::move(s), wy.basis);
            }
        }
        // d_{x_i} f  dx^i ^ basis  (only axes the coefficient depends on)
        for (const AxisFactor& f : t.coef.xfactors) {
            SignedBasis wx = wedge_dx(f.axis, t.basis);
            if (wx.sign == 0) continue;
            for (CoefficientTerm s : x_derivative(t.coef, f.axis)) {
                s.coef *= static_cast<double>(wx.sign);
                out.add_term(std::move(s), wx.basis);
            }
        }
    }
    out.collect();
    return out;
}

TemplateForm codifferential(const TemplateForm& form) {
    if (form.degree() == 0) return TemplateForm(form.ambient_N(), 0);
    const int N = form.ambient_N();
    const int k = form.degree();
    TemplateForm out(N, k - 1);
    for (const Term& t : form.terms()) {
        // delta(g basis) = g delta(basis) - i(grad g)(basis)
        if (t.basis.kind == BasisForm::Kind::A) {
            // delta(dy ^ dx^I) = (N + 1 - 2k) y dx^I
            const double base = static_cast<double>(N + 1 - 2 * k);
            if (base != 0.0) {
                CoefficientTerm s = t.coef;
                s.coef *= base;
                s.mu += 1.0;
                out.add_term(std::move(s), BasisForm{BasisForm::Kind::B, t.basis.idx});
            }
            // -y^2 d_y g * i(dy) basis, with i(dy)(dy ^ dx^I) = dx^I
            for (CoefficientTerm s : u_derivative(t.coef)) {
                s.mu += 1.0;  // y^2 * (1/y)
                s.coef *= -1.0;
                out.add_term(std::move(s), BasisForm{BasisForm::Kind::B, t.basis.idx});
            }
        }
        // -y^2 d_{x_i} g * i(dx_i) basis
        for (const AxisFactor& f : t.coef.xfactors) {
            SignedBasis cb = contract_dx(f.axis, t.basis);
            if (cb.sign == 0) continue;
            for (CoefficientTerm s : x_derivative(t.coef, f.axis)) {
                s.mu += 2.0;
                s.coef *= -static_cast<double>(cb.sign);
                out.add_term(std::move(s), cb.basis);
            }
        }
    }
    out.collect();
    return out;
}

TemplateForm laplacian(const TemplateForm& form) {
    const int N = form.ambient_N();
    const int k = form.degree();
    TemplateForm out(N, k);
    for (const Term& t : form.terms()) {
        const Complex mu = t.coef.mu;
        // f * Lap(y^mu basis)
        {
            const Complex factor = (t.basis.kind == BasisForm::Kind::A)
                                       ? eigen_factor_a(mu, N, k)
                                       : eigen_factor_b(mu, N, k);
            if (factor != Complex{}) {
                CoefficientTerm s = t.coef;
                s.coef *= factor;
                out.add_term(std::move(s), t.basis);
            }
        }
        // profile part: f = (log y)^j c^(a) X, base keeps y^mu
        CoefficientTerm prof = t.coef;
        prof.mu = 0.0;
        // (Lap f) y^mu basis
        for (CoefficientTerm s : function_laplacian(prof, N)) {
            s.mu += mu;
            out.add_term(std::move(s), t.basis);
        }
        // -2 Grad_{grad f} (y^mu basis):
        //   y-part: -2 (mu + k) (df/du) y^mu basis
        for (CoefficientTerm s : u_derivative(prof)) {
            s.coef *= -2.0 * (mu + static_cast<double>(k));
            s.mu += mu;
            out.add_term(std::move(s), t.basis);
        }
        //   x-part: -2 sign * d_{x_i} f y^{mu+1} basis'
        for (const AxisFactor& f : prof.xfactors) {
            SignedBasis d = cov_x_basis(f.axis, t.basis);
            if (d.sign == 0) continue;
            for (CoefficientTerm s : x_derivative(prof, f.axis)) {
                s.coef *= -2.0 * static_cast<double>(d.sign);
                s.mu += mu + 1.0;
                out.add_term(std::move(s), d.basis);
            }
        }
    }
    out.collect();
    return out;
}

TemplateForm laplacian_product_rule(const TemplateForm& form) {
    const int N = form.ambient_N();
    const int k = form.degree();
    TemplateForm out(N, k);
    for (const Term& t : form.terms()) {
        // f = full coefficient (y^mu included), base = basis at power 0
        if (t.basis.kind == BasisForm::Kind::A) {
            const Complex factor = eigen_factor_a(Complex{}, N, k);
            if (factor != Complex{}) {
                CoefficientTerm s = t.coef;
                s.coef *= factor;
                out.add_term(std::move(s), t.basis);
            }
        }
        for (CoefficientTerm s : function_laplacian(t.coef, N)) out.add_term(std::move(s), t.basis);
        for (CoefficientTerm s : u_derivative(t.coef)) {
            s.coef *= -2.0 * static_cast<double>(k);
            out.add_term(std::move(s), t.basis);
        }
        for (const AxisFactor& f : t.coef.xfactors) {
            SignedBasis d = cov_x_basis(f.axis, t.basis);
            if (d.sign == 0) continue;
            for (CoefficientTerm s : x_derivative(t.coef, f.axis)) {
                s.coef *= -2.0 * static_cast<double>(d.sign);
                s.mu += 1.0;
                out.add_term(std::move(s), d.basis);
            }
        }
    }
    out.collect();
    return out;
}

Complex extract_eigenvalue(const TemplateForm& form, const TemplateForm& image, double tol) {
    TemplateForm f = form, g = image;
    f.collect();
    g.collect();
    std::map<TermKey, Complex> fc, gc;
    for (const Term& t : f.terms()) fc[key_of(t)] += t.coef.coef;
    for (const Term& t : g.terms()) gc[key_of(t)] += t.coef.coef;
    for (const auto& [key, c] : gc)
        if (!fc.count(key)) throw std::runtime_error("extract_eigenvalue: image not proportional");
    Complex lambda{};
    bool have = false;
    for (const auto& [key, c] : fc) {
        auto it = gc.find(key);
        const Complex img = (it == gc.end()) ? Complex{} : it->second;
        if (!have) {
            lambda = img / c;
            have = true;
            continue;
        }
        if (std::abs(img - lambda * c) > tol * (std::abs(lambda * c) + 1.0))
            throw std::runtime_error("extract_eigenvalue: image not proportional");
    }
    if (!have) throw std::runtime_error("extract_eigenvalue: zero form");
    return lambda;
}

// --- quadrature -------------------------------------------------------------

QuadratureGrid QuadratureGrid::box(double L, int n_x, double y_min, double y_max, int n_y_cells,
                                   int per_cell) {
    if (!(y_min > 0.0 && y_max > y_min)) throw std::domain_error("QuadratureGrid: bad y range");
    QuadratureGrid g;
    std::vector<double> xb{-L, L};
    g.x_rule = CompositeRule::over_cells(xb, n_x);
    std::vector<double> ub(static_cast<std::size_t>(n_y_cells) + 1);
    const double ulo = std::log(y_min), uhi = std::log(y_max);
    for (int i = 0; i <= n_y_cells; ++i)
        ub[static_cast<std::size_t>(i)] = ulo + (uhi - ulo) * i / n_y_cells;
    g.u_rule = CompositeRule::over_cells(ub, per_cell);
    return g;
}

namespace {

// per-term tensor factorization on the grid
struct EvalTerm {
    std::vector<Complex> u_vals;  // weighted u-part at u nodes
    std::vector<int> x_idx;       // per axis: index into factor_store, -1 = constant 1
};

struct GroupedEval {
    std::vector<std::vector<EvalTerm>> groups;
    std::vector<std::vector<Complex>> factor_store;  // evaluated x-profile arrays
};

GroupedEval build_eval(const TemplateForm& form, const QuadratureGrid& grid, double shift) {
    GroupedEval ge;
    std::map<BasisForm, std::vector<const Term*>> by_basis;
    for (const Term& t : form.terms()) by_basis[t.basis].push_back(&t);

    // profile/order -> evaluated array on the shared x rule
    std::map<std::pair<const Profile1D*, int>, int> xcache;
    const auto& xs = grid.x_rule.x;
    const auto& us = grid.u_rule.x;

    for (auto& [basis, ts] : by_basis) {
        std::vector<EvalTerm> group;
        for (const Term* t : ts) {
            EvalTerm et;
            et.u_vals.resize(us.size());
            for (std::size_t i = 0; i < us.size(); ++i) {
                const double u = us[i];
                Complex v = t->coef.coef * std::exp((t->coef.mu + shift) * u);
                if (t->coef.logpow > 0) {
                    double up = 1.0;
                    for (int j = 0; j < t->coef.logpow; ++j) up *= u;
                    v *= up;
                }
                if (t->coef.c) v *= t->coef.c->eval(t->coef.c_order, u);
                et.u_vals[i] = v;
            }
            et.x_idx.assign(static_cast<std::size_t>(form.ambient_N()), -1);
            for (const AxisFactor& f : t->coef.xfactors) {
                auto key = std::make_pair(f.profile.get(), f.order);
                auto it = xcache.find(key);
                if (it == xcache.end()) {
                    std::vector<Complex> vals(xs.size());
                    for (std::size_t i = 0; i < xs.size(); ++i)
                        vals[i] = f.profile->eval(f.order, xs[i]);
                    ge.factor_store.push_back(std::move(vals));
                    it = xcache.emplace(key, static_cast<int>(ge.factor_store.size()) - 1).first;
                }
                et.x_idx[static_cast<std::size_t>(f.axis - 1)] = it->second;
            }
            group.push_back(std::move(et));
        }
        ge.groups.push_back(std::move(group));
    }
    return ge;
}

}  // namespace

NormResult lp_norm_checked(const TemplateForm& form, double p, const QuadratureGrid& grid) {
    if (!(p >= 1.0) || std::isinf(p)) throw std::domain_error("lp_norm: need 1 <= p < inf");
    NormResult res;
    if (form.empty()) return res;
    const int N = form.ambient_N();
    const double shift = form.degree() - N / p;  // y^k from the norm, y^{-N-1}dy -> e^{-Nu}du
    GroupedEval ge = build_eval(form, grid, shift);

    const std::size_t nu = grid.u_rule.x.size();
    const std::size_t nx = grid.x_rule.x.size();
    const std::size_t nax = static_cast<std::size_t>(N);

    // flat x lattice: per-term product over axes, plus the weight product
    const std::size_t nx_flat = [&] {
        std::size_t m = 1;
        for (std::size_t a = 0; a < nax; ++a) {
            if (m > 50'000'000 / nx) throw std::runtime_error("lp_norm: x lattice too large");
            m *= nx;
        }
        return m;
    }();

    std::vector<double> wx(nx_flat, 1.0);
    std::vector<std::size_t> digits(nax);
    for (std::size_t ix = 0; ix < nx_flat; ++ix) {
        std::size_t r = ix;
        double w = 1.0;
        for (std::size_t a = 0; a < nax; ++a) {
            digits[a] = r % nx;
            r /= nx;
            w *= grid.x_rule.w[digits[a]];
        }
        wx[ix] = w;
    }
    // per-term flat x products
    std::vector<std::vector<std::vector<Complex>>> xprod(ge.groups.size());
    for (std::size_t gi = 0; gi < ge.groups.size(); ++gi) {
        xprod[gi].resize(ge.groups[gi].size());
        for (std::size_t ti = 0; ti < ge.groups[gi].size(); ++ti) {
            auto& arr = xprod[gi][ti];
            arr.assign(nx_flat, Complex{1.0, 0.0});
            const auto& et = ge.groups[gi][ti];
            for (std::size_t ix = 0; ix < nx_flat; ++ix) {
                std::size_t r = ix;
                Complex v{1.0, 0.0};
                for (std::size_t a = 0; a < nax; ++a) {
                    const std::size_t d = r % nx;
                    r /= nx;
                    if (et.x_idx[a] >= 0)
                        v *= ge.factor_store[static_cast<std::size_t>(et.x_idx[a])][d];
                }
                arr[ix] = v;
            }
        }
    }

    const double half_p = 0.5 * p;
    std::vector<double> u_partials(nu, 0.0);
    double max_integrand = 0.0;
    for (std::size_t iu = 0; iu < nu; ++iu) {
        std::vector<double> x_vals(nx_flat, 0.0);
        for (std::size_t ix = 0; ix < nx_flat; ++ix) {
            double s2 = 0.0;
            for (std::size_t gi = 0; gi < ge.groups.size(); ++gi) {
                Complex cg{};
                for (std::size_t ti = 0; ti < ge.groups[gi].size(); ++ti)
                    cg += ge.groups[gi][ti].u_vals[iu] * xprod[gi][ti][ix];
                s2 += std::norm(cg);
            }
            const double integrand = (s2 == 0.0) ? 0.0 : std::pow(s2, half_p);
            max_integrand = std::max(max_integrand, integrand);
            x_vals[ix] = integrand * wx[ix];
        }
        u_partials[iu] =
            grid.u_rule.w[iu] * CompositeRule::pairwise_sum(std::span<const double>(x_vals));
    }
    const double total = CompositeRule::pairwise_sum(std::span<const double>(u_partials));
    res.value = std::pow(std::max(total, 0.0), 1.0 / p);

    // hull samples: u extremes at x = 0, x faces at mid-u
    const double u_lo = grid.u_rule.x.front(), u_hi = grid.u_rule.x.back();
    const double u_mid = 0.5 * (u_lo + u_hi);
    const double x_face = std::max(std::abs(grid.x_rule.x.front()), std::abs(grid.x_rule.x.back()));
    std::vector<double> x0(static_cast<std::size_t>(N), 0.0);
    auto weighted_norm_p = [&](std::span<const double> x, double u) {
        double s2 = 0.0;
        for (const Term& t : form.terms()) {
            // group-collapse unnecessary for a hull estimate
            s2 += std::norm(t.coef.eval_shifted(x, u, shift));
        }
        return (s2 == 0.0) ? 0.0 : std::pow(s2, half_p);
    };
    res.boundary_integrand = std::max(weighted_norm_p(x0, u_lo), weighted_norm_p(x0, u_hi));
    for (int a = 1; a <= N; ++a) {
        std::vector<double> xf(static_cast<std::size_t>(N), 0.0);
        xf[static_cast<std::size_t>(a - 1)] = x_face;
        res.boundary_integrand = std::max(res.boundary_integrand, weighted_norm_p(xf, u_mid));
        xf[static_cast<std::size_t>(a - 1)] = -x_face;
        res.boundary_integrand = std::max(res.boundary_integrand, weighted_norm_p(xf, u_mid));
    }
    res.coverage_ok = res.boundary_integrand <= 1e-10 * (1.0 + max_integrand);
    return res;
}

double lp_norm(const TemplateForm& form, double p, const QuadratureGrid& grid) {
    return lp_norm_checked(form, p, grid).value;
}

Complex l2_pairing(const TemplateForm& f, const TemplateForm& g, const QuadratureGrid& grid) {
    if (f.ambient_N() != g.ambient_N() || f.degree() != g.degree())
        throw std::domain_error("l2_pairing: mismatched forms");
    const int N = f.ambient_N();
    const double shift = f.degree() - 0.5 * N;  // split of y^{2k} e^{-Nu}
    const std::size_t nax = static_cast<std::size_t>(N);
    std::vector<Complex> acc;
    std::vector<double> x(nax, 0.0);
    std::vector<std::size_t> digits(nax, 0);
    const std::size_t nx = grid.x_rule.x.size();
    for (std::size_t iu = 0; iu < grid.u_rule.x.size(); ++iu) {
        const double u = grid.u_rule.x[iu];
        std::size_t total = 1;
        for (std::size_t a = 0; a < nax; ++a) total *= nx;
        for (std::size_t ix = 0; ix < total; ++ix) {
            std::size_t r = ix;
            double w = grid.u_rule.w[iu];
            for (std::size_t a = 0; a < nax; ++a) {
                digits[a] = r % nx;
                r /= nx;
                x[a] = grid.x_rule.x[digits[a]];
                w *= grid.x_rule.w[digits[a]];
            }
            std::map<BasisForm, Complex> fv, gv;
            for (const Term& t : f.terms()) fv[t.basis] += t.coef.eval_shifted(x, u, shift);
            for (const Term& t : g.terms()) gv[t.basis] += t.coef.eval_shifted(x, u, shift);
            Complex s{};
            for (const auto& [b, v] : fv) {
                auto it = gv.find(b);
                if (it != gv.end()) s += v * std::conj(it->second);
            }
            acc.push_back(w * s);
        }
    }
    return CompositeRule::pairwise_sum(std::span<const Complex>(acc));
}

// --- approximate eigenforms ---------------------------------------------

TemplateForm weyl_form(int n, int N, int k, double p, double s) {
    if (n < 2) throw std::domain_error("weyl_form: n must be >= 2");
    if (!(p >= 1.0 && p <= 2.0)) throw std::domain_error("weyl_form: need 1 <= p <= 2");
    if (k < 0 || k > N) throw std::domain_error("weyl_form: need 0 <= k <= N for a dx^J basis");
    const double lo = -std::pow(static_cast<double>(n), 3.0 * p);
    const double hi = std::log(static_cast<double>(n));
    CoefficientTerm c;
    c.mu = Complex(N / p - k, s);
    c.c = make_plateau(lo, hi);
    ProfilePtr bump = make_bump(0.0, 1.0);
    for (int a = 1; a <= N; ++a) c.xfactors.push_back({a, bump, 0});
    std::vector<int> J(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) J[static_cast<std::size_t>(i)] = i + 1;
    TemplateForm f(N, k);
    f.add_term(std::move(c), basis_b(std::move(J)));
    return f;
}

Complex weyl_eigenvalue(int N, int k, double p, double s) {
    return eigen_factor_b(Complex(N / p - k, s), N, k);
}

QuadratureGrid weyl_grid(int n, int /*N*/, double p, int x_points, int u_per_cell) {
    const double lo = -std::pow(static_cast<double>(n), 3.0 * p);
    const double hi = std::log(static_cast<double>(n));
    std::vector<double> bp;
    auto split = [&bp](double a, double b, int cells) {
        for (int i = 0; i < cells; ++i) bp.push_back(a + (b - a) * i / cells);
    };
    split(lo, lo + 1.0, 4);                       // left ramp
    const double plateau_len = (hi - 1.0) - (lo + 1.0);
    const double tail = std::min(45.0, plateau_len);
    if (plateau_len > tail + 1e-9) split(lo + 1.0, hi - 1.0 - tail, 8);  // wide middle
    split(hi - 1.0 - tail, hi - 1.0, std::max(1, static_cast<int>(std::ceil(tail))));
    split(hi - 1.0, hi, 4);                       // right ramp
    bp.push_back(hi);
    QuadratureGrid g;
    g.u_rule = CompositeRule::over_cells(bp, u_per_cell);
    std::vector<double> xb{-1.0, 1.0};
    g.x_rule = CompositeRule::over_cells(xb, x_points);
    return g;
}

double weyl_quotient(int n, int N, int k, double p, double s, const QuadratureGrid& grid) {
    TemplateForm omega = weyl_form(n, N, k, p, s);
    TemplateForm residual = laplacian(omega) - weyl_eigenvalue(N, k, p, s) * omega;
    const double num = lp_norm(residual, p, grid);
    const double den = lp_norm(omega, p, grid);
    if (!(den > 0.0)) throw std::runtime_error("weyl_quotient: zero norm");
    return num / den;
}

double weyl_quotient(int n, int N, int k, double p, double s) {
    return weyl_quotient(n, N, k, p, s, weyl_grid(n, N, p));
}

// --- harmonic middle-degree form ------------------------------------------

TemplateForm middle_harmonic(double nu, int j, std::vector<int> I, int N) {
    if (!(nu > 0.0)) throw std::domain_error("middle_harmonic: nu must be > 0");
    if (N % 2 == 0) throw std::domain_error("middle_harmonic: N must be odd");
    if (static_cast<int>(I.size()) != (N - 1) / 2)
        throw std::domain_error("middle_harmonic: |I| must be (N-1)/2");
    std::sort(I.begin(), I.end());
    BasisForm bi = basis_b(I);
    SignedBasis w = wedge_dx(j, bi);
    if (w.sign == 0) throw std::domain_error("middle_harmonic: dx^j ^ dx^I = 0 (index clash)");
    const double root = std::sqrt(nu);
    ProfilePtr decay = make_exp_decay_y(root);
    ProfilePtr wave = make_plane_wave(root);

    TemplateForm f(N, (N + 1) / 2);
    CoefficientTerm c1;
    c1.coef = static_cast<double>(w.sign);
    c1.c = decay;
    c1.xfactors.push_back({j, wave, 0});
    f.add_term(std::move(c1), w.basis);

    CoefficientTerm c2;
    c2.coef = Complex(0.0, 1.0);
    c2.c = decay;
    c2.xfactors.push_back({j, wave, 0});
    f.add_term(std::move(c2), basis_a(I));
    return f;
}

std::string to_json(const TemplateForm& form) {
    JsonWriter w;
    w.begin_object();
    w.field("ambient_N", form.ambient_N()).field("degree", form.degree());
    w.key("terms").begin_array();
    for (const Term& t : form.terms()) {
        w.begin_object();
        w.field("coef_re", t.coef.coef.real()).field("coef_im", t.coef.coef.imag());
        w.field("mu_re", t.coef.mu.real()).field("mu_im", t.coef.mu.imag());
        w.field("logpow", t.coef.logpow);
        if (t.coef.c) {
            w.field("c", t.coef.c->describe());
            w.field("c_order", t.coef.c_order);
        }
        w.key("x_factors").begin_array();
        for (const AxisFactor& f2 : t.coef.xfactors) {
            w.begin_object();
            w.field("axis", f2.axis).field("profile", f2.profile->describe());
            w.field("order", f2.order);
            w.end_object();
        }
        w.end_array();
        w.field("basis", std::string(t.basis.kind == BasisForm::Kind::A ? "dy^dx" : "dx"));
        w.key("indices").begin_array();
        for (int i : t.basis.idx) w.value(i);
        w.end_array();
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

}  // namespace lpspec::forms

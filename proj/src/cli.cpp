#include "lpspec/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "lpspec/check_suite.hpp"
#include "lpspec/halfplane_forms.hpp"
#include "lpspec/middle_degree.hpp"
#include "lpspec/model_kernels.hpp"
#include "lpspec/radial_ode.hpp"
#include "lpspec/spectral_regions.hpp"

namespace lpspec::cli {

namespace {

namespace rg = lpspec::regions;
namespace fm = lpspec::forms;
namespace rd = lpspec::radial;
namespace md = lpspec::middle;
namespace kn = lpspec::kernels;

// every artifact opens with its effective configuration, one "# key=value"
// line per parameter (CSV) or a "params" object (JSON)
std::string csv_header_line(const std::string& k, const std::string& v) {
    return "# " + k + "=" + v + "\n";
}

std::string fmt_int(long long v) { return std::to_string(v); }

}  // namespace

// --- regions ---------------------------------------------------------------

std::string regions_csv(const RegionsConfig& c) {
    // the echoed degree/exponent are the folded representatives the region
    // geometry actually uses, so dual configurations emit identical bytes
    std::string head;
    head += csv_header_line("command", "regions");
    head += csv_header_line("N", fmt_int(c.N));
    head += csv_header_line("k_reduced", fmt_int(rg::reduce_degree(c.N, c.k)));
    head += csv_header_line("p_reduced", fmt_g17(c.p > 2.0 ? rg::dual_exponent(c.p) : c.p));
    head += csv_header_line("s_max", fmt_g17(c.s_max));
    head += csv_header_line("s_steps", fmt_int(c.s_steps));
    head += csv_header_line("seed", fmt_int(static_cast<long long>(c.seed)));
    CsvWriter w({"s", "re", "im"});
    rg::RegionSpec spec(c.N, c.k, c.p);
    for (int i = 0; i < c.s_steps; ++i) {
        const double s = -c.s_max + 2.0 * c.s_max * i / (c.s_steps - 1.0);
        const auto b = rg::boundary_point(spec, s);
        w.row({s, b.re, b.im});
    }
    return head + w.str();
}

std::string regions_json(const RegionsConfig& c) {
    rg::RegionSpec spec(c.N, c.k, c.p);
    const auto g = rg::parabola_geometry(spec);
    const auto [l1, l2] = rg::bottom_values(c.N, c.k);
    JsonWriter w;
    w.begin_object();
    w.field("command", std::string("regions"));
    w.field("seed", static_cast<double>(c.seed));
    w.key("params").begin_object();
    w.field("N", c.N).field("k", c.k).field("p", c.p).field("s_max", c.s_max).field("s_steps",
                                                                                    c.s_steps);
    w.end_object();
    w.field("reduced_degree", rg::reduce_degree(c.N, c.k));
    w.field("vertex", g.vertex_v);
    w.field("half_width", g.half_width_d);
    w.field("bottom_lambda1", l1);
    w.field("bottom_lambda2", l2);
    const bool middle = (c.N % 2 == 1) && (2 * rg::reduce_degree(c.N, c.k) == c.N + 1);
    w.field("isolated_zero",
            middle && !rg::contains(spec, {0.0, 0.0}, rg::Mode::closed));
    w.end_object();
    return w.str();
}

std::string regions_raster_csv(const RegionsConfig& c) {
    std::string head;
    head += csv_header_line("command", "regions-raster");
    head += csv_header_line("N", fmt_int(c.N));
    head += csv_header_line("k_reduced", fmt_int(rg::reduce_degree(c.N, c.k)));
    head += csv_header_line("p", fmt_g17(c.p));
    head += csv_header_line("seed", fmt_int(static_cast<long long>(c.seed)));
    CsvWriter w({"x", "y", "in_region", "is_eigenvalue"});
    rg::RegionSpec spec(c.N, c.k, c.p);
    for (int j = 0; j < c.ny; ++j)
        for (int i = 0; i < c.nx; ++i) {
            const double x = c.x0 + (c.x1 - c.x0) * i / (c.nx - 1.0);
            const double y = c.y0 + (c.y1 - c.y0) * j / (c.ny - 1.0);
            const rg::SpectralPoint lam(x, y);
            w.row({x, y, rg::contains(spec, lam, rg::Mode::closed) ? 1.0 : 0.0,
                   rg::is_lp_eigenvalue(spec, lam) ? 1.0 : 0.0});
        }
    return head + w.str();
}

// --- weyl -------------------------------------------------------------------

std::string weyl_csv(const WeylConfig& c) {
    std::string head;
    head += csv_header_line("command", "weyl");
    head += csv_header_line("N", fmt_int(c.N));
    head += csv_header_line("k", fmt_int(c.k));
    head += csv_header_line("p", fmt_g17(c.p));
    head += csv_header_line("s", fmt_g17(c.s));
    head += csv_header_line("seed", fmt_int(static_cast<long long>(c.seed)));
    CsvWriter w({"n", "quotient"});
    for (int n : c.n_list) w.row({static_cast<double>(n), fm::weyl_quotient(n, c.N, c.k, c.p, c.s)});
    return head + w.str();
}

std::string weyl_json(const WeylConfig& c) {
    std::vector<double> qs;
    for (int n : c.n_list) qs.push_back(fm::weyl_quotient(n, c.N, c.k, c.p, c.s));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const double lx = std::log(c.n_list[i]), ly = std::log(qs[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(qs.size());
    const double slope = (n > 1.5) ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
    const auto target = fm::weyl_eigenvalue(c.N, c.k, c.p, c.s);
    JsonWriter w;
    w.begin_object();
    w.field("command", std::string("weyl"));
    w.field("seed", static_cast<double>(c.seed));
    w.key("params").begin_object();
    w.field("N", c.N).field("k", c.k).field("p", c.p).field("s", c.s);
    w.key("n_list").begin_array();
    for (int nn : c.n_list) w.value(nn);
    w.end_array();
    w.end_object();
    w.field("target_re", target.real()).field("target_im", target.imag());
    w.key("quotients").begin_array();
    for (double q : qs) w.value(q);
    w.end_array();
    w.field("fitted_exponent", slope);
    if (!c.n_list.empty()) {
        std::ostringstream raw;  // serialized smallest family member, verbatim JSON
        raw << fm::to_json(fm::weyl_form(c.n_list.front(), c.N, c.k, c.p, c.s));
        w.key("form");
        w.raw_json(raw.str());
    }
    w.end_object();
    return w.str();
}

// --- ode --------------------------------------------------------------------

std::string ode_csv(const OdeConfig& c) {
    std::string head;
    head += csv_header_line("command", "ode");
    head += csv_header_line("N", fmt_int(c.N));
    head += csv_header_line("k", fmt_int(c.k));
    head += csv_header_line("lambda", fmt_g17(c.lambda));
    head += csv_header_line("L_re", fmt_g17(c.L_re));
    head += csv_header_line("L_im", fmt_g17(c.L_im));
    head += csv_header_line("R", fmt_g17(c.R));
    head += csv_header_line("seed", fmt_int(static_cast<long long>(c.seed)));
    rd::RadialProblem prob{c.N, c.k, c.lambda, {c.L_re, c.L_im}};
    rd::IntegrateOptions opt;
    opt.samples = 600;
    const auto prof = rd::integrate(prob, c.R, opt);
    CsvWriter w({"r", "abs_phi", "arg_phi"});
    for (std::size_t i = 0; i < prof.r.size(); ++i) {
        // |phi| with the renormalization offset restored (may overflow to inf
        // for strongly growing runs; arg is offset-free)
        const double a = std::exp(prof.log_abs_phi(i));
        w.row({prof.r[i], a, std::arg(prof.phi[i])});
    }
    return head + w.str();
}

std::string ode_json(const OdeConfig& c) {
    rd::RadialProblem prob{c.N, c.k, c.lambda, {c.L_re, c.L_im}};
    const auto g = rd::growth_check(prob, std::max(c.R, 60.0));
    JsonWriter w;
    w.begin_object();
    w.field("command", std::string("ode"));
    w.field("seed", static_cast<double>(c.seed));
    w.key("params").begin_object();
    w.field("N", c.N).field("k", c.k).field("lambda", c.lambda);
    w.field("L_re", c.L_re).field("L_im", c.L_im).field("R", c.R).field("p", c.p);
    w.end_object();
    w.field("a_closed_form", g.closed_form.a);
    w.field("b_closed_form", g.closed_form.b);
    w.field("slope_expected", g.slope_expected);
    w.field("slope_fit", g.slope_fitted);
    w.field("fit_flagged", g.flagged);
    if (c.p > 2.0) {
        w.field("is_lp", rd::is_lp_integrable({c.L_re, c.L_im}, c.p, c.N, c.k));
        w.field("region_interior",
                rg::contains(rg::RegionSpec(c.N, c.k, c.p), {c.L_re, c.L_im},
                             rg::Mode::interior));
    }
    w.end_object();
    return w.str();
}

// --- middle ------------------------------------------------------------------

std::string middle_csv(const MiddleConfig& c) {
    const double lam = (c.lambda > 0.0) ? c.lambda : 0.25 * (c.N + 1.0) * (c.N + 1.0);
    std::string head;
    head += csv_header_line("command", "middle");
    head += csv_header_line("N", fmt_int(c.N));
    head += csv_header_line("lambda", fmt_g17(lam));
    head += csv_header_line("seed", fmt_int(static_cast<long long>(c.seed)));
    CsvWriter w({"p", "exponent", "converges"});
    for (double p : c.p_list) {
        const auto t = md::lp_tail(md::MiddleFamily(c.N, lam, p), 30.0);
        w.row({p, t.exponent_estimate, (t.exponent_estimate < 0.0) ? 1.0 : 0.0});
    }
    return head + w.str();
}

std::string middle_json(const MiddleConfig& c) {
    const double lam = (c.lambda > 0.0) ? c.lambda : 0.25 * (c.N + 1.0) * (c.N + 1.0);
    JsonWriter w;
    w.begin_object();
    w.field("command", std::string("middle"));
    w.field("seed", static_cast<double>(c.seed));
    w.key("params").begin_object();
    w.field("N", c.N).field("lambda", lam);
    w.end_object();
    w.field("threshold_exact", md::threshold(c.N));
    w.field("threshold_measured", md::measured_threshold(c.N, lam));
    w.end_object();
    return w.str();
}

// --- kernels -------------------------------------------------------------------

std::vector<CheckReport> kernels_reports(const KernelsConfig& c) {
    std::vector<CheckReport> out;
    auto want = [&](const char* name) { return c.check == "all" || c.check == name; };
    if (want("heat")) {
        for (double t : {0.1, 1.0, 10.0})
            out.push_back(CheckReport::against_value(
                "heat_mass_t" + fmt_g17(t), "total heat mass equals 1 (stochastic completeness)",
                kn::h3_heat_mass(t), 1.0, 1e-6));
        out.push_back(CheckReport::against_value(
            "heat_semigroup", "int h(s,.) h(t,.) dV = h(s+t, 0) at s=0.3, t=0.5",
            kn::h3_semigroup_diag(0.3, 0.5), kn::h3_heat(0.8, 0.0), 1e-4));
    }
    if (want("resolvent")) {
        for (double m : {0.5, 1.0, 2.0})
            for (double xi : {1.0, 2.0, 4.0})
                out.push_back(CheckReport::against_value(
                    "resolvent_mass_m" + fmt_g17(m) + "_xi" + fmt_g17(xi),
                    "int g_{m,xi} dV = xi^{-2m}", kn::resolvent_mass({m, xi}),
                    std::pow(xi, -2.0 * m), 1e-6));
    }
    if (want("gaussian")) {
        const auto g = kn::gaussian_bound_check();
        auto rep = CheckReport::against_bound(
            "gaussian_bound_C2", "Gaussian upper bound feasible with C2 <= 8",
            g.feasible ? g.C2_min : 1e9, 8.0);
        rep.note = "C1 = " + fmt_g17(g.C1) + ", small-time C2 = " + fmt_g17(g.small_time_C2);
        out.push_back(rep);
    }
    if (want("wave")) {
        kn::WaveParams wp;
        wp.h = 2e-3;
        const auto r = kn::wave_cone_check(wp);
        out.push_back(CheckReport::against_bound(
            "wave_cone", "outside-cone energy fraction <= 1e-6 at h = 2e-3", r.outside_fraction,
            1e-6));
    }
    if (want("volume")) {
        for (int N : {1, 2, 3, 5}) {
            std::vector<double> grid;
            for (double R = 1.0; R <= 40.0 + 1e-9; R += 1.0) grid.push_back(R);
            const auto vg = kn::volume_growth(N, grid, 0.1);
            auto rep = CheckReport::against_value(
                "volume_rate_N" + std::to_string(N), "log vol(B_40)/40 approaches N",
                vg.rate_at_R, static_cast<double>(N), 1e-2);
            rep.note = "fitted slope " + fmt_g17(vg.fitted_slope) + ", fitted C(0.1) " +
                       fmt_g17(vg.fitted_C);
            out.push_back(rep);
        }
    }
    if (want("schur")) {
        const auto s = kn::schur_bound_check(100, 4, c.seed);
        out.push_back(CheckReport::against_value(
            "schur_bound", "zero violations of ||T w||_q <= C ||w||_p", s.violations, 0, 0.0));
    }
    if (want("impo")) {
        std::mt19937_64 rng(c.seed);
        auto urand = [&rng](double lo, double hi) {
            return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
        };
        int fails = 0;
        for (int i = 0; i < 100000; ++i)
            if (!kn::impo_check(urand(1e-3, 10.0), urand(0.0, 20.0), urand(1e-3, 10.0),
                                urand(0.1, 50.0)))
                ++fails;
        out.push_back(CheckReport::against_value(
            "impo_inequality", "-d^2/(4 C2 t) - s^2 t <= -s d/sqrt(C2) on 1e5 draws", fails, 0,
            0.0));
    }
    if (want("taylor")) {
        double worst = 0.0;
        for (int n : {1, 2, 4})
            worst = std::max(worst,
                             kn::taylor_remainder_check(kn::resolvent_symbol({2.0, 0.8}), 0.7, n,
                                                        1.0));
        out.push_back(CheckReport::against_bound(
            "taylor_remainder", "Taylor-with-remainder residual <= 1e-8", worst, 1e-8));
    }
    if (want("fourier")) {
        const auto f = kn::fourier_decay_check(2.0, 1.5, 0.2);
        out.push_back(CheckReport::against_bound(
            "fourier_closed_form", "numeric transform matches (pi/c) e^{-c xi} within 1e-6",
            f.max_abs_err, 1e-6));
    }
    if (want("symbol")) {
        const auto s = kn::symbol_decay_check({1.0, 1.5}, 4);
        double worst = 0.0;
        for (double v : s.sup_by_order) worst = std::max(worst, v);
        out.push_back(CheckReport::against_bound(
            "symbol_decay", "sup |g^{(j)}(w^2)| (1+|w|)^j finite for j <= 4",
            s.finite ? worst : 1e18, 1e12));
    }
    if (out.empty()) throw std::domain_error("kernels: unknown check name '" + c.check + "'");
    return out;
}

std::string kernels_json(const KernelsConfig& c) {
    auto reports = kernels_reports(c);
    if (!c.timings)
        for (auto& r : reports) r.runtime_ms = 0.0;
    JsonWriter w;
    w.begin_object();
    w.field("command", std::string("kernels"));
    w.field("check", c.check);
    w.field("seed", static_cast<double>(c.seed));
    w.key("reports");
    // splice the report array
    w.begin_array();
    for (const auto& r : reports) {
        w.begin_object();
        w.field("name", r.name)
            .field("claim", r.claim)
            .field("measured", r.measured)
            .field("expected", r.expected)
            .field("tolerance", r.tolerance)
            .field("pass", r.pass);
        if (!r.note.empty()) w.field("note", r.note);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

std::string kernels_csv(const KernelsConfig& c) {
    std::string head;
    head += csv_header_line("command", "kernels");
    head += csv_header_line("check", c.check);
    head += csv_header_line("seed", fmt_int(static_cast<long long>(c.seed)));
    if (c.check == "heat") {
        CsvWriter w({"t", "mass"});
        for (double t = 0.1; t <= 10.0 + 1e-9; t *= std::sqrt(10.0))
            w.row({t, kn::h3_heat_mass(t)});
        return head + w.str();
    }
    if (c.check == "volume") {
        CsvWriter w({"N", "R", "log_vol_over_R"});
        for (int N : {1, 2, 3, 5})
            for (double R = 10.0; R <= 40.0 + 1e-9; R += 5.0)
                w.row({static_cast<double>(N), R, kn::log_ball_volume(N, R) / R});
        return head + w.str();
    }
    if (c.check == "wave") {
        CsvWriter w({"h", "outside_fraction"});
        for (double h : {8e-3, 4e-3, 2e-3}) {
            kn::WaveParams wp;
            wp.h = h;
            w.row({h, kn::wave_cone_check(wp).outside_fraction});
        }
        return head + w.str();
    }
    throw std::domain_error("kernels: no CSV dump for check '" + c.check + "'");
}

// --- driver ---------------------------------------------------------------------

namespace {

void emit(const std::string& out, const std::string& format, const std::string& csv,
          const std::string& json) {
    if (out.empty() || out == "-") {
        std::cout << (format == "json" ? json : csv);
        return;
    }
    write_text_file(out + ".csv", csv);
    write_text_file(out + ".json", json);
}

}  // namespace

namespace {

// key=value lines with '#' comments; explicit flags take precedence because
// config entries are injected ahead of them with a take-last policy
std::vector<std::pair<std::string, std::string>> load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::domain_error("cannot open config file: " + path);
    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return (a == std::string::npos) ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (!key.empty()) kv.emplace_back(key, val);
    }
    return kv;
}

}  // namespace

int run(const std::vector<std::string>& args_in) {
    // peel off --config and splice its entries right after the subcommand name
    std::vector<std::string> args;
    std::string config_path;
    for (std::size_t i = 0; i < args_in.size(); ++i) {
        if (args_in[i] == "--config" && i + 1 < args_in.size()) {
            config_path = args_in[++i];
            continue;
        }
        args.push_back(args_in[i]);
    }
    if (!config_path.empty()) {
        try {
            const auto kv = load_config(config_path);
            std::vector<std::string> spliced;
            std::size_t i = 0;
            if (!args.empty() && !args[0].starts_with("--")) spliced.push_back(args[i++]);
            for (const auto& [k, v] : kv) {
                spliced.push_back("--" + k);
                spliced.push_back(v);
            }
            for (; i < args.size(); ++i) spliced.push_back(args[i]);
            args = std::move(spliced);
        } catch (const std::domain_error& e) {
            std::cerr << "usage error: " << e.what() << "\n";
            return 2;
        }
    }

    CLI::App app{"numerical toolkit for the Lp spectrum of the form Laplacian on "
                 "hyperbolic space"};
    app.require_subcommand(1);
    app.fallthrough();  // common flags may follow the subcommand name
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::string out, format = "csv";
    std::uint64_t seed = 12345;
    bool timings = false;
    std::string config_doc;  // consumed before parsing; listed here for --help
    app.add_option("--config", config_doc, "key=value config file ('#' comments; flags override)");
    app.add_option("--out", out, "output base path ('-' or empty: stdout)")->capture_default_str();
    app.add_option("--format", format, "stdout format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--seed", seed, "seed for randomized property checks")->capture_default_str();
    app.add_flag("--timings", timings, "include runtimes in JSON reports");

    RegionsConfig rc;
    auto* regions = app.add_subcommand("regions", "boundary parabola samples and region metadata");
    regions->add_option("--N", rc.N, "hyperbolic space H^{N+1}")->capture_default_str();
    regions->add_option("--k", rc.k, "form degree")->capture_default_str();
    regions->add_option("--p", rc.p, "integrability exponent")->capture_default_str();
    regions->add_option("--s-max", rc.s_max, "parameter range [-s_max, s_max]")
        ->capture_default_str();
    regions->add_option("--s-steps", rc.s_steps, "number of samples")->capture_default_str();
    regions->add_flag("--raster", rc.raster, "also emit a membership raster");
    regions->add_option("--nx", rc.nx, "raster x resolution")->capture_default_str();
    regions->add_option("--ny", rc.ny, "raster y resolution")->capture_default_str();

    WeylConfig wc;
    auto* weyl = app.add_subcommand("weyl", "approximate-eigenform quotient sweep");
    weyl->add_option("--N", wc.N)->capture_default_str();
    weyl->add_option("--k", wc.k)->capture_default_str();
    weyl->add_option("--p", wc.p)->capture_default_str();
    weyl->add_option("--s", wc.s)->capture_default_str();
    weyl->add_option("--n-list", wc.n_list, "plateau sizes")->delimiter(',')->capture_default_str();

    OdeConfig oc;
    auto* ode = app.add_subcommand("ode", "radial profile and growth-rate record");
    ode->add_option("--N", oc.N)->capture_default_str();
    ode->add_option("--k", oc.k)->capture_default_str();
    ode->add_option("--lambda", oc.lambda, "sphere eigenvalue")->capture_default_str();
    ode->add_option("--Lre", oc.L_re, "Re of the spectral parameter")->capture_default_str();
    ode->add_option("--Lim", oc.L_im, "Im of the spectral parameter")->capture_default_str();
    ode->add_option("--R", oc.R, "integration endpoint")->capture_default_str();
    ode->add_option("--p", oc.p, "exponent for the integrability record (> 2)")
        ->capture_default_str();

    MiddleConfig mc;
    auto* middle = app.add_subcommand("middle", "tail exponents and the convergence threshold");
    middle->add_option("--N", mc.N, "odd sphere dimension")->capture_default_str();
    middle->add_option("--lambda", mc.lambda, "family eigenvalue (0: lowest)")
        ->capture_default_str();
    middle->add_option("--p-list", mc.p_list, "exponent sweep")->delimiter(',')
        ->capture_default_str();

    KernelsConfig kc;
    auto* kernels = app.add_subcommand("kernels", "heat/resolvent/wave/volume checks");
    kernels->add_option("--check", kc.check,
                        "heat|resolvent|gaussian|wave|volume|schur|impo|taylor|fourier|symbol|all")
        ->capture_default_str();

    auto* check_all = app.add_subcommand("check-all", "run the full acceptance suite");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());  // CLI11 parses reversed
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") ? 0 : 2;
    }

    rc.seed = wc.seed = oc.seed = mc.seed = kc.seed = seed;
    kc.timings = timings;

    try {
        if (regions->parsed()) {
            const bool to_file = !out.empty() && out != "-";
            std::string csv = regions_csv(rc);
            if (rc.raster && !to_file) csv += regions_raster_csv(rc);
            emit(out, format, csv, regions_json(rc));
            if (to_file && rc.raster) write_text_file(out + "_raster.csv", regions_raster_csv(rc));
        } else if (weyl->parsed()) {
            emit(out, format, weyl_csv(wc), weyl_json(wc));
        } else if (ode->parsed()) {
            emit(out, format, ode_csv(oc), ode_json(oc));
        } else if (middle->parsed()) {
            emit(out, format, middle_csv(mc), middle_json(mc));
        } else if (kernels->parsed()) {
            const std::string json = kernels_json(kc);
            std::string csv;
            bool have_csv = true;
            try {
                csv = kernels_csv(kc);
            } catch (const std::domain_error&) {
                have_csv = false;  // this check has no plot dump, only the report
            }
            if (out.empty() || out == "-") {
                std::cout << (format == "json" || !have_csv ? json : csv);
            } else {
                write_text_file(out + ".json", json);
                if (have_csv) write_text_file(out + ".csv", csv);
            }
            for (const auto& r : kernels_reports(kc))
                if (!r.pass) return 1;
        } else if (check_all->parsed()) {
            const auto results = checks::run_all(seed);
            bool all_pass = true;
            for (const auto& r : results) {
                std::cout << checks::summary_line(r) << "\n";
                all_pass = all_pass && r.pass;
            }
            const std::string json = checks::to_json(results, timings);
            if (!out.empty() && out != "-") write_text_file(out + ".json", json);
            return all_pass ? 0 : 1;
        }
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace lpspec::cli

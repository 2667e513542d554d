// cli.hpp — structured front end: every subcommand is a pure artifact
// builder (config in, CSV/JSON strings out), so outputs are byte-identical
// for identical configs and the test suite can exercise the command surface
// in-process.  run() wires the builders to flags/config-file parsing.

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "lpspec/report.hpp"

namespace lpspec::cli {

struct RegionsConfig {
    int N = 3;
    int k = 0;
    double p = 1.0;
    double s_max = 5.0;
    int s_steps = 201;
    // optional membership raster over [x0,x1] x [y0,y1]
    bool raster = false;
    double x0 = -2.0, x1 = 8.0, y0 = -6.0, y1 = 6.0;
    int nx = 81, ny = 81;
    std::uint64_t seed = 12345;
};
std::string regions_csv(const RegionsConfig& c);
std::string regions_json(const RegionsConfig& c);
std::string regions_raster_csv(const RegionsConfig& c);

struct WeylConfig {
    int N = 3;
    int k = 0;
    double p = 1.0;
    double s = 0.0;
    std::vector<int> n_list{4, 8, 16, 32};
    std::uint64_t seed = 12345;
};
std::string weyl_csv(const WeylConfig& c);
std::string weyl_json(const WeylConfig& c);

struct OdeConfig {
    int N = 3;
    int k = 1;
    double lambda = 4.0;  // sphere eigenvalue
    double L_re = 0.0, L_im = 0.0;
    double R = 30.0;
    double p = 4.0;  // exponent for the integrability record (> 2)
    std::uint64_t seed = 12345;
};
std::string ode_csv(const OdeConfig& c);
std::string ode_json(const OdeConfig& c);

struct MiddleConfig {
    int N = 3;
    double lambda = 0.0;  // 0: lowest family value ((N+1)/2)^2
    std::vector<double> p_list{1.0, 1.2, 1.4, 1.5, 1.6, 1.8, 2.0, 2.5, 3.0};
    std::uint64_t seed = 12345;
};
std::string middle_csv(const MiddleConfig& c);
std::string middle_json(const MiddleConfig& c);

struct KernelsConfig {
    std::string check = "all";  // heat|resolvent|gaussian|wave|volume|schur|impo|
                                // taylor|fourier|symbol|all
    std::uint64_t seed = 12345;
    bool timings = false;
};
std::vector<CheckReport> kernels_reports(const KernelsConfig& c);
std::string kernels_json(const KernelsConfig& c);
std::string kernels_csv(const KernelsConfig& c);  // plot data for heat/volume/wave

// argv-style entry: exit code 0 = pass, 1 = check failure, 2 = usage error
int run(const std::vector<std::string>& args);

}  // namespace lpspec::cli

// Acceptance suite driver: runs the numbered criteria and prints one
// PASS/FAIL line per criterion (plus per-check detail lines).  Exit code is
// the number of failing criteria, capped at 125.
//
//   acceptance                 run everything
//   acceptance --criterion 7   run one criterion
//   acceptance --seed 99       reseed the randomized property checks

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "lpspec/check_suite.hpp"

int main(int argc, char** argv) {
    int only = 0;
    std::uint64_t seed = 20240811u;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
            seed = std::strtoull(argv[++i], nullptr, 10);
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N] [--seed S]\n");
            return 2;
        }
    }

    int failures = 0;
    const int lo = only ? only : 1;
    const int hi = only ? only : lpspec::checks::kNumCriteria;
    for (int id = lo; id <= hi; ++id) {
        const auto res = lpspec::checks::run_criterion(id, seed);
        std::printf("%s  (%.0f ms)\n", lpspec::checks::summary_line(res).c_str(), res.runtime_ms);
        for (const auto& d : res.details) {
            std::printf("    %s %-28s measured %-24s vs %s (tol %s)\n", d.pass ? "ok  " : "FAIL",
                        d.name.c_str(), lpspec::fmt_g17(d.measured).c_str(),
                        lpspec::fmt_g17(d.expected).c_str(), lpspec::fmt_g17(d.tolerance).c_str());
            if (!d.note.empty()) std::printf("         note: %s\n", d.note.c_str());
        }
        failures += !res.pass;
    }
    return failures > 125 ? 125 : failures;
}

// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion (details per check below each).

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "radmach/verify.hpp"

int main(int argc, char** argv) {
    using namespace radmach::verify;
    VerifyOptions opt;
    opt.threads = 0;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--quick") opt.quick = true;
        if (a == "--threads" && i + 1 < argc) opt.threads = std::atoi(argv[++i]);
    }

    struct Entry {
        const char* criterion;
        const char* suite;
    };
    const std::vector<Entry> plan = {
        {"criterion-1 partition exactness", "partitions"},
        {"criterion-2 J coefficients (+7a pointwise)", "jmonster"},
        {"criterion-3 Eisenstein closed forms", "eisenstein"},
        {"criterion-4 Mathieu oracle equivalence", "mathieu"},
        {"criterion-5/6 eta^3 family and dualities", "dualities"},
        {"criterion-7b E2 quasimodularity", "quasimod"},
        {"criterion-7c completion invariance", "completion"},
        {"criterion-8 level-2 hauptmodul", "hauptmodul2"},
        {"criterion-9 property suites", "properties"},
        {"lipschitz residual block", "lipschitz"},
    };

    bool all = true;
    for (const auto& e : plan) {
        Report rep = run_suite(e.suite, opt);
        bool ok = rep.pass();
        all = all && ok;
        std::printf("%s %s\n", ok ? "PASS" : "FAIL", e.criterion);
        print_report(rep, std::cout);
        std::cout.flush();
        std::fflush(stdout);
    }
    std::printf("%s acceptance\n", all ? "PASS" : "FAIL");
    return all ? 0 : 1;
}

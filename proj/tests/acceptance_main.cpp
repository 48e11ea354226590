// Runs every acceptance criterion at full size and prints one line each.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "deltacone/acceptance.hpp"

int main(int argc, char** argv) {
    using namespace deltacone;
    const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 7;
    int failed = 0;
    run_acceptance(SuiteProfile::full, seed, [&](const CriterionResult& r) {
        std::printf("%s [%2d] %s: %s (%.2f s)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.summary.c_str(),
                    r.report.runtime_seconds);
        std::fflush(stdout);
        if (!r.pass) ++failed;
    });
    std::printf("%d/%d criteria passed\n", kCriterionCount - failed, kCriterionCount);
    return failed == 0 ? 0 : 1;
}

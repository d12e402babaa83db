// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// hard failure. Suites: theorems, oracles, figures, all.
#include <cstdio>
#include <cstring>
#include <string>

#include "cellcov/verify.hpp"

int main(int argc, char** argv) {
    std::string suite = "all";
    std::uint64_t seed = 20240810;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--suite") == 0 && i + 1 < argc) suite = argv[++i];
        else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) seed = std::stoull(argv[++i]);
        else {
            std::fprintf(stderr, "usage: acceptance [--suite theorems|oracles|figures|all] [--seed U64]\n");
            return 2;
        }
    }
    const std::string fixture_dir = std::string(CELLCOV_SOURCE_DIR) + "/fixtures";

    int failures = 0;
    if (suite == "theorems" || suite == "all") {
        std::printf("== theorems suite (seed %llu)\n", static_cast<unsigned long long>(seed));
        failures += cellcov::verify::report(cellcov::verify::theorems_suite(seed, fixture_dir));
    }
    if (suite == "oracles" || suite == "all") {
        std::printf("== oracles suite (seed %llu)\n", static_cast<unsigned long long>(seed));
        failures += cellcov::verify::report(cellcov::verify::oracles_suite(seed));
    }
    if (suite == "figures" || suite == "all") {
        std::printf("== figures suite (documented assumptions; orderings hard, absolutes scored)\n");
        failures += cellcov::verify::report(cellcov::verify::figures_suite(seed));
    }
    if (failures) std::printf("%d hard failure(s)\n", failures);
    else std::printf("all hard checks passed\n");
    return failures == 0 ? 0 : 1;
}

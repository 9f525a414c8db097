// Acceptance gate: runs the thirteen identity suites at their stated scales
// and tolerances, one pass/fail line each.  Exit code = number of failures.
// Run from the repository root so the committed sweep reports resolve, or
// pass --reports-dir.

#include <iostream>
#include <string>
#include <vector>

#include "epslab/suites.hpp"

int main(int argc, char** argv) {
    epslab::SuiteOptions opt;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--reports-dir" && i + 1 < argc) opt.reports_dir = argv[++i];
        else if (arg == "--threads" && i + 1 < argc) opt.threads = std::stoi(argv[++i]);
        else {
            std::cerr << "usage: epslab_acceptance [--reports-dir DIR] [--threads N]\n";
            return 64;
        }
    }

    const std::vector<std::pair<int, std::string>> criteria = {
        {1, "gauss-mod"},          {2, "lemma31"}, {3, "varphi"},      {4, "inverse-unitarity"},
        {5, "additive-twist"},     {6, "c-unit"},  {7, "tate"},        {8, "deligne"},
        {9, "bridge"},             {10, "case1"},  {11, "sweep-table"}, {12, "lemma43"},
        {13, "jacobi-translation"},
    };

    int failures = 0;
    for (const auto& [number, id] : criteria) {
        epslab::SuiteResult r = epslab::run_suite(id, opt);
        std::cout << (r.passed ? "PASS" : "FAIL") << "  criterion-" << number << "  " << r.id << "  ("
                  << r.checks << " checks, " << static_cast<long long>(r.millis) << " ms)";
        if (!r.passed) {
            std::cout << "  " << r.detail;
            ++failures;
        }
        std::cout << "\n" << std::flush;
    }
    if (failures == 0) std::cout << "all 13 acceptance criteria passed\n";
    else std::cout << failures << " criteria failed\n";
    return failures;
}

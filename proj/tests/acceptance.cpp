// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
// Optional arguments select criteria by number.
#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance.hpp"

int main(int argc, char** argv)
{
    scpair::acceptance::Options opt;
    for (int i = 1; i < argc; ++i)
        opt.only.push_back(std::stoi(argv[i]));
    const auto results = scpair::acceptance::run_all(opt, &std::cout);
    int failed = 0;
    for (const auto& r : results)
        failed += !r.passed;
    std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criterion(s) failed" : "acceptance: all passed")
              << '\n';
    return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}

// Release-gate runner: one line per check, exit 0 only when every requested
// check passes. `--criterion N` narrows to one check, `--list` shows the
// registry.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "checks.hpp"
#include "ornstein/error.hpp"

int main(int argc, char** argv) {
    using namespace ornstein::checks;
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            ids.push_back(std::atoi(argv[++i]));
        } else if (std::strcmp(argv[i], "--list") == 0) {
            for (const CheckSpec& s : acceptance_checks())
                std::printf("%2d  %-24s %s (budget %.0fs)\n", s.id, s.name.c_str(),
                            s.summary.c_str(), s.budget_seconds);
            return 0;
        } else {
            std::fprintf(stderr, "usage: %s [--list] [--criterion N]...\n", argv[0]);
            return 2;
        }
    }
    if (ids.empty())
        for (const CheckSpec& s : acceptance_checks()) ids.push_back(s.id);

    bool all = true;
    for (int id : ids) {
        try {
            const CheckResult r = run_acceptance_check(id);
            all = all && r.passed;
            std::printf("criterion %2d  %-24s %s  %7.2fs  %s\n", r.id, r.name.c_str(),
                        r.passed ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
            std::fflush(stdout);
        } catch (const ornstein::DomainError& ex) {
            std::fprintf(stderr, "%s\n", ex.what());
            return 2;
        }
    }
    return all ? 0 : 1;
}

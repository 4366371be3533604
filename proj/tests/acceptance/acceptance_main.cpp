// Acceptance suite runner: executes the numbered criteria and prints one
// pass/fail line each. With --criterion N only that criterion runs; the exit
// code is the number of failures.

#include <cstdio>
#include <cstring>
#include <exception>

#include "criteria.hpp"

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    }

    int failures = 0;
    for (const auto& c : htclag_acceptance::criteria()) {
        if (only != 0 && c.number != only) continue;
        bool ok = false;
        std::string detail;
        try {
            detail = c.run();
            ok = true;
        } catch (const std::exception& e) {
            detail = e.what();
        }
        std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", c.number, c.title,
                    detail.empty() ? "" : " | ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures;
}

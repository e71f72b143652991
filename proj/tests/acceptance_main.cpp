// Acceptance suite driver: runs every criterion (or one, with
// --criterion N) at its pinned tolerance and prints one PASS/FAIL line each.
// Exit status is the number of failing criteria.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "selftest.hpp"

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[i + 1]);
            ++i;
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 64;
        }
    }
    return stefanfront::run_acceptance_suite(stdout, only);
}

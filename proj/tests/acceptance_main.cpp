// Acceptance gate: runs every numbered criterion and prints one line per
// criterion. Exits nonzero if any criterion fails.

#include <cstdio>
#include <exception>
#include <string>

#include "edtail/validation.hpp"

namespace {

const char* kCriterionNames[] = {
    "static potential A0 = e ln r",
    "static field E = e x / r^2 on a grid",
    "uniform motion: field closed form, zero self-force",
    "Coulomb law between static charges",
    "hyperbolic benchmark: separation, self-force, mass rate",
    "coincidence limit matches the Abraham term",
    "Maxwell residuals converge at order 2",
    "radiation ledger: pairing, uniform zero, cutoff oracle",
    "dynamics (self-force off) matches the exact hyperbola",
    "dynamics (self-force on) reaches the dressed acceleration",
    "helium map round trip and continuity correspondence",
    "determinism: byte-identical reruns",
};

}  // namespace

int main() {
    bool all_pass = true;
    for (int k = 1; k <= 12; ++k) {
        bool pass = true;
        std::string why;
        try {
            for (const auto& c : edtail::run_criterion(k)) {
                if (!c.pass) {
                    pass = false;
                    char buf[256];
                    std::snprintf(buf, sizeof(buf), " [%s: measured %.6g, expected %.6g, tol %.2g]",
                                  c.name.c_str(), c.measured, c.expected, c.tolerance);
                    why += buf;
                }
            }
        } catch (const std::exception& e) {
            pass = false;
            why = std::string(" [exception: ") + e.what() + "]";
        }
        std::printf("criterion %2d: %s - %s%s\n", k, pass ? "PASS" : "FAIL",
                    kCriterionNames[k - 1], why.c_str());
        std::fflush(stdout);
        all_pass = all_pass && pass;
    }
    return all_pass ? 0 : 1;
}

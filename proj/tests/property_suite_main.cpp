// Standalone property-suite runner: 1000 randomized cases per suite, one
// [PASS]/[FAIL] line each, nonzero exit on any failure.

#include <iostream>

#include "property_suites.hpp"

using namespace fiid::testutil;

namespace {

int failures = 0;

void report(const char* name, int bad, int cases) {
    if (bad == 0) {
        std::cout << "[PASS] " << name << " (" << cases << " cases)\n";
    } else {
        std::cout << "[FAIL] " << name << ": " << bad << " of " << cases << " cases\n";
        ++failures;
    }
}

}  // namespace

int main() {
    report("type canonicalization congruence", suite_canonicalization_congruence(1000), 1000);
    report("ball semigroup law", suite_ball_semigroup(1000), 1000);
    report("local statistics marginal consistency", suite_local_stats_marginals(1000), 1000);
    report("matching count total probability", suite_matching_total_probability(1000), 1000);
    return failures == 0 ? 0 : 1;
}

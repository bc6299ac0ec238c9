#ifndef NSKFV_VERIFY_HPP
#define NSKFV_VERIFY_HPP

#include <string>
#include <vector>

namespace nskfv {

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs the built-in structural property suites on deterministic fixtures:
/// summation-by-parts identities, conservation, capillary decomposition,
/// energy inequality, and oracle equivalence. quick restricts to 8x8
/// fixtures with fewer seeds.
std::vector<SuiteResult> run_verify_suites(bool quick);

} // namespace nskfv

#endif

#ifndef DRX_TOOLS_VERIFY_SUITES_HPP
#define DRX_TOOLS_VERIFY_SUITES_HPP

#include "drx/fq.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace drx::verify {

struct SuiteResult {
    std::string name;
    int trials_run = 0;
    bool ok = true;
    std::string counterexample;   // JSON dump of the first failing instance
};

/// Property suites over seeded generators. Sizes are scaled to the field so
/// that every check stays exact: twisted coefficients grow like q^(tau-degree).
std::vector<std::string> suite_names();
bool is_suite(const std::string& name);

SuiteResult run_suite(const std::string& name, const FqPtr& f, std::uint64_t seed, int trials);

} // namespace drx::verify

#endif

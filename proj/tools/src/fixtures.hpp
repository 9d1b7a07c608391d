#ifndef DTLURE_TOOLS_FIXTURES_HPP
#define DTLURE_TOOLS_FIXTURES_HPP

#include <string>

namespace dtlure::tools {

/// Runs one of the built-in reference systems (ex1, ex2, ex3-exact,
/// ex3-perturbed) against its embedded expected values, printing one
/// PASS/FAIL line per assertion. Returns the number of failed assertions.
int run_fixture(const std::string& id);

}  // namespace dtlure::tools

#endif

#ifndef BCS_BENCHMARKS_HPP
#define BCS_BENCHMARKS_HPP

#include <string>
#include <vector>

#include "bcs/constraint.hpp"

namespace bcs {

// Names of the built-in problems, in registry order.
std::vector<std::string> benchmark_names();

// Problem-format source text for a built-in problem (case-insensitive name).
// Throws std::out_of_range for unknown names.
const std::string& benchmark_text(const std::string& name);

// Parsed form of a built-in problem.
NCSP benchmark(const std::string& name);

}  // namespace bcs

#endif  // BCS_BENCHMARKS_HPP

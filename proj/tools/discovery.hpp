#pragma once

#include <string>
#include <vector>

namespace fxr::cli {

// Wildcard match with '*' and '?' over the whole string.
bool glob_match(const std::string& pattern, const std::string& name);

// Find the input files of one pair-year under input_dir (recursively). The
// pattern's {pair} placeholder receives the symbol without the slash and
// {year} the four-digit year; matching is against the file name only.
// Results are sorted, which puts monthly provider files in time order.
std::vector<std::string> discover_inputs(const std::string& input_dir,
                                         const std::string& symbol, int year,
                                         const std::string& glob);

}  // namespace fxr::cli

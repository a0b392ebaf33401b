#include "discovery.hpp"

#include <algorithm>
#include <filesystem>

#include "run_config.hpp"

namespace fxr::cli {

bool glob_match(const std::string& pattern, const std::string& name) {
  const size_t np = pattern.size(), nn = name.size();
  size_t p = 0, n = 0;
  size_t star = std::string::npos, star_n = 0;
  while (n < nn) {
    if (p < np && (pattern[p] == '?' || pattern[p] == name[n])) {
      ++p;
      ++n;
    } else if (p < np && pattern[p] == '*') {
      star = p++;
      star_n = n;
    } else if (star != std::string::npos) {
      p = star + 1;
      n = ++star_n;
    } else {
      return false;
    }
  }
  while (p < np && pattern[p] == '*') ++p;
  return p == np;
}

std::vector<std::string> discover_inputs(const std::string& input_dir,
                                         const std::string& symbol, int year,
                                         const std::string& glob) {
  std::string pattern;
  pattern.reserve(glob.size() + 8);
  for (size_t i = 0; i < glob.size();) {
    if (glob.compare(i, 6, "{pair}") == 0) {
      pattern += pair_token(symbol);
      i += 6;
    } else if (glob.compare(i, 6, "{year}") == 0) {
      pattern += std::to_string(year);
      i += 6;
    } else {
      pattern.push_back(glob[i++]);
    }
  }

  std::vector<std::string> out;
  std::error_code ec;
  std::filesystem::recursive_directory_iterator it(input_dir, ec), end;
  if (ec) return out;
  for (; it != end; it.increment(ec)) {
    if (ec) break;
    if (!it->is_regular_file()) continue;
    if (glob_match(pattern, it->path().filename().string())) {
      out.push_back(it->path().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fxr::cli

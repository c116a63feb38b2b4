#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace figura::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMetric = 1;  // evaluation or metric error
inline constexpr int kExitIo = 2;      // I/O, schema, config or usage error
inline constexpr int kExitCache = 3;   // cache miss or corrupt cache entry

// Entry point of the `figura` tool. `args` excludes the program name. Data
// goes to `out`; logs and machine-readable error objects go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace figura::cli

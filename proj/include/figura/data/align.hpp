#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace figura::data {

using Interval = std::pair<std::size_t, std::size_t>;  // [start, end)

// For each predicted interval, the index of the gold interval it overlaps
// most; ties go to the earlier gold interval; nullopt when it overlaps none.
std::vector<std::optional<std::size_t>> align_by_overlap(const std::vector<Interval>& predicted,
                                                         const std::vector<Interval>& gold);

}  // namespace figura::data

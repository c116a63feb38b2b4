#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace figura::data {

class NTooLarge : public std::invalid_argument {
 public:
  NTooLarge(std::size_t n, std::size_t available)
      : std::invalid_argument("cannot sample " + std::to_string(n) + " of " +
                              std::to_string(available) + " items"),
        n_(n),
        available_(available) {}
  std::size_t n() const noexcept { return n_; }
  std::size_t available() const noexcept { return available_; }

 private:
  std::size_t n_;
  std::size_t available_;
};

// n distinct indices of [0, population) chosen by the first n steps of a
// Fisher-Yates shuffle driven by SplitMix64(seed), returned in ascending order.
std::vector<std::size_t> sample_indices(std::size_t population, std::size_t n, std::uint64_t seed);

template <typename T>
std::vector<T> sample(const std::vector<T>& items, std::size_t n, std::uint64_t seed) {
  std::vector<T> out;
  out.reserve(n);
  for (const auto i : sample_indices(items.size(), n, seed)) out.push_back(items[i]);
  return out;
}

}  // namespace figura::data

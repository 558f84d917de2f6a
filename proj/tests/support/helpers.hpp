#pragma once

#include <string>
#include <vector>

#include "polarize/polarize.hpp"

namespace testing_support {

inline std::string fixture(const std::string& name) {
  return std::string(POLARIZE_FIXTURES_DIR) + "/" + name;
}

template <typename S>
polarize::Element<S> elem(const polarize::AlgebraPtr<S>& a,
                          std::vector<long long> numerators, long long denominator = 1) {
  std::vector<S> coords;
  coords.reserve(numerators.size());
  for (auto v : numerators)
    coords.push_back(polarize::scalar_traits<S>::from_ratio(v, denominator));
  return a->element(std::move(coords));
}

template <typename S>
polarize::Element<S> random_elem(const polarize::AlgebraPtr<S>& a, polarize::SplitMix64& rng) {
  return polarize::random_element(a, rng);
}

}  // namespace testing_support

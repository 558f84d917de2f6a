#pragma once

// Test-only brute-force blade arithmetic: multiplies generator words by
// bubble-sorting adjacent generators (sign flip per swap) and cancelling
// equal neighbours against the signature. Independent of the library's
// merge-count sign rule, so the two paths cross-check each other.

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

struct Blade {
  std::vector<unsigned> word;  // generator indices, 1-based, arbitrary order
  int sign = 1;
};

/// Normalizes a word to sorted distinct indices, tracking the sign.
inline Blade normalize(Blade b, unsigned p) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t t = 0; t + 1 < b.word.size(); ++t) {
      if (b.word[t] == b.word[t + 1]) {
        if (b.word[t] > p) b.sign = -b.sign;  // e_i^2 = -1 above p
        b.word.erase(b.word.begin() + t, b.word.begin() + t + 2);
        changed = true;
        break;
      }
      if (b.word[t] > b.word[t + 1]) {
        std::swap(b.word[t], b.word[t + 1]);
        b.sign = -b.sign;
        changed = true;
        break;
      }
    }
  }
  return b;
}

inline Blade mul(const Blade& a, const Blade& b, unsigned p) {
  Blade out;
  out.word = a.word;
  out.word.insert(out.word.end(), b.word.begin(), b.word.end());
  out.sign = a.sign * b.sign;
  return normalize(std::move(out), p);
}

/// e_I^* = e_{i_r}^* ... e_{i_1}^*: reversed word with per-generator signs.
inline Blade star(const Blade& a, unsigned p) {
  Blade out;
  out.sign = a.sign;
  for (auto it = a.word.rbegin(); it != a.word.rend(); ++it) {
    out.word.push_back(*it);
    if (*it > p) out.sign = -out.sign;
  }
  return normalize(std::move(out), p);
}

inline std::uint32_t mask_of(const Blade& b) {
  std::uint32_t m = 0;
  for (unsigned g : b.word) m |= 1u << (g - 1);
  return m;
}

}  // namespace oracle

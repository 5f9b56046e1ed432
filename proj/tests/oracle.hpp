#pragma once

// Deliberately naive reference implementations, sharing no code with the
// library beyond plain vectors.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Word = std::vector<std::uint32_t>;

inline std::vector<Word> permutations(std::size_t n) {
  Word w(n);
  std::iota(w.begin(), w.end(), 1u);
  std::vector<Word> out;
  do out.push_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  return out;
}

inline Word standardize(const Word& w) {
  Word sorted = w, out(w.size());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < w.size(); ++i)
    out[i] = static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), w[i]) - sorted.begin() + 1);
  return out;
}

// Tries every subset of positions of size |tau|.
inline bool contains(const Word& sigma, const Word& tau) {
  const std::size_t n = sigma.size(), m = tau.size();
  if (m > n) return false;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + m, true);
  do {
    Word sub;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) sub.push_back(sigma[i]);
    if (standardize(sub) == tau) return true;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return false;
}

inline bool avoids(const Word& sigma, const std::vector<Word>& patterns) {
  return std::none_of(patterns.begin(), patterns.end(), [&](const Word& t) { return contains(sigma, t); });
}

inline std::vector<Word> avoiders(std::size_t n, const std::vector<Word>& patterns) {
  std::vector<Word> out;
  for (auto& w : permutations(n))
    if (avoids(w, patterns)) out.push_back(w);
  return out;
}

// Window a..a+l-1 (1-based) holds exactly {k..k+l-1}.
inline bool cluster_at(const Word& sigma, std::size_t l, std::size_t k, std::size_t a) {
  std::set<std::uint32_t> window(sigma.begin() + (a - 1), sigma.begin() + (a - 1 + l));
  for (std::size_t v = k; v < k + l; ++v)
    if (!window.count(static_cast<std::uint32_t>(v))) return false;
  return true;
}

inline bool cluster(const Word& sigma, std::size_t l, std::size_t k) {
  for (std::size_t a = 1; a + l - 1 <= sigma.size(); ++a)
    if (cluster_at(sigma, l, k, a)) return true;
  return false;
}

inline bool any_cluster(const Word& sigma, std::size_t l) {
  for (std::size_t k = 1; k + l - 1 <= sigma.size(); ++k)
    if (cluster(sigma, l, k)) return true;
  return false;
}

inline bool cluster_free(const Word& tau) {
  for (std::size_t l = 2; l + 1 <= tau.size(); ++l)
    if (any_cluster(tau, l)) return false;
  return true;
}

// Adjacent pair with values differing by +1 (12) or -1 (21).
inline bool tight_pair(const Word& tau, bool ascending) {
  for (std::size_t i = 0; i + 1 < tau.size(); ++i) {
    if (ascending && tau[i + 1] == tau[i] + 1) return true;
    if (!ascending && tau[i] == tau[i + 1] + 1) return true;
  }
  return false;
}

inline std::uint64_t factorial(unsigned n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace oracle

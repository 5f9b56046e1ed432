#pragma once

// Depth-first generation of S_n(patterns) by placing one value per position.
// A prefix is dropped as soon as some pattern occurs in it; only occurrences
// ending at the newest letter need checking, since shorter prefixes were
// already accepted.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "permclust/error.hpp"
#include "permclust/permutation.hpp"

namespace permclust::detail {

class AvoiderSearch {
 public:
  AvoiderSearch(std::size_t n, const PatternSet& patterns) : n_(n), word_(n) {
    if (n < 1 || n > 32) throw DomainError("enumeration length must be in 1..32");
    for (const auto& p : patterns.patterns()) matchers_.emplace_back(p);
    std::sort(matchers_.begin(), matchers_.end(),
              [](const PatternMatcher& x, const PatternMatcher& y) { return x.size() < y.size(); });
  }

  /// Leaves whose first letter is `first`, in lexicographic order.
  template <class Leaf>
  void run_subtree(Value first, Leaf& leaf) {
    used_ = 0;
    place(0, first);
    if (accepts(1)) descend(1, leaf);
    used_ = 0;
  }

  template <class Leaf>
  void run_all(Leaf& leaf) {
    for (Value v = 1; v <= n_ && !stopped_; ++v) run_subtree(v, leaf);
  }

  /// Abandons the rest of the search; callable from inside a leaf.
  void stop() noexcept { stopped_ = true; }
  bool stopped() const noexcept { return stopped_; }

 private:
  void place(std::size_t depth, Value v) {
    word_[depth] = v;
    used_ |= std::uint32_t{1} << (v - 1);
  }

  bool accepts(std::size_t len) const {
    const std::span<const Value> prefix(word_.data(), len);
    for (const auto& m : matchers_) {
      if (m.size() > len) break;
      if (m.occurs_ending_at_back(prefix)) return false;
    }
    return true;
  }

  template <class Leaf>
  void descend(std::size_t depth, Leaf& leaf) {
    if (depth == n_) {
      leaf(std::span<const Value>(word_.data(), n_));
      return;
    }
    for (Value v = 1; v <= n_ && !stopped_; ++v) {
      const std::uint32_t bit = std::uint32_t{1} << (v - 1);
      if (used_ & bit) continue;
      word_[depth] = v;
      used_ |= bit;
      if (accepts(depth + 1)) descend(depth + 1, leaf);
      used_ &= ~bit;
    }
  }

  std::size_t n_;
  std::vector<PatternMatcher> matchers_;
  std::vector<Value> word_;
  std::uint32_t used_ = 0;
  bool stopped_ = false;
};

/// Splits the search forest by first letter. Each subtree folds into its
/// own accumulator; accumulators are merged in first-letter order, so the
/// result does not depend on scheduling.
template <class Acc, class MakeAcc, class Visit, class Merge>
Acc reduce_avoiders(std::size_t n, const PatternSet& patterns, unsigned jobs, MakeAcc make, Visit visit,
                    Merge merge) {
  std::vector<Acc> parts;
  parts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) parts.push_back(make());

  auto work_on = [&](AvoiderSearch& search, std::size_t i) {
    Acc& acc = parts[i];
    auto leaf = [&](std::span<const Value> word) { visit(acc, word); };
    search.run_subtree(static_cast<Value>(i + 1), leaf);
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (workers == 1) {
    AvoiderSearch search(n, patterns);
    for (std::size_t i = 0; i < n; ++i) work_on(search, i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        AvoiderSearch search(n, patterns);
        for (std::size_t i = next++; i < n; i = next++) work_on(search, i);
      });
    }
  }

  Acc result = make();
  for (auto& part : parts) merge(result, part);
  return result;
}

}  // namespace permclust::detail

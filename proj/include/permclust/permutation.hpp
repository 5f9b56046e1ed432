#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permclust {

using Value = std::uint32_t;

/// A permutation of [n] in one-line notation. Positions and values are
/// 1-based in the public accessors; `values()` exposes the raw word.
class Permutation {
 public:
  /// Throws DomainError unless `values` is a bijection of {1,...,n}, n >= 1.
  explicit Permutation(std::vector<Value> values);

  static Permutation identity(std::size_t n);
  static Permutation decreasing(std::size_t n);

  std::size_t size() const noexcept { return values_.size(); }
  /// sigma_i for 1 <= i <= n.
  Value at(std::size_t i) const { return values_.at(i - 1); }
  std::span<const Value> values() const noexcept { return values_; }

  /// Compact digits for n <= 9, space-separated integers otherwise.
  std::string to_string() const;

  /// Lexicographic order of the one-line word.
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Value> values_;
};

/// Accepts "798645312" (n <= 9) or "10 2 1 3" / "10,2,1,3".
/// Throws ParseError naming the first offending token.
Permutation parse_permutation(std::string_view text);

Permutation reverse(const Permutation& sigma);
Permutation complement(const Permutation& sigma);
Permutation inverse(const Permutation& sigma);

/// All of S_n in lexicographic order.
std::vector<Permutation> all_permutations(std::size_t n);

/// Forbidden patterns defining S_n(patterns). The empty set means S_n.
/// Patterns are kept in canonical (lexicographic) order.
class PatternSet {
 public:
  PatternSet() = default;
  /// Throws DomainError on duplicates or patterns shorter than 2.
  explicit PatternSet(std::vector<Permutation> patterns);

  /// {2413, 3142}.
  static PatternSet separable();

  /// "", "321", "2413+3142", "sep". Tokens are joined by '+'.
  static PatternSet parse(std::string_view spec);

  bool empty() const noexcept { return patterns_.empty(); }
  std::size_t size() const noexcept { return patterns_.size(); }
  const std::vector<Permutation>& patterns() const noexcept { return patterns_; }
  std::size_t max_length() const noexcept;

  /// Canonical text: patterns joined by '+'; "" for the empty set.
  std::string key() const;

  bool is_separable_class() const;

  PatternSet reversed() const;
  PatternSet complemented() const;

  friend bool operator==(const PatternSet&, const PatternSet&) = default;

 private:
  std::vector<Permutation> patterns_;
};

/// A_{l;k} (k set, a unset), A_{l;k;a} (both set) or A_l (neither set).
struct ClusterEvent {
  std::size_t l = 2;
  std::optional<std::size_t> k;
  std::optional<std::size_t> a;

  /// Throws DomainError unless 2 <= l <= n-1, 1 <= k,a <= n-l+1, and a
  /// is only given together with k.
  void validate(std::size_t n) const;
  std::string to_string() const;
};

struct ConditionReport {
  bool c1 = false;
  bool c2 = false;
  bool c3 = false;
  bool tight12 = false;
  bool tight21 = false;
  bool cluster_free = false;
};

/// Subsequence-order-isomorphism test with bound pruning.
class PatternMatcher {
 public:
  explicit PatternMatcher(const Permutation& pattern);

  std::size_t size() const noexcept { return pattern_.size(); }
  const Permutation& pattern() const noexcept { return pattern_; }

  /// True iff `word` (distinct values) contains the pattern.
  bool occurs_in(std::span<const Value> word) const;

  /// True iff some occurrence uses the last letter of `word` as the
  /// image of the last pattern letter.
  bool occurs_ending_at_back(std::span<const Value> word) const;

 private:
  struct Bounds {
    int below = -1;  // pattern index holding the next smaller value, or -1
    int above = -1;  // pattern index holding the next larger value, or -1
  };

  bool extend(std::span<const Value> word, std::size_t j, std::size_t from,
              std::size_t stop, const std::vector<Bounds>& bounds, Value* image) const;

  Permutation pattern_;
  std::vector<Bounds> free_bounds_;
  std::vector<Bounds> anchored_bounds_;
};

bool contains_pattern(const Permutation& sigma, const Permutation& tau);
bool avoids_all(const Permutation& sigma, const PatternSet& patterns);
bool avoids_all(std::span<const Value> word, const PatternSet& patterns);

/// tau_{i+a} = h + nu_{1+a}, a = 0..|nu|-1, for some i and h.
bool tight_contains(const Permutation& tau, const Permutation& nu);
/// Number of positions i at which a shifted copy of nu starts.
std::size_t tight_occurrences(const Permutation& tau, const Permutation& nu);

/// Membership of sigma in A_{l;k} or A_{l;k;a}. k is required.
bool in_cluster_event(const Permutation& sigma, const ClusterEvent& event);
/// Membership in A_l, the union over k.
bool in_any_cluster_event(const Permutation& sigma, std::size_t l);
/// The anchor a with {sigma_a..sigma_{a+l-1}} = {k..k+l-1}, if any.
std::optional<std::size_t> cluster_anchor(const Permutation& sigma, std::size_t l,
                                          std::size_t k);

bool is_cluster_free(const Permutation& tau);
/// Requires |tau| >= 2.
ConditionReport check_conditions(const Permutation& tau);
bool is_separable(const Permutation& sigma);

}  // namespace permclust

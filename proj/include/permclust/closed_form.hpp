#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "permclust/enumerate.hpp"
#include "permclust/exact.hpp"
#include "permclust/numbers.hpp"
#include "permclust/permutation.hpp"

namespace permclust {

/// How k_n behaves as n grows.
enum class LimitMode {
  FixedK,            // k_n = k
  FixedRightOffset,  // k_n = n + 2 - k' - l
  Interior,          // k_n -> infinity and n - k_n -> infinity
};

struct LimitSpec {
  LimitMode mode = LimitMode::Interior;
  std::size_t offset = 1;  // k or k'; unused for Interior

  static LimitSpec fixed_k(std::size_t k) { return {LimitMode::FixedK, k}; }
  static LimitSpec fixed_right_offset(std::size_t k) { return {LimitMode::FixedRightOffset, k}; }
  static LimitSpec interior() { return {LimitMode::Interior, 0}; }

  /// The k used at finite n for this regime (middle of the range for Interior).
  std::size_t k_at(std::size_t n, std::size_t l) const;
  std::string to_string() const;
};

/// Growth constant lim |S_n|^{1/n} of a pattern class, when known.
struct SWConstant {
  std::string pattern_class;
  bool known = false;
  Sqrt2Number value;
  std::string provenance;

  double approx() const { return value.approx(); }
};

struct BoundReport {
  std::optional<ExactRatio> lower;
  ExactRatio upper;
  unsigned lower_factor = 0;  // 0 when no lower bound applies
  bool tight12 = false;
  bool tight21 = false;
  std::string applicability;
};

struct AvoiderLimits {
  bool available = false;  // false when the growth constant is unknown
  SWConstant growth;
  ConditionReport conditions;
  BigCount class_size;  // |S_l(tau)|
  std::optional<Sqrt2Number> upper;
  std::optional<Sqrt2Number> lower;
  std::optional<Sqrt2Number> exact;
  unsigned lower_factor = 0;
  std::string applicability;
};

struct SeparableLimit {
  BigCount coefficient;  // |S_l^sep|
  std::size_t exponent;  // l - 1
  Sqrt2Number value;     // coefficient * (3 - 2 sqrt2)^exponent

  /// e.g. "6*(3-2*sqrt2)^2".
  std::string symbolic() const;
};

/// |S_n^sep|.
BigCount sep_count(CountingEngine& engine, std::size_t n);

/// Uniform measure on S_n: (n-l+1) l! (n-l)! / n!.
ExactRatio uniform_probability(std::size_t n, std::size_t l, std::size_t k);

/// Avoiders of 123 or 321:
/// (C_{n-l+1} + C_{k-1} C_{n-k-l+1} (C_l - 1)) / C_n.
ExactRatio catalan_class_probability(std::size_t n, std::size_t l, std::size_t k);

/// |S_{n-l+1}^sep| |S_l^sep| / |S_n^sep|, the same for every k.
ExactRatio separable_probability(CountingEngine& engine, std::size_t n, std::size_t l);

/// |S_{n-l+1}(ps)| |S_l(ps)| / |S_n(ps)|. Throws ApplicabilityError unless
/// every pattern in ps is cluster-free.
ExactRatio cluster_free_probability(CountingEngine& engine, std::size_t n, std::size_t l,
                                    const PatternSet& patterns);

/// Upper bound |S_{n-l+1}| |S_l| / |S_n| for any single pattern, and lower
/// bound f |S_{n-l+1}| / |S_n| with f = 2 when tau tightly contains neither
/// 12 nor 21, f = 1 when it misses exactly one of them.
BoundReport avoider_bounds(CountingEngine& engine, std::size_t n, std::size_t l, const Permutation& tau);

/// Known growth constants: 4 for length-3 patterns, (m-1)^2 for monotone
/// patterns, 8 for the symmetry class of 1342, 3+2sqrt2 for separables.
/// Anything else is reported as unknown.
SWConstant known_sw_limit(const PatternSet& patterns);

/// n -> infinity limits of the single-pattern bounds, each gated on the
/// condition that makes it valid: the upper bound on C1, C2 or C3, the lower
/// bound on C1, the exact limit on cluster-freeness.
AvoiderLimits avoider_limits(CountingEngine& engine, const Permutation& tau, std::size_t l,
                             std::optional<Sqrt2Number> growth_override = std::nullopt);

/// Limit of catalan_class_probability: 4^{-(l-1)} + C_{k-1}(C_l-1) 4^{-(k+l-1)}
/// in the fixed regimes, 4^{-(l-1)} for interior k_n.
ExactRatio catalan_class_limit(std::size_t l, const LimitSpec& spec);

/// |S_l^sep| (3 - 2 sqrt2)^{l-1}.
SeparableLimit separable_limit(CountingEngine& engine, std::size_t l);

/// P_n(A_l) n^{l-2} / l! on S_n, from exhaustive enumeration; requires
/// 3 <= l <= n-1.
ExactRatio union_asymptotic_ratio(CountingEngine& engine, std::size_t n, std::size_t l);

enum class ClosedForm { Uniform, CatalanClass, Separable, ClusterFree };

/// The exact formula covering this class, if any.
std::optional<ClosedForm> closed_form_for(const PatternSet& patterns);
std::string_view closed_form_name(ClosedForm form);
ExactRatio closed_form_probability(CountingEngine& engine, ClosedForm form, const PatternSet& patterns,
                                   std::size_t n, std::size_t l, std::size_t k);

}  // namespace permclust

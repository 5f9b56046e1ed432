#pragma once

#include <cstddef>
#include <vector>

#include "permclust/permutation.hpp"

namespace permclust {

/// A finite set B of positive integers, stored in increasing order.
class GroundSet {
 public:
  /// Throws DomainError unless `elements` is non-empty and strictly increasing.
  explicit GroundSet(std::vector<Value> elements);

  /// {1,...,k, k+l,...,n}: the values left after a cluster {k..k+l-1} is
  /// collapsed onto k.
  static GroundSet collapsed(std::size_t n, std::size_t l, std::size_t k);

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Value>& elements() const noexcept { return elements_; }

 private:
  std::vector<Value> elements_;
};

/// A word whose letters are exactly the elements of a ground set.
class LabeledSequence {
 public:
  /// The ground set is the sorted letters; throws DomainError on repeats.
  explicit LabeledSequence(std::vector<Value> values);
  LabeledSequence(std::vector<Value> values, GroundSet ground);

  const std::vector<Value>& values() const noexcept { return values_; }
  const GroundSet& ground() const noexcept { return ground_; }
  std::size_t size() const noexcept { return values_.size(); }

  friend bool operator==(const LabeledSequence& x, const LabeledSequence& y) {
    return x.values_ == y.values_;
  }

 private:
  std::vector<Value> values_;
  GroundSet ground_;
};

/// The order-isomorphic permutation of S_{|B|}.
Permutation flatten(const LabeledSequence& seq);
/// Replaces each value i of nu by the i-th smallest element of B.
LabeledSequence inflate(const Permutation& nu, const GroundSet& ground);

/// Intermediate words of a contraction, kept for inspection.
struct Contraction {
  GroundSet ground;        // {1..k, k+l..n}
  LabeledSequence barred;  // sigma with the window collapsed to k
  Permutation eta;         // flatten(barred)
};

/// Collapses the cluster {k..k+l-1} sitting at positions a..a+l-1 of sigma
/// to a single letter. Throws DomainError if that window is not the cluster.
Contraction contract_steps(const Permutation& sigma, std::size_t l, std::size_t k, std::size_t a);
Permutation contract(const Permutation& sigma, std::size_t l, std::size_t k, std::size_t a);

/// Inserts the cluster k-1+rho_1, ..., k-1+rho_l at position a of eta
/// lifted to B = {1..k, k+l..n}. Requires eta_a = k and |rho| = l.
Permutation expand(const Permutation& eta, const Permutation& rho, std::size_t l, std::size_t k,
                   std::size_t a);

/// The pattern of the length-l window starting at position a.
Permutation window_pattern(const Permutation& sigma, std::size_t l, std::size_t a);

struct ClusterOccurrence {
  std::size_t l;
  std::size_t k;
  std::size_t a;
};

/// Every (l, k, a) with 2 <= l <= n-1 such that sigma lies in A_{l;k;a}.
std::vector<ClusterOccurrence> cluster_occurrences(const Permutation& sigma);

}  // namespace permclust

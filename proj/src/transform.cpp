#include "permclust/transform.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "permclust/error.hpp"

namespace permclust {

GroundSet::GroundSet(std::vector<Value> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw DomainError("ground set must be non-empty");
  if (elements_.front() < 1) throw DomainError("ground set elements must be positive");
  for (std::size_t i = 1; i < elements_.size(); ++i)
    if (elements_[i - 1] >= elements_[i]) throw DomainError("ground set must be strictly increasing");
}

GroundSet GroundSet::collapsed(std::size_t n, std::size_t l, std::size_t k) {
  std::vector<Value> b;
  b.reserve(n - l + 1);
  for (std::size_t v = 1; v <= k; ++v) b.push_back(static_cast<Value>(v));
  for (std::size_t v = k + l; v <= n; ++v) b.push_back(static_cast<Value>(v));
  return GroundSet(std::move(b));
}

namespace {
std::vector<Value> sorted_copy(std::vector<Value> v) {
  std::sort(v.begin(), v.end());
  return v;
}
}  // namespace

LabeledSequence::LabeledSequence(std::vector<Value> values)
    : values_(std::move(values)), ground_(sorted_copy(values_)) {}

LabeledSequence::LabeledSequence(std::vector<Value> values, GroundSet ground)
    : values_(std::move(values)), ground_(std::move(ground)) {
  if (sorted_copy(values_) != ground_.elements())
    throw DomainError("sequence is not a bijection onto its ground set");
}

Permutation flatten(const LabeledSequence& seq) {
  const auto& b = seq.ground().elements();
  std::vector<Value> out;
  out.reserve(seq.size());
  for (Value v : seq.values()) {
    const auto it = std::lower_bound(b.begin(), b.end(), v);
    out.push_back(static_cast<Value>(it - b.begin() + 1));
  }
  return Permutation(std::move(out));
}

LabeledSequence inflate(const Permutation& nu, const GroundSet& ground) {
  if (nu.size() != ground.size())
    throw DomainError("inflate: |nu|=" + std::to_string(nu.size()) + " but |B|=" + std::to_string(ground.size()));
  std::vector<Value> out;
  out.reserve(nu.size());
  for (Value v : nu.values()) out.push_back(ground.elements()[v - 1]);
  return LabeledSequence(std::move(out), ground);
}

Contraction contract_steps(const Permutation& sigma, std::size_t l, std::size_t k, std::size_t a) {
  const std::size_t n = sigma.size();
  const ClusterEvent ev{l, k, a};
  ev.validate(n);
  if (!in_cluster_event(sigma, ev))
    throw DomainError("contract: window at positions " + std::to_string(a) + ".." + std::to_string(a + l - 1) +
                      " of " + sigma.to_string() + " is not the cluster {" + std::to_string(k) + ".." +
                      std::to_string(k + l - 1) + "}");
  GroundSet ground = GroundSet::collapsed(n, l, k);
  std::vector<Value> barred;
  barred.reserve(n - l + 1);
  for (std::size_t i = 1; i < a; ++i) barred.push_back(sigma.at(i));
  barred.push_back(static_cast<Value>(k));
  for (std::size_t i = a + l; i <= n; ++i) barred.push_back(sigma.at(i));
  LabeledSequence seq(std::move(barred), ground);
  Permutation eta = flatten(seq);
  return Contraction{std::move(ground), std::move(seq), std::move(eta)};
}

Permutation contract(const Permutation& sigma, std::size_t l, std::size_t k, std::size_t a) {
  return contract_steps(sigma, l, k, a).eta;
}

Permutation expand(const Permutation& eta, const Permutation& rho, std::size_t l, std::size_t k,
                   std::size_t a) {
  if (rho.size() != l)
    throw DomainError("expand: |rho|=" + std::to_string(rho.size()) + " but l=" + std::to_string(l));
  const std::size_t n = eta.size() + l - 1;
  ClusterEvent{l, k, a}.validate(n);
  if (eta.at(a) != k)
    throw DomainError("expand: eta_" + std::to_string(a) + "=" + std::to_string(eta.at(a)) + " but k=" +
                      std::to_string(k));
  const LabeledSequence lifted = inflate(eta, GroundSet::collapsed(n, l, k));
  const auto& lv = lifted.values();
  std::vector<Value> out;
  out.reserve(n);
  for (std::size_t i = 1; i < a; ++i) out.push_back(lv[i - 1]);
  for (Value r : rho.values()) out.push_back(static_cast<Value>(k - 1 + r));
  for (std::size_t i = a + 1; i <= eta.size(); ++i) out.push_back(lv[i - 1]);
  return Permutation(std::move(out));
}

Permutation window_pattern(const Permutation& sigma, std::size_t l, std::size_t a) {
  if (a < 1 || a + l - 1 > sigma.size()) throw DomainError("window outside the permutation");
  const auto w = sigma.values().subspan(a - 1, l);
  return flatten(LabeledSequence(std::vector<Value>(w.begin(), w.end())));
}

std::vector<ClusterOccurrence> cluster_occurrences(const Permutation& sigma) {
  std::vector<ClusterOccurrence> out;
  const std::size_t n = sigma.size();
  const auto v = sigma.values();
  for (std::size_t a = 0; a < n; ++a) {
    Value mn = v[a], mx = v[a];
    for (std::size_t end = a + 1; end < n; ++end) {
      mn = std::min(mn, v[end]);
      mx = std::max(mx, v[end]);
      const std::size_t len = end - a + 1;
      if (len >= n) break;
      if (mx - mn == len - 1) out.push_back({len, mn, a + 1});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::tie(x.l, x.k, x.a) < std::tie(y.l, y.k, y.a);
  });
  return out;
}

}  // namespace permclust

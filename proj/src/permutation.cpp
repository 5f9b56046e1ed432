#include "permclust/permutation.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <deque>
#include <numeric>

#include "permclust/error.hpp"

namespace permclust {

namespace {

constexpr std::size_t kInlineImage = 32;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_bijection(const std::vector<Value>& values) {
  std::vector<bool> seen(values.size() + 1, false);
  for (Value v : values) {
    if (v < 1 || v > values.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// Minimum of each length-l window of `word` whose values form an interval,
// indexed by 0-based window start; absent where the window is not a cluster.
std::vector<std::optional<Value>> cluster_windows(std::span<const Value> word, std::size_t l) {
  std::vector<std::optional<Value>> out;
  if (l == 0 || l > word.size()) return out;
  out.resize(word.size() - l + 1);
  std::deque<std::size_t> lo, hi;  // monotone index queues
  for (std::size_t i = 0; i < word.size(); ++i) {
    while (!lo.empty() && word[lo.back()] > word[i]) lo.pop_back();
    while (!hi.empty() && word[hi.back()] < word[i]) hi.pop_back();
    lo.push_back(i);
    hi.push_back(i);
    if (i + 1 < l) continue;
    const std::size_t start = i + 1 - l;
    while (lo.front() < start) lo.pop_front();
    while (hi.front() < start) hi.pop_front();
    const Value mn = word[lo.front()];
    const Value mx = word[hi.front()];
    if (mx - mn == l - 1) out[start] = mn;
  }
  return out;
}

}  // namespace

Permutation::Permutation(std::vector<Value> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("permutation must have length >= 1");
  if (!is_bijection(values_)) throw DomainError("values are not a bijection of [n]");
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Value> v(n);
  std::iota(v.begin(), v.end(), Value{1});
  return Permutation(std::move(v));
}

Permutation Permutation::decreasing(std::size_t n) {
  std::vector<Value> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Value>(n - i);
  return Permutation(std::move(v));
}

std::string Permutation::to_string() const {
  std::string out;
  const bool compact = values_.size() <= 9;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += std::to_string(values_[i]);
  }
  return out;
}

Permutation parse_permutation(std::string_view text) {
  const std::string_view body = trim(text);
  if (body.empty()) throw ParseError("empty permutation text");

  std::vector<std::string_view> tokens;
  const bool has_comma = body.find(',') != std::string_view::npos;
  const bool has_space = std::any_of(body.begin(), body.end(),
                                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  if (has_comma) {
    std::size_t start = 0;
    while (true) {
      const std::size_t end = body.find(',', start);
      std::string_view raw = body.substr(start, end == std::string_view::npos ? end : end - start);
      std::string_view tok = trim(raw);
      if (tok.empty()) throw ParseError("empty token in '" + std::string(body) + "'");
      if (std::any_of(tok.begin(), tok.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
        throw ParseError("mixed separators at token '" + std::string(tok) + "'");
      tokens.push_back(tok);
      if (end == std::string_view::npos) break;
      start = end + 1;
    }
  } else if (has_space) {
    std::size_t i = 0;
    while (i < body.size()) {
      while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
      std::size_t j = i;
      while (j < body.size() && !std::isspace(static_cast<unsigned char>(body[j]))) ++j;
      if (j > i) tokens.push_back(body.substr(i, j - i));
      i = j;
    }
  } else {
    if (body.size() > 9)
      throw ParseError("compact notation is limited to n <= 9; use separators for '" + std::string(body) + "'");
    for (std::size_t i = 0; i < body.size(); ++i) tokens.push_back(body.substr(i, 1));
  }

  const std::size_t n = tokens.size();
  std::vector<Value> values;
  values.reserve(n);
  std::vector<bool> seen(n + 1, false);
  for (std::string_view tok : tokens) {
    Value v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
      throw ParseError("not a positive integer: '" + std::string(tok) + "'");
    if (v < 1 || v > n)
      throw ParseError("value out of range 1.." + std::to_string(n) + ": '" + std::string(tok) + "'");
    if (seen[v]) throw ParseError("repeated value: '" + std::string(tok) + "'");
    seen[v] = true;
    values.push_back(v);
  }
  return Permutation(std::move(values));
}

Permutation reverse(const Permutation& sigma) {
  std::vector<Value> v(sigma.values().rbegin(), sigma.values().rend());
  return Permutation(std::move(v));
}

Permutation complement(const Permutation& sigma) {
  const auto n = static_cast<Value>(sigma.size());
  std::vector<Value> v;
  v.reserve(n);
  for (Value x : sigma.values()) v.push_back(n + 1 - x);
  return Permutation(std::move(v));
}

Permutation inverse(const Permutation& sigma) {
  std::vector<Value> v(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) v[sigma.values()[i] - 1] = static_cast<Value>(i + 1);
  return Permutation(std::move(v));
}

std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<Permutation> out;
  std::vector<Value> v(n);
  std::iota(v.begin(), v.end(), Value{1});
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

// ---------------------------------------------------------------------------

PatternSet::PatternSet(std::vector<Permutation> patterns) : patterns_(std::move(patterns)) {
  for (const auto& p : patterns_)
    if (p.size() < 2) throw DomainError("pattern '" + p.to_string() + "' is shorter than 2");
  std::sort(patterns_.begin(), patterns_.end());
  const auto dup = std::adjacent_find(patterns_.begin(), patterns_.end());
  if (dup != patterns_.end()) throw DomainError("duplicate pattern '" + dup->to_string() + "'");
}

PatternSet PatternSet::separable() {
  return PatternSet({Permutation({2, 4, 1, 3}), Permutation({3, 1, 4, 2})});
}

PatternSet PatternSet::parse(std::string_view spec) {
  const std::string_view body = trim(spec);
  if (body.empty()) return PatternSet{};
  std::vector<Permutation> patterns;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = body.find('+', start);
    const std::string_view tok =
        trim(body.substr(start, end == std::string_view::npos ? end : end - start));
    if (tok.empty()) throw ParseError("empty pattern in '" + std::string(body) + "'");
    if (tok == "sep" || tok == "SEP") {
      patterns.emplace_back(std::vector<Value>{2, 4, 1, 3});
      patterns.emplace_back(std::vector<Value>{3, 1, 4, 2});
    } else {
      patterns.push_back(parse_permutation(tok));
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  try {
    return PatternSet(std::move(patterns));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::size_t PatternSet::max_length() const noexcept {
  std::size_t m = 0;
  for (const auto& p : patterns_) m = std::max(m, p.size());
  return m;
}

std::string PatternSet::key() const {
  std::string out;
  for (std::size_t i = 0; i < patterns_.size(); ++i) {
    if (i > 0) out += '+';
    out += patterns_[i].to_string();
  }
  return out;
}

bool PatternSet::is_separable_class() const { return *this == separable(); }

PatternSet PatternSet::reversed() const {
  std::vector<Permutation> out;
  for (const auto& p : patterns_) out.push_back(reverse(p));
  return PatternSet(std::move(out));
}

PatternSet PatternSet::complemented() const {
  std::vector<Permutation> out;
  for (const auto& p : patterns_) out.push_back(complement(p));
  return PatternSet(std::move(out));
}

// ---------------------------------------------------------------------------

void ClusterEvent::validate(std::size_t n) const {
  if (l < 2 || l + 1 > n)
    throw DomainError("cluster length l=" + std::to_string(l) + " outside 2.." +
                      (n >= 1 ? std::to_string(n - 1) : std::string("0")) + " for n=" + std::to_string(n));
  const std::size_t top = n - l + 1;
  if (k && (*k < 1 || *k > top))
    throw DomainError("k=" + std::to_string(*k) + " outside 1.." + std::to_string(top));
  if (a && !k) throw DomainError("anchor a given without k");
  if (a && (*a < 1 || *a > top))
    throw DomainError("a=" + std::to_string(*a) + " outside 1.." + std::to_string(top));
}

std::string ClusterEvent::to_string() const {
  std::string out = "l=" + std::to_string(l);
  if (k) out += ",k=" + std::to_string(*k);
  if (a) out += ",a=" + std::to_string(*a);
  return out;
}

// ---------------------------------------------------------------------------

PatternMatcher::PatternMatcher(const Permutation& pattern) : pattern_(pattern) {
  const std::size_t m = pattern_.size();
  auto bounds_against = [&](std::size_t j, bool include_last) {
    Bounds b;
    const Value v = pattern_.values()[j];
    Value best_below = 0, best_above = static_cast<Value>(m + 1);
    auto consider = [&](std::size_t idx) {
      const Value w = pattern_.values()[idx];
      if (w < v && w > best_below) {
        best_below = w;
        b.below = static_cast<int>(idx);
      }
      if (w > v && w < best_above) {
        best_above = w;
        b.above = static_cast<int>(idx);
      }
    };
    for (std::size_t i = 0; i < j; ++i) consider(i);
    if (include_last && j + 1 < m) consider(m - 1);
    return b;
  };
  for (std::size_t j = 0; j < m; ++j) free_bounds_.push_back(bounds_against(j, false));
  for (std::size_t j = 0; j + 1 < m; ++j) anchored_bounds_.push_back(bounds_against(j, true));
}

bool PatternMatcher::extend(std::span<const Value> word, std::size_t j, std::size_t from,
                            std::size_t stop, const std::vector<Bounds>& bounds, Value* image) const {
  const std::size_t count = bounds.size();
  if (j == count) return true;
  const std::size_t remaining = count - j;
  const Bounds& b = bounds[j];
  for (std::size_t pos = from; pos + remaining <= stop; ++pos) {
    const Value v = word[pos];
    if (b.below >= 0 && image[b.below] >= v) continue;
    if (b.above >= 0 && image[b.above] <= v) continue;
    image[j] = v;
    if (extend(word, j + 1, pos + 1, stop, bounds, image)) return true;
  }
  return false;
}

bool PatternMatcher::occurs_in(std::span<const Value> word) const {
  const std::size_t m = pattern_.size();
  if (word.size() < m) return false;
  std::array<Value, kInlineImage> inline_image{};
  std::vector<Value> heap_image;
  Value* image = inline_image.data();
  if (m > kInlineImage) {
    heap_image.resize(m);
    image = heap_image.data();
  }
  return extend(word, 0, 0, word.size(), free_bounds_, image);
}

bool PatternMatcher::occurs_ending_at_back(std::span<const Value> word) const {
  const std::size_t m = pattern_.size();
  if (word.size() < m) return false;
  std::array<Value, kInlineImage> inline_image{};
  std::vector<Value> heap_image;
  Value* image = inline_image.data();
  if (m > kInlineImage) {
    heap_image.resize(m);
    image = heap_image.data();
  }
  image[m - 1] = word.back();
  return extend(word, 0, 0, word.size() - 1, anchored_bounds_, image);
}

bool contains_pattern(const Permutation& sigma, const Permutation& tau) {
  return PatternMatcher(tau).occurs_in(sigma.values());
}

bool avoids_all(std::span<const Value> word, const PatternSet& patterns) {
  for (const auto& tau : patterns.patterns())
    if (PatternMatcher(tau).occurs_in(word)) return false;
  return true;
}

bool avoids_all(const Permutation& sigma, const PatternSet& patterns) {
  return avoids_all(sigma.values(), patterns);
}

std::size_t tight_occurrences(const Permutation& tau, const Permutation& nu) {
  const std::size_t m = tau.size(), j = nu.size();
  if (j > m) return 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i + j <= m; ++i) {
    const auto shift = static_cast<long>(tau.values()[i]) - static_cast<long>(nu.values()[0]);
    bool ok = true;
    for (std::size_t a = 1; a < j && ok; ++a)
      ok = static_cast<long>(tau.values()[i + a]) - static_cast<long>(nu.values()[a]) == shift;
    if (ok) ++count;
  }
  return count;
}

bool tight_contains(const Permutation& tau, const Permutation& nu) {
  return tight_occurrences(tau, nu) > 0;
}

std::optional<std::size_t> cluster_anchor(const Permutation& sigma, std::size_t l, std::size_t k) {
  ClusterEvent{l, k, std::nullopt}.validate(sigma.size());
  const auto windows = cluster_windows(sigma.values(), l);
  for (std::size_t start = 0; start < windows.size(); ++start)
    if (windows[start] && *windows[start] == k) return start + 1;
  return std::nullopt;
}

bool in_cluster_event(const Permutation& sigma, const ClusterEvent& event) {
  if (!event.k) throw DomainError("in_cluster_event requires k; use in_any_cluster_event for A_l");
  event.validate(sigma.size());
  if (event.a) {
    const auto window = sigma.values().subspan(*event.a - 1, event.l);
    const auto [mn, mx] = std::minmax_element(window.begin(), window.end());
    return *mn == *event.k && *mx == *event.k + event.l - 1;
  }
  return cluster_anchor(sigma, event.l, *event.k).has_value();
}

bool in_any_cluster_event(const Permutation& sigma, std::size_t l) {
  ClusterEvent{l, std::nullopt, std::nullopt}.validate(sigma.size());
  const auto windows = cluster_windows(sigma.values(), l);
  return std::any_of(windows.begin(), windows.end(), [](const auto& w) { return w.has_value(); });
}

bool is_cluster_free(const Permutation& tau) {
  const std::size_t m = tau.size();
  const auto v = tau.values();
  for (std::size_t a = 0; a < m; ++a) {
    Value mn = v[a], mx = v[a];
    for (std::size_t end = a + 1; end < m; ++end) {
      mn = std::min(mn, v[end]);
      mx = std::max(mx, v[end]);
      const std::size_t len = end - a + 1;
      if (len < m && mx - mn == len - 1) return false;
    }
  }
  return true;
}

ConditionReport check_conditions(const Permutation& tau) {
  const std::size_t m = tau.size();
  if (m < 2) throw DomainError("conditions need a pattern of length >= 2");
  const Permutation up({1, 2}), down({2, 1});
  const std::size_t n12 = tight_occurrences(tau, up);
  const std::size_t n21 = tight_occurrences(tau, down);

  ConditionReport r;
  r.tight12 = n12 > 0;
  r.tight21 = n21 > 0;
  r.c1 = !(r.tight12 && r.tight21);
  const auto last = static_cast<Value>(m);
  r.c2 = tau.at(1) == 1 || tau.at(1) == last || tau.at(m) == 1 || tau.at(m) == last;
  if (m >= 6 && n12 == 1 && n21 == 1) {
    std::vector<Value> ends{tau.at(1), tau.at(2), tau.at(m - 1), tau.at(m)};
    std::sort(ends.begin(), ends.end());
    const bool consecutive = ends[3] - ends[0] == 3;
    auto tight_at = [&](std::size_t i, int dir) {
      return static_cast<int>(tau.at(i + 1)) - static_cast<int>(tau.at(i)) == dir;
    };
    const bool either_order = (tight_at(1, 1) && tight_at(m - 1, -1)) || (tight_at(1, -1) && tight_at(m - 1, 1));
    r.c3 = consecutive && either_order;
  }
  r.cluster_free = is_cluster_free(tau);
  return r;
}

bool is_separable(const Permutation& sigma) { return avoids_all(sigma, PatternSet::separable()); }

}  // namespace permclust

#include "permclust/enumerate.hpp"

#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "avoider_search.hpp"
#include "json.hpp"
#include "permclust/error.hpp"
#include "permclust/numbers.hpp"

namespace permclust {

void for_each_avoider(std::size_t n, const PatternSet& patterns, const AvoiderVisitor& visit) {
  detail::AvoiderSearch search(n, patterns);
  auto leaf = [&](std::span<const Value> word) { visit(word); };
  search.run_all(leaf);
}

bool for_each_avoider_while(std::size_t n, const PatternSet& patterns, const AvoiderPredicate& visit) {
  detail::AvoiderSearch search(n, patterns);
  auto leaf = [&](std::span<const Value> word) {
    if (!visit(word)) search.stop();
  };
  search.run_all(leaf);
  return !search.stopped();
}

std::vector<Permutation> enumerate_avoiders(std::size_t n, const PatternSet& patterns) {
  std::vector<Permutation> out;
  for_each_avoider(n, patterns, [&](std::span<const Value> w) { out.emplace_back(std::vector<Value>(w.begin(), w.end())); });
  return out;
}

BigCount count_by_enumeration(std::size_t n, const PatternSet& patterns, unsigned jobs) {
  if (n == 0) return BigCount(1);
  if (n > kMaxEnumerationLength)
    throw DomainError("n=" + std::to_string(n) + " exceeds the enumeration limit " +
                      std::to_string(kMaxEnumerationLength));
  const std::uint64_t total = detail::reduce_avoiders<std::uint64_t>(
      n, patterns, jobs, [] { return std::uint64_t{0}; },
      [](std::uint64_t& acc, std::span<const Value>) { ++acc; },
      [](std::uint64_t& into, const std::uint64_t& part) { into += part; });
  return BigCount(static_cast<unsigned long>(total));
}

namespace {

constexpr std::size_t kFastPathValidationLength = 10;

bool catalan_fast_path_valid() {
  static const bool valid = [] {
    for (const auto& tau : all_permutations(3)) {
      const PatternSet ps({tau});
      for (std::size_t n = 0; n <= kFastPathValidationLength; ++n)
        if (count_by_enumeration(n, ps) != catalan(n)) return false;
    }
    return true;
  }();
  return valid;
}

bool schroeder_fast_path_valid() {
  static const bool valid = [] {
    const PatternSet sep = PatternSet::separable();
    for (std::size_t n = 1; n <= kFastPathValidationLength; ++n)
      if (count_by_enumeration(n, sep) != large_schroeder(n - 1)) return false;
    return true;
  }();
  return valid;
}

}  // namespace

std::optional<BigCount> fast_path_count(std::size_t n, const PatternSet& patterns) {
  if (patterns.empty()) return factorial(n);
  if (patterns.size() == 1 && patterns.patterns().front().size() == 3 && catalan_fast_path_valid())
    return catalan(n);
  if (patterns.is_separable_class() && schroeder_fast_path_valid())
    return n == 0 ? BigCount(1) : large_schroeder(n - 1);
  return std::nullopt;
}

// ---------------------------------------------------------------------------

EventTable::EventTable(std::size_t n) : n_(n), offset_(n + 1, 0), union_(n + 1, 0) {
  std::size_t size = 0;
  for (std::size_t l = 2; l + 1 <= n; ++l) {
    offset_[l] = size;
    size += (n - l + 1) * (n - l + 1);
  }
  anchored_.assign(size, 0);
}

std::size_t EventTable::index(std::size_t l, std::size_t k, std::size_t a) const {
  const std::size_t width = n_ - l + 1;
  return offset_[l] + (k - 1) * width + (a - 1);
}

void EventTable::record(std::span<const Value> word) {
  ++total_;
  std::uint64_t seen = 0;
  const std::size_t n = word.size();
  for (std::size_t a = 0; a + 1 < n; ++a) {
    Value mn = word[a], mx = word[a];
    for (std::size_t end = a + 1; end < n; ++end) {
      const std::size_t len = end - a + 1;
      if (len >= n) break;
      mn = std::min(mn, word[end]);
      mx = std::max(mx, word[end]);
      if (mx - mn == len - 1) {
        ++anchored_[index(len, mn, a + 1)];
        seen |= std::uint64_t{1} << len;
      }
    }
  }
  for (std::size_t l = 2; l + 1 <= n; ++l)
    if (seen & (std::uint64_t{1} << l)) ++union_[l];
}

void EventTable::merge(const EventTable& other) {
  total_ += other.total_;
  for (std::size_t i = 0; i < anchored_.size(); ++i) anchored_[i] += other.anchored_[i];
  for (std::size_t i = 0; i < union_.size(); ++i) union_[i] += other.union_[i];
}

BigCount EventTable::anchored(std::size_t l, std::size_t k, std::size_t a) const {
  ClusterEvent{l, k, a}.validate(n_);
  return BigCount(static_cast<unsigned long>(anchored_[index(l, k, a)]));
}

BigCount EventTable::event(std::size_t l, std::size_t k) const {
  ClusterEvent{l, k, std::nullopt}.validate(n_);
  std::uint64_t sum = 0;
  for (std::size_t a = 1; a <= n_ - l + 1; ++a) sum += anchored_[index(l, k, a)];
  return BigCount(static_cast<unsigned long>(sum));
}

BigCount EventTable::union_event(std::size_t l) const {
  ClusterEvent{l, std::nullopt, std::nullopt}.validate(n_);
  return BigCount(static_cast<unsigned long>(union_[l]));
}

EventTable tabulate_events(std::size_t n, const PatternSet& patterns, unsigned jobs) {
  if (n < 1 || n > kMaxEnumerationLength)
    throw DomainError("n=" + std::to_string(n) + " outside the enumeration range 1.." +
                      std::to_string(kMaxEnumerationLength));
  return detail::reduce_avoiders<EventTable>(
      n, patterns, jobs, [n] { return EventTable(n); },
      [](EventTable& t, std::span<const Value> word) { t.record(word); },
      [](EventTable& into, const EventTable& part) { into.merge(part); });
}

// ---------------------------------------------------------------------------

namespace {

bool is_decimal(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

CountCache::CountCache(std::filesystem::path path) : path_(std::move(path)) {
  entries_ = read_file(&ignored_);
}

std::string CountCache::make_key(const PatternSet& patterns, std::size_t n) {
  const bool spaced = patterns.max_length() > 9;
  std::string key = "avoid=";
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (i > 0) key += '+';
    const auto& p = patterns.patterns()[i];
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (spaced && j > 0) key += ' ';
      key += std::to_string(p.values()[j]);
    }
  }
  key += ";n=" + std::to_string(n);
  return key;
}

std::optional<std::pair<PatternSet, std::size_t>> CountCache::parse_key(const std::string& key) {
  constexpr std::string_view prefix = "avoid=";
  if (key.rfind(prefix, 0) != 0) return std::nullopt;
  const std::size_t sep = key.rfind(";n=");
  if (sep == std::string::npos || sep < prefix.size()) return std::nullopt;
  const std::string spec = key.substr(prefix.size(), sep - prefix.size());
  const std::string digits = key.substr(sep + 3);
  if (!is_decimal(digits)) return std::nullopt;
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  try {
    PatternSet ps = PatternSet::parse(spec);
    if (make_key(ps, n) != key) return std::nullopt;
    return std::make_pair(std::move(ps), n);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::map<std::string, BigCount> CountCache::read_file(std::size_t* ignored) const {
  std::map<std::string, BigCount> out;
  std::size_t bad = 0;
  std::ifstream in(path_);
  if (in) {
    std::stringstream buf;
    buf << in.rdbuf();
    const auto doc = nlohmann::json::parse(buf.str(), nullptr, /*allow_exceptions=*/false);
    if (doc.is_object()) {
      for (const auto& [key, value] : doc.items()) {
        if (!value.is_string() || !is_decimal(value.get<std::string>()) || !parse_key(key)) {
          ++bad;
          continue;
        }
        out.emplace(key, BigCount(value.get<std::string>(), 10));
      }
    } else if (!buf.str().empty()) {
      ++bad;
    }
  }
  if (ignored) *ignored = bad;
  return out;
}

void CountCache::write_file(const std::map<std::string, BigCount>& entries) const {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [key, value] : entries) doc[key] = value.get_str();
  std::error_code ec;
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path(), ec);
  const std::filesystem::path tmp = path_.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot write count cache '" + tmp.string() + "'");
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("failed writing count cache '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path_, ec);
  if (ec) throw IoError("cannot replace count cache '" + path_.string() + "': " + ec.message());
}

std::optional<BigCount> CountCache::lookup(const PatternSet& patterns, std::size_t n) const {
  std::shared_lock lock(mutex_);
  const auto it = entries_.find(make_key(patterns, n));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void CountCache::store(const PatternSet& patterns, std::size_t n, const BigCount& count) {
  std::unique_lock lock(mutex_);
  auto merged = read_file(nullptr);
  for (const auto& [k, v] : entries_) merged.try_emplace(k, v);
  merged[make_key(patterns, n)] = count;
  write_file(merged);
  entries_ = std::move(merged);
}

std::vector<std::pair<std::string, BigCount>> CountCache::entries() const {
  std::shared_lock lock(mutex_);
  return {entries_.begin(), entries_.end()};
}

std::size_t CountCache::ignored_entries() const {
  std::shared_lock lock(mutex_);
  return ignored_;
}

// ---------------------------------------------------------------------------

CountingEngine::CountingEngine(EngineOptions options) : options_(std::move(options)) {
  if (options_.jobs == 0) options_.jobs = 1;
  if (options_.cache_path) cache_ = std::make_unique<CountCache>(*options_.cache_path);
}

BigCount CountingEngine::compute_count(std::size_t n, const PatternSet& patterns, std::string* method) {
  if (auto fast = fast_path_count(n, patterns)) {
    if (method) *method = "closed-form";
    return *fast;
  }
  if (n > kMaxEnumerationLength)
    throw DomainError("no closed form for class '" + patterns.key() + "' and n=" + std::to_string(n) +
                      " exceeds the enumeration limit " + std::to_string(kMaxEnumerationLength));
  if (method) *method = "enumeration";
  return count_by_enumeration(n, patterns, options_.jobs);
}

BigCount CountingEngine::count_avoiders(std::size_t n, const PatternSet& patterns) {
  if (n == 0) return BigCount(1);
  const std::string key = CountCache::make_key(patterns, n);
  {
    std::lock_guard lock(memo_mutex_);
    if (const auto it = count_memo_.find(key); it != count_memo_.end()) return it->second;
  }

  std::optional<BigCount> cached = cache_ ? cache_->lookup(patterns, n) : std::nullopt;
  BigCount result;
  if (cached && !options_.audit_cache_hits) {
    result = *cached;
  } else {
    std::string method;
    result = compute_count(n, patterns, &method);
    if (cache_ && method == "enumeration" && (!cached || *cached != result)) {
      if (cached) {
        std::lock_guard lock(memo_mutex_);
        ++repairs_;
      }
      cache_->store(patterns, n, result);
    }
  }
  std::lock_guard lock(memo_mutex_);
  count_memo_.emplace(key, result);
  return result;
}

std::shared_ptr<const EventTable> CountingEngine::events(std::size_t n, const PatternSet& patterns) {
  const std::string key = CountCache::make_key(patterns, n);
  {
    std::lock_guard lock(memo_mutex_);
    if (const auto it = table_memo_.find(key); it != table_memo_.end()) return it->second;
  }
  auto table = std::make_shared<const EventTable>(tabulate_events(n, patterns, options_.jobs));
  if (cache_ && !fast_path_count(n, patterns)) {
    const auto cached = cache_->lookup(patterns, n);
    if (!cached || *cached != table->total()) cache_->store(patterns, n, table->total());
  }
  std::lock_guard lock(memo_mutex_);
  const auto [it, inserted] = table_memo_.emplace(key, table);
  count_memo_.emplace(key, table->total());
  return it->second;
}

BigCount CountingEngine::count_event(std::size_t n, const PatternSet& patterns, const ClusterEvent& ev) {
  if (!ev.k) throw DomainError("count_event requires k; use count_union_event for A_l");
  ev.validate(n);
  const auto table = events(n, patterns);
  return ev.a ? table->anchored(ev.l, *ev.k, *ev.a) : table->event(ev.l, *ev.k);
}

BigCount CountingEngine::count_union_event(std::size_t n, const PatternSet& patterns, std::size_t l) {
  ClusterEvent{l, std::nullopt, std::nullopt}.validate(n);
  return events(n, patterns)->union_event(l);
}

ExactRatio CountingEngine::exact_probability(std::size_t n, const PatternSet& patterns, const ClusterEvent& ev) {
  const BigCount hits = count_event(n, patterns, ev);
  const BigCount total = count_avoiders(n, patterns);
  if (total == 0) throw UndefinedProbabilityError("S_" + std::to_string(n) + "(" + patterns.key() + ") is empty");
  return ExactRatio(hits, total);
}

ExactRatio CountingEngine::exact_union_probability(std::size_t n, const PatternSet& patterns, std::size_t l) {
  const BigCount hits = count_union_event(n, patterns, l);
  const BigCount total = count_avoiders(n, patterns);
  if (total == 0) throw UndefinedProbabilityError("S_" + std::to_string(n) + "(" + patterns.key() + ") is empty");
  return ExactRatio(hits, total);
}

std::vector<ExactRatio> CountingEngine::ratio_sequence(const PatternSet& patterns, std::size_t n_max) {
  if (n_max < 2) throw DomainError("ratio_sequence needs n_max >= 2");
  std::vector<ExactRatio> out;
  BigCount prev = count_avoiders(1, patterns);
  for (std::size_t n = 1; n < n_max; ++n) {
    BigCount next = count_avoiders(n + 1, patterns);
    if (prev == 0) throw UndefinedProbabilityError("empty class at n=" + std::to_string(n));
    out.emplace_back(next, prev);
    prev = std::move(next);
  }
  return out;
}

std::vector<CacheAuditRow> CountingEngine::audit_cache() {
  std::vector<CacheAuditRow> rows;
  if (!cache_) return rows;
  for (const auto& [key, cached] : cache_->entries()) {
    CacheAuditRow row;
    row.key = key;
    row.cached = cached.get_str();
    const auto parsed = CountCache::parse_key(key);
    if (!parsed) {
      row.method = "unparsable";
      rows.push_back(std::move(row));
      continue;
    }
    const auto& [ps, n] = *parsed;
    BigCount fresh;
    if (n <= kMaxEnumerationLength) {
      fresh = count_by_enumeration(n, ps, options_.jobs);
      row.method = "enumeration";
    } else if (auto fast = fast_path_count(n, ps)) {
      fresh = *fast;
      row.method = "closed-form";
    } else {
      row.method = "unavailable";
      rows.push_back(std::move(row));
      continue;
    }
    row.fresh = fresh.get_str();
    row.agree = fresh == cached;
    if (!row.agree) {
      cache_->store(ps, n, fresh);
      std::lock_guard lock(memo_mutex_);
      ++repairs_;
      count_memo_.erase(CountCache::make_key(ps, n));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::size_t CountingEngine::cache_repairs() const {
  std::lock_guard lock(memo_mutex_);
  return repairs_;
}

}  // namespace permclust

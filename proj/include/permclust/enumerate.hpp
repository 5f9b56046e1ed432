#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "permclust/exact.hpp"
#include "permclust/permutation.hpp"

namespace permclust {

/// Longest n for which exhaustive enumeration is attempted.
inline constexpr std::size_t kMaxEnumerationLength = 16;

using AvoiderVisitor = std::function<void(std::span<const Value>)>;

/// Visits every element of S_n(patterns) once, in lexicographic order.
void for_each_avoider(std::size_t n, const PatternSet& patterns, const AvoiderVisitor& visit);
using AvoiderPredicate = std::function<bool(std::span<const Value>)>;
/// Like for_each_avoider, but stops as soon as visit returns false.
/// Returns true when the whole class was visited.
bool for_each_avoider_while(std::size_t n, const PatternSet& patterns, const AvoiderPredicate& visit);
std::vector<Permutation> enumerate_avoiders(std::size_t n, const PatternSet& patterns);

/// |S_n(patterns)| by exhaustive search only. The search forest is split by
/// first letter over `jobs` threads.
BigCount count_by_enumeration(std::size_t n, const PatternSet& patterns, unsigned jobs = 1);

/// Closed-form count when one is available for this class and it has been
/// checked against enumeration for n <= 10: n! for the empty set, C_n for a
/// single pattern of length 3, the large Schroeder number r_{n-1} for
/// {2413, 3142}.
std::optional<BigCount> fast_path_count(std::size_t n, const PatternSet& patterns);

/// Cluster statistics of every avoider of length n, gathered in one pass.
class EventTable {
 public:
  explicit EventTable(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  BigCount total() const { return BigCount(static_cast<unsigned long>(total_)); }
  /// |A_{l;k;a} ∩ S_n(patterns)|.
  BigCount anchored(std::size_t l, std::size_t k, std::size_t a) const;
  /// |A_{l;k} ∩ S_n(patterns)|.
  BigCount event(std::size_t l, std::size_t k) const;
  /// |A_l ∩ S_n(patterns)|.
  BigCount union_event(std::size_t l) const;

  void record(std::span<const Value> word);
  void merge(const EventTable& other);

 private:
  std::size_t index(std::size_t l, std::size_t k, std::size_t a) const;

  std::size_t n_;
  std::uint64_t total_ = 0;
  std::vector<std::size_t> offset_;  // by l
  std::vector<std::uint64_t> anchored_;
  std::vector<std::uint64_t> union_;  // by l
};

EventTable tabulate_events(std::size_t n, const PatternSet& patterns, unsigned jobs = 1);

/// Persistent map "avoid=<patterns>;n=<n>" -> decimal count, stored as a
/// JSON object. Reads are concurrent; writes are serialized and re-merge
/// the file before an atomic replace.
class CountCache {
 public:
  explicit CountCache(std::filesystem::path path);

  const std::filesystem::path& path() const noexcept { return path_; }

  std::optional<BigCount> lookup(const PatternSet& patterns, std::size_t n) const;
  void store(const PatternSet& patterns, std::size_t n, const BigCount& count);
  std::vector<std::pair<std::string, BigCount>> entries() const;
  /// Entries dropped on load because their key or value was malformed.
  std::size_t ignored_entries() const;

  static std::string make_key(const PatternSet& patterns, std::size_t n);
  static std::optional<std::pair<PatternSet, std::size_t>> parse_key(const std::string& key);

 private:
  std::map<std::string, BigCount> read_file(std::size_t* ignored) const;
  void write_file(const std::map<std::string, BigCount>& entries) const;

  std::filesystem::path path_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, BigCount> entries_;
  std::size_t ignored_ = 0;
};

struct EngineOptions {
  std::optional<std::filesystem::path> cache_path;
  unsigned jobs = 1;
  /// Recompute every cache hit and repair mismatching entries.
  bool audit_cache_hits = false;
};

struct CacheAuditRow {
  std::string key;
  std::string cached;
  std::string fresh;
  std::string method;
  bool agree = false;
};

/// Counting front end: fast paths, in-memory memo, persistent cache and
/// per-(n, patterns) event tables. Safe to share between threads.
class CountingEngine {
 public:
  explicit CountingEngine(EngineOptions options = {});

  unsigned jobs() const noexcept { return options_.jobs; }
  const CountCache* cache() const noexcept { return cache_.get(); }

  /// |S_n(patterns)|; n = 0 gives 1.
  BigCount count_avoiders(std::size_t n, const PatternSet& patterns);
  /// Requires ev.k; counts A_{l;k;a} when ev.a is set.
  BigCount count_event(std::size_t n, const PatternSet& patterns, const ClusterEvent& ev);
  BigCount count_union_event(std::size_t n, const PatternSet& patterns, std::size_t l);

  /// count_event / count_avoiders. Throws UndefinedProbabilityError on an
  /// empty class.
  ExactRatio exact_probability(std::size_t n, const PatternSet& patterns, const ClusterEvent& ev);
  ExactRatio exact_union_probability(std::size_t n, const PatternSet& patterns, std::size_t l);

  /// |S_{n+1}| / |S_n| for n = 1 .. n_max - 1.
  std::vector<ExactRatio> ratio_sequence(const PatternSet& patterns, std::size_t n_max);

  std::shared_ptr<const EventTable> events(std::size_t n, const PatternSet& patterns);

  std::vector<CacheAuditRow> audit_cache();
  std::size_t cache_repairs() const;

 private:
  BigCount compute_count(std::size_t n, const PatternSet& patterns, std::string* method);

  EngineOptions options_;
  std::unique_ptr<CountCache> cache_;
  mutable std::mutex memo_mutex_;
  std::map<std::string, BigCount> count_memo_;
  std::map<std::string, std::shared_ptr<const EventTable>> table_memo_;
  std::size_t repairs_ = 0;
};

}  // namespace permclust

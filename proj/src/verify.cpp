#include "permclust/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "permclust/closed_form.hpp"
#include "permclust/error.hpp"
#include "permclust/numbers.hpp"
#include "permclust/transform.hpp"

namespace permclust {

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

const CheckRecord* VerifyReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return &c;
  return nullptr;
}

void VerifyReport::append(VerifyReport other) {
  for (auto& c : other.checks) checks.push_back(std::move(c));
}

namespace {

constexpr std::size_t kConvergenceStep = 20;

std::string where(std::size_t n, const PatternSet& ps, std::size_t l, std::size_t k) {
  return "n=" + std::to_string(n) + " avoid=" + (ps.empty() ? std::string("-") : ps.key()) +
         " l=" + std::to_string(l) + " k=" + std::to_string(k);
}

void record(VerifyReport& r, const std::string& suite, std::string instance, const ExactRatio& expected,
            const ExactRatio& actual) {
  r.checks.push_back({suite, std::move(instance), expected.to_string(), actual.to_string(), expected == actual});
}

// Tallies a family of exhaustive checks; keeps the first counterexample.
class Tally {
 public:
  Tally(std::string suite, std::string instance) : suite_(std::move(suite)), instance_(std::move(instance)) {}

  void check(bool ok, const std::function<std::string()>& describe) {
    ++total_;
    if (ok) {
      ++passed_;
    } else if (counterexample_.empty()) {
      counterexample_ = describe();
    }
  }

  void flush(VerifyReport& r) {
    CheckRecord c;
    c.suite = suite_;
    c.instance = counterexample_.empty() ? instance_ : instance_ + " counterexample: " + counterexample_;
    c.expected = std::to_string(total_) + " cases";
    c.actual = std::to_string(passed_) + " passed";
    c.pass = passed_ == total_;
    r.checks.push_back(std::move(c));
  }

 private:
  std::string suite_, instance_, counterexample_;
  std::size_t total_ = 0, passed_ = 0;
};

VerifyReport verify_catalan(CountingEngine& engine, std::size_t max_n) {
  VerifyReport r;
  for (const auto& tau : all_permutations(3)) {
    const PatternSet ps({tau});
    for (std::size_t n = 1; n <= std::min<std::size_t>(max_n, 12); ++n) {
      const BigCount got = count_by_enumeration(n, ps, engine.jobs());
      r.checks.push_back({"catalan", "n=" + std::to_string(n) + " avoid=" + ps.key(), catalan(n).get_str(),
                          got.get_str(), got == catalan(n)});
    }
  }
  for (std::size_t n = 1; n <= std::min<std::size_t>(max_n, 10); ++n) {
    const BigCount got = count_by_enumeration(n, PatternSet{}, engine.jobs());
    r.checks.push_back({"catalan", "n=" + std::to_string(n) + " avoid=-", factorial(n).get_str(), got.get_str(),
                        got == factorial(n)});
  }
  return r;
}

VerifyReport verify_uniform(CountingEngine& engine, std::size_t max_n) {
  VerifyReport r;
  const PatternSet all;
  for (std::size_t n = 3; n <= std::min<std::size_t>(max_n, 9); ++n) {
    for (std::size_t l = 2; l < n; ++l) {
      for (std::size_t k = 1; k <= n - l + 1; ++k) {
        record(r, "uniform", where(n, all, l, k), uniform_probability(n, l, k),
               engine.exact_probability(n, all, {l, k, std::nullopt}));
      }
      Tally anchored("uniform", "n=" + std::to_string(n) + " l=" + std::to_string(l) + " |A_{l;k;a}| = l!(n-l)!");
      const BigCount expected = factorial(l) * factorial(n - l);
      for (std::size_t k = 1; k <= n - l + 1; ++k)
        for (std::size_t a = 1; a <= n - l + 1; ++a)
          anchored.check(engine.count_event(n, all, {l, k, a}) == expected,
                         [&] { return "k=" + std::to_string(k) + " a=" + std::to_string(a); });
      anchored.flush(r);
    }
  }
  return r;
}

VerifyReport verify_bounds(CountingEngine& engine, std::size_t max_n) {
  VerifyReport r;
  std::vector<Permutation> taus = all_permutations(3);
  for (auto& p : all_permutations(4)) taus.push_back(std::move(p));
  for (const auto& tau : taus) {
    const PatternSet ps({tau});
    for (std::size_t n = 3; n <= max_n; ++n) {
      for (std::size_t l = 2; l < n; ++l) {
        const BoundReport b = avoider_bounds(engine, n, l, tau);
        for (std::size_t k = 1; k <= n - l + 1; ++k) {
          const ExactRatio p = engine.exact_probability(n, ps, {l, k, std::nullopt});
          const bool ok = p <= b.upper && (!b.lower || *b.lower <= p);
          r.checks.push_back({"thm1", where(n, ps, l, k),
                              (b.lower ? b.lower->to_string() : std::string("-")) + " <= p <= " + b.upper.to_string(),
                              p.to_string(), ok});
        }
      }
    }
  }
  for (const PatternSet& ps : {PatternSet::parse("2413"), PatternSet::parse("3142")}) {
    for (std::size_t n = 3; n <= max_n; ++n)
      for (std::size_t l = 2; l < n; ++l)
        for (std::size_t k = 1; k <= n - l + 1; ++k)
          record(r, "thm1", where(n, ps, l, k) + " cluster-free", cluster_free_probability(engine, n, l, ps),
                 engine.exact_probability(n, ps, {l, k, std::nullopt}));
  }
  return r;
}

VerifyReport verify_separable(CountingEngine& engine, std::size_t max_n) {
  VerifyReport r;
  const PatternSet sep = PatternSet::separable();
  for (std::size_t n = 3; n <= max_n; ++n) {
    for (std::size_t l = 2; l < n; ++l) {
      const ExactRatio formula = separable_probability(engine, n, l);
      std::set<std::string> distinct;
      for (std::size_t k = 1; k <= n - l + 1; ++k) {
        const ExactRatio p = engine.exact_probability(n, sep, {l, k, std::nullopt});
        distinct.insert(p.to_string());
        record(r, "thm2", where(n, sep, l, k), formula, p);
      }
      r.checks.push_back({"thm2", "n=" + std::to_string(n) + " l=" + std::to_string(l) + " k-independence",
                          "1 distinct value", std::to_string(distinct.size()) + " distinct values",
                          distinct.size() == 1});
    }
  }
  return r;
}

VerifyReport verify_catalan_class(CountingEngine& engine, std::size_t max_n) {
  VerifyReport r;
  for (const PatternSet& ps : {PatternSet::parse("123"), PatternSet::parse("321")}) {
    for (std::size_t n = 3; n <= max_n; ++n)
      for (std::size_t l = 2; l < n; ++l)
        for (std::size_t k = 1; k <= n - l + 1; ++k)
          record(r, "thm3", where(n, ps, l, k), catalan_class_probability(n, l, k),
                 engine.exact_probability(n, ps, {l, k, std::nullopt}));
  }

  // Anchored counts for 321 against |{eta in S_{n-l+1}(321) : eta_a = k}|.
  const PatternSet ps = PatternSet::parse("321");
  std::map<std::size_t, std::vector<std::vector<std::uint64_t>>> position_value;
  for (std::size_t n = 3; n <= max_n; ++n) {
    for (std::size_t l = 2; l < n; ++l) {
      const std::size_t m = n - l + 1;
      auto [it, fresh] = position_value.try_emplace(m);
      if (fresh) {
        it->second.assign(m + 1, std::vector<std::uint64_t>(m + 1, 0));
        for_each_avoider(m, ps, [&](std::span<const Value> w) {
          for (std::size_t i = 0; i < m; ++i) ++it->second[i + 1][w[i]];
        });
      }
      Tally t("thm3", "n=" + std::to_string(n) + " l=" + std::to_string(l) + " anchored counts avoid=321");
      for (std::size_t k = 1; k <= m; ++k) {
        for (std::size_t a = 1; a <= m; ++a) {
          BigCount expected(static_cast<unsigned long>(it->second[a][k]));
          if (a == k) expected += catalan(k - 1) * catalan(n - k - l + 1) * (catalan(l) - 1);
          const BigCount got = engine.count_event(n, ps, {l, k, a});
          t.check(got == expected, [&] {
            return "k=" + std::to_string(k) + " a=" + std::to_string(a) + " expected " + expected.get_str() +
                   " got " + got.get_str();
          });
        }
      }
      t.flush(r);
    }
  }
  return r;
}

VerifyReport verify_catalan_limits(std::size_t max_n) {
  VerifyReport r;
  const std::size_t top = max_n >= 2 * kConvergenceStep ? max_n : 500;
  for (std::size_t l = 2; l <= 5; ++l) {
    for (std::size_t k = 1; k <= 5; ++k) {
      for (const LimitSpec spec : {LimitSpec::fixed_k(k), LimitSpec::fixed_right_offset(k)}) {
        const ExactRatio limit = catalan_class_limit(l, spec);
        std::optional<ExactRatio> prev;
        bool decreasing = true;
        std::string trail;
        for (std::size_t n = kConvergenceStep; n <= top; n += kConvergenceStep) {
          const ExactRatio gap = abs(catalan_class_probability(n, l, spec.k_at(n, l)) - limit);
          if (prev && !(gap < *prev)) {
            decreasing = false;
            if (trail.empty()) trail = "gap grows at n=" + std::to_string(n);
          }
          prev = gap;
        }
        r.checks.push_back({"cor2", "l=" + std::to_string(l) + " " + spec.to_string() + " n=20.." + std::to_string(top),
                            "gap strictly decreasing to " + limit.to_string(),
                            decreasing ? "final gap " + prev->decimal(6) : trail, decreasing});
      }
    }
  }
  return r;
}

VerifyReport verify_separable_limits(CountingEngine& engine, std::size_t max_n) {
  VerifyReport r;
  const std::size_t top = max_n >= 2 * kConvergenceStep ? max_n : 300;
  for (std::size_t l = 2; l <= 5; ++l) {
    const SeparableLimit limit = separable_limit(engine, l);
    std::optional<Sqrt2Number> prev;
    bool decreasing = true;
    for (std::size_t n = kConvergenceStep; n <= top; n += kConvergenceStep) {
      const Sqrt2Number gap = abs(Sqrt2Number(separable_probability(engine, n, l)) - limit.value);
      if (prev && !(gap < *prev)) decreasing = false;
      prev = gap;
    }
    r.checks.push_back({"cor3", "l=" + std::to_string(l) + " n=20.." + std::to_string(top),
                        "gap strictly decreasing to " + limit.symbolic(), "final gap " + prev->decimal(6),
                        decreasing});
  }
  return r;
}

VerifyReport verify_symmetry(CountingEngine& engine, std::size_t max_n) {
  VerifyReport r;
  const std::vector<PatternSet> classes{PatternSet{},           PatternSet::parse("123"), PatternSet::parse("132"),
                                        PatternSet::separable(), PatternSet::parse("2413"), PatternSet::parse("1342")};
  for (const auto& ps : classes) {
    const PatternSet rev = ps.reversed(), comp = ps.complemented();
    for (std::size_t n = 3; n <= std::min<std::size_t>(max_n, ps.empty() ? 9 : 11); ++n) {
      Tally t("symmetry", "n=" + std::to_string(n) + " avoid=" + (ps.empty() ? std::string("-") : ps.key()) +
                              " reverse/complement event counts");
      t.check(engine.count_avoiders(n, ps) == engine.count_avoiders(n, rev) &&
                  engine.count_avoiders(n, ps) == engine.count_avoiders(n, comp),
              [] { return std::string("class sizes differ"); });
      for (std::size_t l = 2; l < n; ++l) {
        for (std::size_t k = 1; k <= n - l + 1; ++k) {
          const BigCount base = engine.count_event(n, ps, {l, k, std::nullopt});
          t.check(base == engine.count_event(n, rev, {l, k, std::nullopt}),
                  [&] { return "reverse l=" + std::to_string(l) + " k=" + std::to_string(k); });
          t.check(base == engine.count_event(n, comp, {l, n - k - l + 2, std::nullopt}),
                  [&] { return "complement l=" + std::to_string(l) + " k=" + std::to_string(k); });
        }
      }
      t.flush(r);
    }
  }
  const PatternSet inc = PatternSet::parse("123"), dec = PatternSet::parse("321");
  for (std::size_t n = 3; n <= max_n; ++n)
    for (std::size_t l = 2; l < n; ++l)
      for (std::size_t k = 1; k <= n - l + 1; ++k)
        record(r, "symmetry", where(n, inc, l, k) + " vs avoid=321",
               engine.exact_probability(n, dec, {l, k, std::nullopt}),
               engine.exact_probability(n, inc, {l, k, std::nullopt}));
  return r;
}

VerifyReport verify_transform(std::size_t max_n) {
  VerifyReport r;
  const std::size_t top = std::min<std::size_t>(max_n, 9);
  std::vector<Permutation> taus = all_permutations(3);
  taus.push_back(Permutation({2, 4, 1, 3}));
  taus.push_back(Permutation({3, 1, 4, 2}));
  const Permutation up({1, 2}), down({2, 1});

  std::map<std::size_t, std::vector<Permutation>> perms;
  auto sym = [&](std::size_t m) -> const std::vector<Permutation>& {
    auto [it, fresh] = perms.try_emplace(m);
    if (fresh) it->second = all_permutations(m);
    return it->second;
  };

  for (std::size_t n = 3; n <= top; ++n) {
    Tally round("transform", "n=" + std::to_string(n) + " contract/expand round trip");
    for (const auto& sigma : sym(n)) {
      for (const auto& occ : cluster_occurrences(sigma)) {
        const Permutation eta = contract(sigma, occ.l, occ.k, occ.a);
        const bool ok = eta.size() == n - occ.l + 1 && eta.at(occ.a) == occ.k &&
                        expand(eta, window_pattern(sigma, occ.l, occ.a), occ.l, occ.k, occ.a) == sigma;
        round.check(ok, [&] { return sigma.to_string() + " l=" + std::to_string(occ.l) + " k=" +
                                     std::to_string(occ.k) + " a=" + std::to_string(occ.a); });
      }
    }
    round.flush(r);

    Tally inject("transform", "n=" + std::to_string(n) + " expand injective and lands in A_{l;k;a}");
    for (std::size_t l = 2; l < n; ++l) {
      const std::size_t m = n - l + 1;
      for (std::size_t k = 1; k <= m; ++k) {
        for (std::size_t a = 1; a <= m; ++a) {
          std::set<Permutation> images;
          std::size_t inputs = 0;
          bool inside = true;
          for (const auto& eta : sym(m)) {
            if (eta.at(a) != k) continue;
            for (const auto& rho : sym(l)) {
              ++inputs;
              const Permutation s = expand(eta, rho, l, k, a);
              inside = inside && in_cluster_event(s, {l, k, a}) && contract(s, l, k, a) == eta;
              images.insert(s);
            }
          }
          inject.check(inside && images.size() == inputs, [&] {
            return "l=" + std::to_string(l) + " k=" + std::to_string(k) + " a=" + std::to_string(a);
          });
        }
      }
    }
    inject.flush(r);

    for (const auto& tau : taus) {
      const PatternSet ps({tau});
      const bool t12 = tight_contains(tau, up), t21 = tight_contains(tau, down), free = is_cluster_free(tau);
      Tally keep("transform", "n=" + std::to_string(n) + " avoid=" + tau.to_string() + " expansion keeps avoidance");
      for (std::size_t l = 2; l < n; ++l) {
        const std::size_t m = n - l + 1;
        const auto avoiders = enumerate_avoiders(m, ps);
        for (std::size_t k = 1; k <= m; ++k) {
          for (std::size_t a = 1; a <= m; ++a) {
            for (const auto& eta : avoiders) {
              if (eta.at(a) != k) continue;
              auto tag = [&](const Permutation& rho) {
                return "eta=" + eta.to_string() + " rho=" + rho.to_string() + " k=" + std::to_string(k) +
                       " a=" + std::to_string(a);
              };
              if (!t12) {
                const Permutation rho = Permutation::identity(l);
                keep.check(avoids_all(expand(eta, rho, l, k, a), ps), [&] { return tag(rho); });
              }
              if (!t21) {
                const Permutation rho = Permutation::decreasing(l);
                keep.check(avoids_all(expand(eta, rho, l, k, a), ps), [&] { return tag(rho); });
              }
              if (free) {
                for (const auto& rho : sym(l))
                  keep.check(avoids_all(expand(eta, rho, l, k, a), ps) == avoids_all(rho, ps),
                             [&] { return tag(rho); });
              }
            }
          }
        }
      }
      keep.flush(r);

      Tally shrink("transform", "n=" + std::to_string(n) + " avoid=" + tau.to_string() + " contraction keeps avoidance");
      for (const auto& sigma : enumerate_avoiders(n, ps))
        for (const auto& occ : cluster_occurrences(sigma))
          shrink.check(avoids_all(contract(sigma, occ.l, occ.k, occ.a), ps), [&] { return sigma.to_string(); });
      shrink.flush(r);
    }
  }
  return r;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"catalan", "uniform", "thm1",      "thm2",     "thm3",
                                              "cor2",    "cor3",    "symmetry",  "transform", "all"};
  return names;
}

VerifyReport run_verify(CountingEngine& engine, std::string_view suite, std::size_t max_n) {
  if (suite == "catalan") return verify_catalan(engine, max_n);
  if (suite == "uniform") return verify_uniform(engine, max_n);
  if (suite == "thm1") return verify_bounds(engine, max_n);
  if (suite == "thm2") return verify_separable(engine, max_n);
  if (suite == "thm3") return verify_catalan_class(engine, max_n);
  if (suite == "cor2") return verify_catalan_limits(max_n);
  if (suite == "cor3") return verify_separable_limits(engine, max_n);
  if (suite == "symmetry") return verify_symmetry(engine, max_n);
  if (suite == "transform") return verify_transform(max_n);
  if (suite == "all") {
    VerifyReport all;
    for (const auto& name : verify_suites())
      if (name != "all") all.append(run_verify(engine, name, max_n));
    return all;
  }
  throw ParseError("unknown verify suite '" + std::string(suite) + "'");
}

}  // namespace permclust

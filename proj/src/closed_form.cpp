#include "permclust/closed_form.hpp"

#include <algorithm>

#include "permclust/error.hpp"

namespace permclust {

namespace {

mpq_class power_of_four_inverse(std::size_t e) {
  BigCount den;
  mpz_ui_pow_ui(den.get_mpz_t(), 4, e);
  return mpq_class(BigCount(1), den);
}

bool in_symmetry_class(const Permutation& tau, const Permutation& base) {
  std::vector<Permutation> orbit;
  for (const Permutation& p : {base, inverse(base)}) {
    orbit.push_back(p);
    orbit.push_back(reverse(p));
    orbit.push_back(complement(p));
    orbit.push_back(reverse(complement(p)));
  }
  return std::find(orbit.begin(), orbit.end(), tau) != orbit.end();
}

}  // namespace

std::size_t LimitSpec::k_at(std::size_t n, std::size_t l) const {
  switch (mode) {
    case LimitMode::FixedK:
      return offset;
    case LimitMode::FixedRightOffset:
      if (n + 2 < offset + l) throw DomainError("right offset k'=" + std::to_string(offset) + " too large for n");
      return n + 2 - offset - l;
    case LimitMode::Interior:
      return (n - l + 2) / 2;
  }
  return offset;
}

std::string LimitSpec::to_string() const {
  switch (mode) {
    case LimitMode::FixedK:
      return "fixed-k(" + std::to_string(offset) + ")";
    case LimitMode::FixedRightOffset:
      return "fixed-right-offset(" + std::to_string(offset) + ")";
    case LimitMode::Interior:
      return "interior";
  }
  return {};
}

std::string SeparableLimit::symbolic() const {
  std::string out = coefficient.get_str() + "*(3-2*sqrt2)";
  if (exponent != 1) out += "^" + std::to_string(exponent);
  return out;
}

BigCount sep_count(CountingEngine& engine, std::size_t n) {
  return engine.count_avoiders(n, PatternSet::separable());
}

ExactRatio uniform_probability(std::size_t n, std::size_t l, std::size_t k) {
  ClusterEvent{l, k, std::nullopt}.validate(n);
  return ExactRatio(BigCount(n - l + 1) * factorial(l) * factorial(n - l), factorial(n));
}

ExactRatio catalan_class_probability(std::size_t n, std::size_t l, std::size_t k) {
  ClusterEvent{l, k, std::nullopt}.validate(n);
  const BigCount hits = catalan(n - l + 1) + catalan(k - 1) * catalan(n - k - l + 1) * (catalan(l) - 1);
  return ExactRatio(hits, catalan(n));
}

ExactRatio separable_probability(CountingEngine& engine, std::size_t n, std::size_t l) {
  ClusterEvent{l, std::nullopt, std::nullopt}.validate(n);
  return ExactRatio(sep_count(engine, n - l + 1) * sep_count(engine, l), sep_count(engine, n));
}

ExactRatio cluster_free_probability(CountingEngine& engine, std::size_t n, std::size_t l,
                                    const PatternSet& patterns) {
  for (const auto& tau : patterns.patterns())
    if (!is_cluster_free(tau))
      throw ApplicabilityError("pattern " + tau.to_string() + " is not cluster-free");
  ClusterEvent{l, std::nullopt, std::nullopt}.validate(n);
  const BigCount total = engine.count_avoiders(n, patterns);
  if (total == 0) throw UndefinedProbabilityError("empty avoider class");
  return ExactRatio(engine.count_avoiders(n - l + 1, patterns) * engine.count_avoiders(l, patterns), total);
}

BoundReport avoider_bounds(CountingEngine& engine, std::size_t n, std::size_t l, const Permutation& tau) {
  ClusterEvent{l, std::nullopt, std::nullopt}.validate(n);
  const PatternSet ps({tau});
  const BigCount total = engine.count_avoiders(n, ps);
  const BigCount shrunk = engine.count_avoiders(n - l + 1, ps);

  BoundReport r;
  r.upper = ExactRatio(shrunk * engine.count_avoiders(l, ps), total);
  r.tight12 = tight_contains(tau, Permutation({1, 2}));
  r.tight21 = tight_contains(tau, Permutation({2, 1}));
  if (!r.tight12 && !r.tight21) {
    r.lower_factor = 2;
    r.applicability = "tightly contains neither 12 nor 21: lower bound 2|S_{n-l+1}|/|S_n|";
  } else if (r.tight12 != r.tight21) {
    r.lower_factor = 1;
    r.applicability = std::string("tightly contains ") + (r.tight12 ? "12" : "21") + " only: lower bound |S_{n-l+1}|/|S_n|";
  } else {
    r.applicability = "tightly contains both 12 and 21: no lower bound";
  }
  if (r.lower_factor > 0) r.lower = ExactRatio(BigCount(r.lower_factor) * shrunk, total);
  return r;
}

SWConstant known_sw_limit(const PatternSet& patterns) {
  SWConstant c;
  c.pattern_class = patterns.empty() ? "all" : patterns.key();
  if (patterns.is_separable_class()) {
    c.known = true;
    c.value = Sqrt2Number(mpq_class(3), mpq_class(2));
    c.provenance = "separable: |S_n^sep| ~ (3-2sqrt2)^{-n+1/2} / (2 sqrt(pi n^3))";
    return c;
  }
  if (patterns.size() != 1) {
    c.provenance = "unknown";
    return c;
  }
  const Permutation& tau = patterns.patterns().front();
  const std::size_t m = tau.size();
  if (m == 3) {
    c.known = true;
    c.value = Sqrt2Number(4);
    c.provenance = "length-3 pattern: C_n ~ 4^n / (sqrt(pi) n^{3/2})";
  } else if (tau == Permutation::identity(m) || tau == Permutation::decreasing(m)) {
    c.known = true;
    c.value = Sqrt2Number(static_cast<long>((m - 1) * (m - 1)));
    c.provenance = "monotone pattern: |S_n| ~ c (m-1)^{2n} n^{-(m^2-2m)/2}";
  } else if (m == 4 && in_symmetry_class(tau, Permutation({1, 3, 4, 2}))) {
    c.known = true;
    c.value = Sqrt2Number(8);
    c.provenance = "symmetry class of 1342: |S_n| ~ 6/(243 sqrt(pi)) 8^n n^{-5/2}";
  } else {
    c.provenance = "unknown";
  }
  return c;
}

AvoiderLimits avoider_limits(CountingEngine& engine, const Permutation& tau, std::size_t l,
                             std::optional<Sqrt2Number> growth_override) {
  if (l < 2) throw DomainError("cluster length l must be >= 2");
  AvoiderLimits r;
  const PatternSet ps({tau});
  if (growth_override) {
    if (growth_override->sign() <= 0) throw DomainError("growth constant must be positive");
    r.growth.pattern_class = ps.key();
    r.growth.known = true;
    r.growth.value = *growth_override;
    r.growth.provenance = "supplied";
  } else {
    r.growth = known_sw_limit(ps);
  }
  r.conditions = check_conditions(tau);
  if (!r.growth.known) {
    r.applicability = "growth constant unknown";
    return r;
  }
  r.available = true;
  r.class_size = engine.count_avoiders(l, ps);
  const Sqrt2Number power = r.growth.value.pow(static_cast<unsigned>(l - 1));
  const Sqrt2Number size(ExactRatio(r.class_size, BigCount(1)));

  std::string why;
  const ConditionReport& c = r.conditions;
  if (c.c1 || c.c2 || c.c3) {
    r.upper = size / power;
    why += "upper via";
    if (c.c1) why += " C1";
    if (c.c2) why += " C2";
    if (c.c3) why += " C3";
  } else {
    why += "no upper bound (C1, C2, C3 all fail)";
  }
  if (c.c1) {
    r.lower_factor = (!c.tight12 && !c.tight21) ? 2 : 1;
    r.lower = Sqrt2Number(static_cast<long>(r.lower_factor)) / power;
    why += r.lower_factor == 2 ? "; lower 2/L^{l-1}" : "; lower 1/L^{l-1}";
  }
  if (c.cluster_free) {
    r.exact = size / power;
    why += "; exact (cluster-free)";
  }
  r.applicability = why;
  return r;
}

ExactRatio catalan_class_limit(std::size_t l, const LimitSpec& spec) {
  if (l < 2) throw DomainError("cluster length l must be >= 2");
  mpq_class value = power_of_four_inverse(l - 1);
  if (spec.mode != LimitMode::Interior) {
    const std::size_t k = spec.offset;
    if (k < 1) throw DomainError("fixed-regime offset must be >= 1");
    value += mpq_class(catalan(k - 1) * (catalan(l) - 1)) * power_of_four_inverse(k + l - 1);
  }
  return ExactRatio(value);
}

SeparableLimit separable_limit(CountingEngine& engine, std::size_t l) {
  if (l < 2) throw DomainError("cluster length l must be >= 2");
  SeparableLimit r;
  r.coefficient = sep_count(engine, l);
  r.exponent = l - 1;
  r.value = Sqrt2Number(ExactRatio(r.coefficient, BigCount(1))) *
            three_minus_two_sqrt2().pow(static_cast<unsigned>(r.exponent));
  return r;
}

ExactRatio union_asymptotic_ratio(CountingEngine& engine, std::size_t n, std::size_t l) {
  if (l < 3) throw DomainError("union asymptotics need l >= 3");
  ClusterEvent{l, std::nullopt, std::nullopt}.validate(n);
  const ExactRatio p = engine.exact_union_probability(n, PatternSet{}, l);
  BigCount scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), n, l - 2);
  return p * ExactRatio(scale, factorial(l));
}

std::optional<ClosedForm> closed_form_for(const PatternSet& patterns) {
  if (patterns.empty()) return ClosedForm::Uniform;
  if (patterns.size() == 1) {
    const Permutation& tau = patterns.patterns().front();
    if (tau == Permutation({1, 2, 3}) || tau == Permutation({3, 2, 1})) return ClosedForm::CatalanClass;
  }
  if (patterns.is_separable_class()) return ClosedForm::Separable;
  const auto& ps = patterns.patterns();
  if (std::all_of(ps.begin(), ps.end(), [](const Permutation& t) { return is_cluster_free(t); }))
    return ClosedForm::ClusterFree;
  return std::nullopt;
}

std::string_view closed_form_name(ClosedForm form) {
  switch (form) {
    case ClosedForm::Uniform:
      return "uniform";
    case ClosedForm::CatalanClass:
      return "thm3";
    case ClosedForm::Separable:
      return "thm2";
    case ClosedForm::ClusterFree:
      return "thm1(ii)";
  }
  return "none";
}

ExactRatio closed_form_probability(CountingEngine& engine, ClosedForm form, const PatternSet& patterns,
                                   std::size_t n, std::size_t l, std::size_t k) {
  ClusterEvent{l, k, std::nullopt}.validate(n);
  switch (form) {
    case ClosedForm::Uniform:
      return uniform_probability(n, l, k);
    case ClosedForm::CatalanClass:
      return catalan_class_probability(n, l, k);
    case ClosedForm::Separable:
      return separable_probability(engine, n, l);
    case ClosedForm::ClusterFree:
      return cluster_free_probability(engine, n, l, patterns);
  }
  throw ApplicabilityError("no closed form");
}

}  // namespace permclust

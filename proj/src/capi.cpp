#include "permclust/permclust.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "permclust/closed_form.hpp"
#include "permclust/error.hpp"
#include "permclust/transform.hpp"
#include "permclust/verify.hpp"

using namespace permclust;

struct pc_perm {
  Permutation value;
};

struct pc_patterns {
  PatternSet value;
};

struct pc_context {
  std::unique_ptr<CountingEngine> engine;
};

struct pc_value {
  pc_value_kind kind = PC_VALUE_INTEGER;
  Sqrt2Number number;
  std::string symbolic;
};

struct pc_report {
  VerifyReport report;
};

namespace {

thread_local std::string last_error;

pc_status fail(pc_status s, const std::string& message) {
  last_error = message;
  return s;
}

template <typename F>
pc_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return PC_OK;
  } catch (const ParseError& e) {
    return fail(PC_ERR_PARSE, e.what());
  } catch (const DomainError& e) {
    return fail(PC_ERR_DOMAIN, e.what());
  } catch (const ApplicabilityError& e) {
    return fail(PC_ERR_APPLICABILITY, e.what());
  } catch (const UndefinedProbabilityError& e) {
    return fail(PC_ERR_UNDEFINED, e.what());
  } catch (const IoError& e) {
    return fail(PC_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PC_ERR_INTERNAL, e.what());
  }
}

#define PC_REQUIRE(cond)                                                      \
  do {                                                                       \
    if (!(cond)) return fail(PC_ERR_ARGUMENT, "null argument: " #cond);      \
  } while (0)

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pc_value* make_value(const BigCount& c) {
  return new pc_value{PC_VALUE_INTEGER, Sqrt2Number(ExactRatio(c, BigCount(1))), {}};
}

pc_value* make_value(const ExactRatio& r) { return new pc_value{PC_VALUE_RATIONAL, Sqrt2Number(r), {}}; }

pc_value* make_value(const Sqrt2Number& x, std::string symbolic = {}) {
  return new pc_value{x.is_rational() ? PC_VALUE_RATIONAL : PC_VALUE_QUADRATIC, x, std::move(symbolic)};
}

pc_value* make_value(const std::optional<Sqrt2Number>& x) { return x ? make_value(*x) : nullptr; }

pc_perm* make_perm(Permutation p) { return new pc_perm{std::move(p)}; }

std::optional<std::size_t> anchor(std::size_t a) { return a == 0 ? std::nullopt : std::optional<std::size_t>(a); }

const PatternSet& patterns_or_empty(const pc_patterns* ps) {
  static const PatternSet none;
  return ps ? ps->value : none;
}

LimitSpec limit_spec(pc_limit_mode mode, std::size_t offset) {
  switch (mode) {
    case PC_LIMIT_FIXED_K:
      return LimitSpec::fixed_k(offset);
    case PC_LIMIT_FIXED_RIGHT_OFFSET:
      return LimitSpec::fixed_right_offset(offset);
    case PC_LIMIT_INTERIOR:
      return LimitSpec::interior();
  }
  throw DomainError("unknown limit mode");
}

void fill(pc_conditions* out, const ConditionReport& c) {
  *out = {c.c1, c.c2, c.c3, c.tight12, c.tight21, c.cluster_free};
}

}  // namespace

extern "C" {

const char* pc_last_error(void) { return last_error.c_str(); }

const char* pc_version(void) { return "1.0.0"; }

const char* pc_status_name(pc_status status) {
  switch (status) {
    case PC_OK:
      return "ok";
    case PC_ERR_PARSE:
      return "parse error";
    case PC_ERR_DOMAIN:
      return "domain error";
    case PC_ERR_APPLICABILITY:
      return "applicability error";
    case PC_ERR_UNDEFINED:
      return "undefined probability";
    case PC_ERR_IO:
      return "i/o error";
    case PC_ERR_ARGUMENT:
      return "invalid argument";
    case PC_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void pc_string_free(char* s) { std::free(s); }

// --- permutations ----------------------------------------------------------

pc_status pc_perm_parse(const char* text, pc_perm** out) {
  PC_REQUIRE(text && out);
  return guarded([&] { *out = make_perm(parse_permutation(text)); });
}

pc_status pc_perm_from_values(const uint32_t* values, size_t n, pc_perm** out) {
  PC_REQUIRE((values || n == 0) && out);
  return guarded([&] { *out = make_perm(Permutation(std::vector<Value>(values, values + n))); });
}

pc_perm* pc_perm_clone(const pc_perm* p) { return p ? new (std::nothrow) pc_perm{p->value} : nullptr; }

void pc_perm_free(pc_perm* p) { delete p; }

size_t pc_perm_size(const pc_perm* p) { return p ? p->value.size() : 0; }

const uint32_t* pc_perm_values(const pc_perm* p) { return p ? p->value.values().data() : nullptr; }

char* pc_perm_format(const pc_perm* p) { return p ? copy_string(p->value.to_string()) : nullptr; }

int pc_perm_equal(const pc_perm* x, const pc_perm* y) { return x && y && x->value == y->value; }

pc_status pc_perm_reverse(const pc_perm* p, pc_perm** out) {
  PC_REQUIRE(p && out);
  return guarded([&] { *out = make_perm(reverse(p->value)); });
}

pc_status pc_perm_complement(const pc_perm* p, pc_perm** out) {
  PC_REQUIRE(p && out);
  return guarded([&] { *out = make_perm(complement(p->value)); });
}

int pc_contains(const pc_perm* sigma, const pc_perm* tau) {
  return sigma && tau && contains_pattern(sigma->value, tau->value);
}

int pc_tight_contains(const pc_perm* tau, const pc_perm* nu) {
  return tau && nu && tight_contains(tau->value, nu->value);
}

int pc_is_cluster_free(const pc_perm* tau) { return tau && is_cluster_free(tau->value); }

int pc_is_separable(const pc_perm* sigma) { return sigma && is_separable(sigma->value); }

pc_status pc_in_cluster_event(const pc_perm* sigma, size_t l, size_t k, size_t a, int* out) {
  PC_REQUIRE(sigma && out);
  return guarded([&] { *out = in_cluster_event(sigma->value, {l, k, anchor(a)}); });
}

pc_status pc_in_any_cluster_event(const pc_perm* sigma, size_t l, int* out) {
  PC_REQUIRE(sigma && out);
  return guarded([&] { *out = in_any_cluster_event(sigma->value, l); });
}

pc_status pc_check_conditions(const pc_perm* tau, pc_conditions* out) {
  PC_REQUIRE(tau && out);
  return guarded([&] { fill(out, check_conditions(tau->value)); });
}

pc_status pc_contract(const pc_perm* sigma, size_t l, size_t k, size_t a, pc_perm** out) {
  PC_REQUIRE(sigma && out);
  return guarded([&] { *out = make_perm(contract(sigma->value, l, k, a)); });
}

pc_status pc_expand(const pc_perm* eta, const pc_perm* rho, size_t l, size_t k, size_t a, pc_perm** out) {
  PC_REQUIRE(eta && rho && out);
  return guarded([&] { *out = make_perm(expand(eta->value, rho->value, l, k, a)); });
}

pc_status pc_flatten(const uint32_t* values, size_t n, pc_perm** out) {
  PC_REQUIRE(values && out);
  return guarded([&] { *out = make_perm(flatten(LabeledSequence(std::vector<Value>(values, values + n)))); });
}

pc_status pc_inflate(const pc_perm* nu, const uint32_t* ground, size_t n, uint32_t* out) {
  PC_REQUIRE(nu && ground && out);
  return guarded([&] {
    const LabeledSequence seq = inflate(nu->value, GroundSet(std::vector<Value>(ground, ground + n)));
    std::copy(seq.values().begin(), seq.values().end(), out);
  });
}

// --- pattern sets ----------------------------------------------------------

pc_status pc_patterns_parse(const char* spec, pc_patterns** out) {
  PC_REQUIRE(spec && out);
  return guarded([&] { *out = new pc_patterns{PatternSet::parse(spec)}; });
}

void pc_patterns_free(pc_patterns* ps) { delete ps; }

size_t pc_patterns_size(const pc_patterns* ps) { return ps ? ps->value.size() : 0; }

char* pc_patterns_key(const pc_patterns* ps) { return ps ? copy_string(ps->value.key()) : nullptr; }

int pc_avoids(const pc_perm* sigma, const pc_patterns* ps) {
  return sigma && avoids_all(sigma->value, patterns_or_empty(ps));
}

// --- context ---------------------------------------------------------------

pc_status pc_context_create(const char* cache_path, unsigned jobs, pc_context** out) {
  PC_REQUIRE(out);
  return guarded([&] {
    EngineOptions opts;
    if (cache_path) opts.cache_path = std::filesystem::path(cache_path);
    opts.jobs = jobs == 0 ? 1 : jobs;
    *out = new pc_context{std::make_unique<CountingEngine>(opts)};
  });
}

void pc_context_free(pc_context* ctx) { delete ctx; }

size_t pc_context_cache_ignored(const pc_context* ctx) {
  return ctx && ctx->engine->cache() ? ctx->engine->cache()->ignored_entries() : 0;
}

size_t pc_context_cache_repairs(const pc_context* ctx) { return ctx ? ctx->engine->cache_repairs() : 0; }

// --- values ----------------------------------------------------------------

void pc_value_free(pc_value* v) { delete v; }

pc_value_kind pc_value_get_kind(const pc_value* v) { return v ? v->kind : PC_VALUE_INTEGER; }

char* pc_value_exact(const pc_value* v) {
  if (!v) return nullptr;
  if (v->number.is_rational()) return copy_string(ExactRatio(v->number.rational_part()).to_string());
  return copy_string(v->number.to_string());
}

char* pc_value_symbolic(const pc_value* v) {
  if (!v) return nullptr;
  return v->symbolic.empty() ? pc_value_exact(v) : copy_string(v->symbolic);
}

char* pc_value_decimal(const pc_value* v, int digits) {
  return v ? copy_string(v->number.decimal(digits)) : nullptr;
}

int pc_value_compare(const pc_value* x, const pc_value* y) {
  if (!x || !y) return 0;
  return (x->number - y->number).sign();
}

pc_status pc_value_abs_difference(const pc_value* x, const pc_value* y, pc_value** out) {
  PC_REQUIRE(x && y && out);
  return guarded([&] { *out = make_value(abs(x->number - y->number)); });
}

// --- counting --------------------------------------------------------------

pc_status pc_count_avoiders(pc_context* ctx, size_t n, const pc_patterns* ps, pc_value** out) {
  PC_REQUIRE(ctx && out);
  return guarded([&] { *out = make_value(ctx->engine->count_avoiders(n, patterns_or_empty(ps))); });
}

pc_status pc_count_event(pc_context* ctx, size_t n, const pc_patterns* ps, size_t l, size_t k, size_t a,
                         pc_value** out) {
  PC_REQUIRE(ctx && out);
  return guarded([&] { *out = make_value(ctx->engine->count_event(n, patterns_or_empty(ps), {l, k, anchor(a)})); });
}

pc_status pc_count_union_event(pc_context* ctx, size_t n, const pc_patterns* ps, size_t l, pc_value** out) {
  PC_REQUIRE(ctx && out);
  return guarded([&] { *out = make_value(ctx->engine->count_union_event(n, patterns_or_empty(ps), l)); });
}

pc_status pc_probability(pc_context* ctx, size_t n, const pc_patterns* ps, size_t l, size_t k, size_t a,
                         pc_value** out) {
  PC_REQUIRE(ctx && out);
  return guarded(
      [&] { *out = make_value(ctx->engine->exact_probability(n, patterns_or_empty(ps), {l, k, anchor(a)})); });
}

pc_status pc_union_probability(pc_context* ctx, size_t n, const pc_patterns* ps, size_t l, pc_value** out) {
  PC_REQUIRE(ctx && out);
  return guarded([&] { *out = make_value(ctx->engine->exact_union_probability(n, patterns_or_empty(ps), l)); });
}

pc_status pc_growth_ratio(pc_context* ctx, const pc_patterns* ps, size_t n, pc_value** out) {
  PC_REQUIRE(ctx && out);
  return guarded([&] {
    if (n < 1) throw DomainError("ratio index n must be >= 1");
    const PatternSet& p = patterns_or_empty(ps);
    const BigCount den = ctx->engine->count_avoiders(n, p);
    if (den == 0) throw UndefinedProbabilityError("empty avoider class at n=" + std::to_string(n));
    *out = make_value(ExactRatio(ctx->engine->count_avoiders(n + 1, p), den));
  });
}

pc_status pc_enumerate(size_t n, const pc_patterns* ps, pc_visit_fn visit, void* user) {
  PC_REQUIRE(visit);
  return guarded([&] {
    if (n < 1) throw DomainError("n must be >= 1");
    if (n > kMaxEnumerationLength)
      throw DomainError("n=" + std::to_string(n) + " exceeds the enumeration limit " +
                        std::to_string(kMaxEnumerationLength));
    for_each_avoider_while(n, patterns_or_empty(ps),
                           [&](std::span<const Value> w) { return visit(w.data(), w.size(), user) == 0; });
  });
}

// --- closed forms ----------------------------------------------------------

pc_status pc_catalan(size_t n, pc_value** out) {
  PC_REQUIRE(out);
  return guarded([&] { *out = make_value(catalan(n)); });
}

pc_status pc_sep_count(pc_context* ctx, size_t n, pc_value** out) {
  PC_REQUIRE(ctx && out);
  return guarded([&] { *out = make_value(sep_count(*ctx->engine, n)); });
}

pc_status pc_uniform_probability(size_t n, size_t l, size_t k, pc_value** out) {
  PC_REQUIRE(out);
  return guarded([&] { *out = make_value(uniform_probability(n, l, k)); });
}

pc_status pc_catalan_class_probability(size_t n, size_t l, size_t k, pc_value** out) {
  PC_REQUIRE(out);
  return guarded([&] { *out = make_value(catalan_class_probability(n, l, k)); });
}

pc_status pc_separable_probability(pc_context* ctx, size_t n, size_t l, pc_value** out) {
  PC_REQUIRE(ctx && out);
  return guarded([&] { *out = make_value(separable_probability(*ctx->engine, n, l)); });
}

pc_status pc_cluster_free_probability(pc_context* ctx, const pc_patterns* ps, size_t n, size_t l, pc_value** out) {
  PC_REQUIRE(ctx && ps && out);
  return guarded([&] { *out = make_value(cluster_free_probability(*ctx->engine, n, l, ps->value)); });
}

pc_status pc_closed_form(pc_context* ctx, const pc_patterns* ps, size_t n, size_t l, size_t k, char** name,
                         pc_value** out) {
  PC_REQUIRE(ctx && name && out);
  return guarded([&] {
    *name = nullptr;
    *out = nullptr;
    const PatternSet& p = patterns_or_empty(ps);
    const auto form = closed_form_for(p);
    if (!form) return;
    const ExactRatio value = closed_form_probability(*ctx->engine, *form, p, n, l, k);
    *out = make_value(value);
    *name = copy_string(std::string(closed_form_name(*form)));
  });
}

pc_status pc_bounds(pc_context* ctx, const pc_perm* tau, size_t n, size_t l, pc_value** lower, pc_value** upper,
                    unsigned* lower_factor, char** applicability) {
  PC_REQUIRE(ctx && tau && lower && upper);
  return guarded([&] {
    const BoundReport b = avoider_bounds(*ctx->engine, n, l, tau->value);
    *lower = b.lower ? make_value(*b.lower) : nullptr;
    *upper = make_value(b.upper);
    if (lower_factor) *lower_factor = b.lower_factor;
    if (applicability) *applicability = copy_string(b.applicability);
  });
}

pc_status pc_growth_constant(const pc_patterns* ps, pc_value** out, char** provenance) {
  PC_REQUIRE(out);
  return guarded([&] {
    const SWConstant c = known_sw_limit(patterns_or_empty(ps));
    *out = c.known ? make_value(c.value) : nullptr;
    if (provenance) *provenance = copy_string(c.provenance);
  });
}

pc_status pc_avoider_limits(pc_context* ctx, const pc_perm* tau, size_t l, const char* growth, pc_value** upper,
                            pc_value** lower, pc_value** exact, pc_value** growth_used, pc_conditions* conditions,
                            char** applicability) {
  PC_REQUIRE(ctx && tau && upper && lower && exact);
  return guarded([&] {
    std::optional<Sqrt2Number> override_value;
    if (growth) override_value = Sqrt2Number::parse(growth);
    const AvoiderLimits lim = avoider_limits(*ctx->engine, tau->value, l, override_value);
    *upper = make_value(lim.upper);
    *lower = make_value(lim.lower);
    *exact = make_value(lim.exact);
    if (growth_used) *growth_used = lim.growth.known ? make_value(lim.growth.value) : nullptr;
    if (conditions) fill(conditions, lim.conditions);
    if (applicability) *applicability = copy_string(lim.applicability);
  });
}

pc_status pc_catalan_class_limit(size_t l, pc_limit_mode mode, size_t offset, pc_value** out) {
  PC_REQUIRE(out);
  return guarded([&] { *out = make_value(catalan_class_limit(l, limit_spec(mode, offset))); });
}

pc_status pc_limit_k_at(pc_limit_mode mode, size_t offset, size_t n, size_t l, size_t* k) {
  PC_REQUIRE(k);
  return guarded([&] { *k = limit_spec(mode, offset).k_at(n, l); });
}

pc_status pc_separable_limit(pc_context* ctx, size_t l, pc_value** out) {
  PC_REQUIRE(ctx && out);
  return guarded([&] {
    const SeparableLimit lim = separable_limit(*ctx->engine, l);
    *out = make_value(lim.value, lim.symbolic());
  });
}

pc_status pc_union_asymptotic_ratio(pc_context* ctx, size_t n, size_t l, pc_value** out) {
  PC_REQUIRE(ctx && out);
  return guarded([&] { *out = make_value(union_asymptotic_ratio(*ctx->engine, n, l)); });
}

// --- reports ---------------------------------------------------------------

const char* pc_verify_suite_name(size_t i) {
  const auto& names = verify_suites();
  return i < names.size() ? names[i].c_str() : nullptr;
}

pc_status pc_verify(pc_context* ctx, const char* suite, size_t max_n, pc_report** out) {
  PC_REQUIRE(ctx && suite && out);
  return guarded([&] { *out = new pc_report{run_verify(*ctx->engine, suite, max_n)}; });
}

pc_status pc_cache_audit(pc_context* ctx, pc_report** out) {
  PC_REQUIRE(ctx && out);
  return guarded([&] {
    auto report = std::make_unique<pc_report>();
    for (const auto& row : ctx->engine->audit_cache())
      report->report.checks.push_back({row.method, row.key, row.cached, row.fresh, row.agree});
    *out = report.release();
  });
}

void pc_report_free(pc_report* r) { delete r; }

size_t pc_report_size(const pc_report* r) { return r ? r->report.checks.size() : 0; }

int pc_report_passed(const pc_report* r) { return r && r->report.passed(); }

const char* pc_report_field(const pc_report* r, size_t i, pc_report_field_id field) {
  if (!r || i >= r->report.checks.size()) return nullptr;
  const CheckRecord& c = r->report.checks[i];
  switch (field) {
    case PC_FIELD_SUITE:
      return c.suite.c_str();
    case PC_FIELD_INSTANCE:
      return c.instance.c_str();
    case PC_FIELD_EXPECTED:
      return c.expected.c_str();
    case PC_FIELD_ACTUAL:
      return c.actual.c_str();
  }
  return nullptr;
}

int pc_report_pass(const pc_report* r, size_t i) { return r && i < r->report.checks.size() && r->report.checks[i].pass; }

}  // extern "C"

// Command-line front end. Talks to the library only through the C API.

#include <chrono>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "permclust/permclust.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;
constexpr int kDigits = 15;

struct CliError : std::runtime_error {
  CliError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

int exit_code(pc_status s) {
  switch (s) {
    case PC_OK:
      return kExitOk;
    case PC_ERR_PARSE:
    case PC_ERR_ARGUMENT:
      return kExitUsage;
    case PC_ERR_DOMAIN:
    case PC_ERR_APPLICABILITY:
    case PC_ERR_UNDEFINED:
      return kExitDomain;
    case PC_ERR_IO:
    case PC_ERR_INTERNAL:
      return kExitIo;
  }
  return kExitIo;
}

void check(pc_status s) {
  if (s != PC_OK) throw CliError(exit_code(s), std::string(pc_status_name(s)) + ": " + pc_last_error());
}

[[noreturn]] void usage(const std::string& what) { throw CliError(kExitUsage, what); }

std::string take(char* s) {
  if (!s) return {};
  std::string out(s);
  pc_string_free(s);
  return out;
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Value = std::unique_ptr<pc_value, Deleter<pc_value, pc_value_free>>;
using Patterns = std::unique_ptr<pc_patterns, Deleter<pc_patterns, pc_patterns_free>>;
using Perm = std::unique_ptr<pc_perm, Deleter<pc_perm, pc_perm_free>>;
using Context = std::unique_ptr<pc_context, Deleter<pc_context, pc_context_free>>;
using Report = std::unique_ptr<pc_report, Deleter<pc_report, pc_report_free>>;

// Out-parameter adaptor: check(f(..., out(v))).
template <typename Ptr>
struct OutParam {
  Ptr& owner;
  typename Ptr::pointer raw = nullptr;
  ~OutParam() { owner.reset(raw); }
  operator typename Ptr::pointer*() { return &raw; }
};
template <typename Ptr>
OutParam<Ptr> out(Ptr& p) {
  return {p};
}

std::string exact(const Value& v) { return v ? take(pc_value_exact(v.get())) : std::string(); }
std::string symbolic(const Value& v) { return v ? take(pc_value_symbolic(v.get())) : std::string(); }
std::string decimal(const Value& v) { return v ? take(pc_value_decimal(v.get(), kDigits)) : std::string(); }

Value difference(const Value& x, const Value& y) {
  Value d;
  check(pc_value_abs_difference(x.get(), y.get(), out(d)));
  return d;
}

Patterns parse_patterns(const std::string& spec) {
  Patterns ps;
  check(pc_patterns_parse(spec.c_str(), out(ps)));
  return ps;
}

std::string patterns_label(const Patterns& ps) {
  const std::string key = take(pc_patterns_key(ps.get()));
  return key.empty() ? "none" : key;
}

struct Range {
  std::size_t lo = 0, hi = 0;
};

Range parse_range(const std::string& text, const std::string& flag) {
  auto number = [&](const std::string& s) -> std::size_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      usage(flag + ": expected an integer or a range a..b, got '" + text + "'");
    return std::stoul(s);
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const std::size_t v = number(text);
    return {v, v};
  }
  const Range r{number(text.substr(0, dots)), number(text.substr(dots + 2))};
  if (r.lo > r.hi) usage(flag + ": empty range '" + text + "'");
  return r;
}

// --- output ----------------------------------------------------------------

enum class Format { Text, Json, Csv };

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> meta;

  void add(std::vector<std::string> row) {
    row.resize(columns.size());
    rows.push_back(std::move(row));
  }
};

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string render(const Table& t, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::Json: {
      nlohmann::ordered_json doc;
      doc["meta"] = nlohmann::ordered_json::object();
      for (const auto& [k, v] : t.meta) doc["meta"][k] = v;
      doc["rows"] = nlohmann::ordered_json::array();
      for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
        doc["rows"].push_back(std::move(obj));
      }
      os << doc.dump(2) << '\n';
      break;
    }
    case Format::Csv: {
      for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_cell(t.columns[i]);
      os << "\r\n";
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
        os << "\r\n";
      }
      break;
    }
    case Format::Text: {
      for (const auto& [k, v] : t.meta) os << "# " << k << ": " << v << '\n';
      std::vector<std::size_t> width(t.columns.size());
      for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
      for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
      auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (i) s += "  ";
          s += cells[i];
          if (i + 1 < cells.size()) s.append(width[i] - cells[i].size(), ' ');
        }
        os << s << '\n';
      };
      line(t.columns);
      for (const auto& row : t.rows) line(row);
      break;
    }
  }
  return os.str();
}

// --- commands --------------------------------------------------------------

struct Globals {
  std::string format = "text";
  std::string cache = ".permclust/cache.json";
  bool no_cache = false;
  unsigned jobs = 1;
  bool no_meta = false;
};

Context open_context(const Globals& g) {
  Context ctx;
  check(pc_context_create(g.no_cache ? nullptr : g.cache.c_str(), g.jobs, out(ctx)));
  return ctx;
}

struct CountArgs {
  std::string n;
  std::string avoid;
};

int run_count(const Globals& g, const CountArgs& a, Table& t) {
  const Range n = parse_range(a.n, "--n");
  const Patterns ps = parse_patterns(a.avoid);
  const Context ctx = open_context(g);
  t.columns = {"avoid", "n", "count"};
  for (std::size_t i = n.lo; i <= n.hi; ++i) {
    Value c;
    check(pc_count_avoiders(ctx.get(), i, ps.get(), out(c)));
    t.add({patterns_label(ps), std::to_string(i), exact(c)});
  }
  return kExitOk;
}

struct EnumerateArgs {
  std::size_t n = 0;
  std::string avoid;
  std::size_t limit = 0;
};

int run_enumerate(const EnumerateArgs& a, Table& t) {
  const Patterns ps = parse_patterns(a.avoid);
  t.columns = {"index", "permutation"};
  struct State {
    Table* table;
    std::size_t limit;
  } state{&t, a.limit};
  auto visit = [](const uint32_t* values, size_t n, void* user) -> int {
    auto* s = static_cast<State*>(user);
    Perm p;
    if (pc_perm_from_values(values, n, out(p)) != PC_OK) return 1;
    s->table->add({std::to_string(s->table->rows.size() + 1), take(pc_perm_format(p.get()))});
    return s->limit != 0 && s->table->rows.size() >= s->limit;
  };
  check(pc_enumerate(a.n, ps.get(), visit, &state));
  t.meta.emplace_back("avoiders_listed", std::to_string(t.rows.size()));
  return kExitOk;
}

struct ProbArgs {
  std::size_t n = 0;
  std::string avoid;
  std::size_t l = 0;
  std::optional<std::size_t> k, a;
  bool union_event = false;
  bool formula = false;
};

int run_prob(const Globals& g, const ProbArgs& a, Table& t) {
  if (a.union_event && (a.k || a.a)) usage("--union cannot be combined with --k or --a");
  if (!a.union_event && !a.k) usage("--k is required unless --union is given");
  if (a.formula && (a.union_event || a.a)) usage("--formula applies to A_{l;k} events only (no --union, no --a)");
  const Patterns ps = parse_patterns(a.avoid);
  const Context ctx = open_context(g);

  Value count, total, p;
  std::string event = "l=" + std::to_string(a.l);
  if (a.union_event) {
    event += " union";
    check(pc_count_union_event(ctx.get(), a.n, ps.get(), a.l, out(count)));
    check(pc_union_probability(ctx.get(), a.n, ps.get(), a.l, out(p)));
  } else {
    event += " k=" + std::to_string(*a.k);
    if (a.a) event += " a=" + std::to_string(*a.a);
    check(pc_count_event(ctx.get(), a.n, ps.get(), a.l, *a.k, a.a.value_or(0), out(count)));
    check(pc_probability(ctx.get(), a.n, ps.get(), a.l, *a.k, a.a.value_or(0), out(p)));
  }
  check(pc_count_avoiders(ctx.get(), a.n, ps.get(), out(total)));

  t.columns = {"n", "avoid", "event", "count", "total", "probability", "decimal"};
  std::vector<std::string> row{std::to_string(a.n), patterns_label(ps), event, exact(count), exact(total),
                               exact(p),           decimal(p)};
  if (a.formula) {
    t.columns.insert(t.columns.end(), {"formula", "formula_probability", "formula_decimal", "agreement"});
    char* name = nullptr;
    Value f;
    check(pc_closed_form(ctx.get(), ps.get(), a.n, a.l, *a.k, &name, out(f)));
    if (!name) {
      row.insert(row.end(), {"none", "", "", "n/a"});
    } else {
      row.insert(row.end(), {take(name), exact(f), decimal(f),
                             pc_value_compare(f.get(), p.get()) == 0 ? "AGREE" : "DISAGREE"});
    }
  }
  t.add(std::move(row));
  return kExitOk;
}

struct VerifyArgs {
  std::string suite;
  std::size_t max_n = 9;
  bool failures_only = false;
};

int run_verify(const Globals& g, const VerifyArgs& a, Table& t, std::string& diagnostics) {
  const Context ctx = open_context(g);
  Report r;
  check(pc_verify(ctx.get(), a.suite.c_str(), a.max_n, out(r)));
  t.columns = {"suite", "instance", "expected", "actual", "result"};
  std::size_t failed = 0;
  std::optional<std::size_t> first;
  const std::size_t size = pc_report_size(r.get());
  for (std::size_t i = 0; i < size; ++i) {
    const bool pass = pc_report_pass(r.get(), i);
    if (!pass) {
      ++failed;
      if (!first) first = i;
    }
    if (a.failures_only && pass) continue;
    t.add({pc_report_field(r.get(), i, PC_FIELD_SUITE), pc_report_field(r.get(), i, PC_FIELD_INSTANCE),
           pc_report_field(r.get(), i, PC_FIELD_EXPECTED), pc_report_field(r.get(), i, PC_FIELD_ACTUAL),
           pass ? "PASS" : "FAIL"});
  }
  t.meta.emplace_back("suite", a.suite);
  t.meta.emplace_back("max_n", std::to_string(a.max_n));
  t.meta.emplace_back("checks", std::to_string(size));
  t.meta.emplace_back("failed", std::to_string(failed));
  if (!first) return kExitOk;
  diagnostics = std::string("counterexample: suite=") + pc_report_field(r.get(), *first, PC_FIELD_SUITE) +
                " instance=" + pc_report_field(r.get(), *first, PC_FIELD_INSTANCE) +
                " expected=" + pc_report_field(r.get(), *first, PC_FIELD_EXPECTED) +
                " actual=" + pc_report_field(r.get(), *first, PC_FIELD_ACTUAL) + "\n";
  return kExitVerifyFailed;
}

struct LimitArgs {
  std::string target;
  std::string l = "2..5";
  bool interior = false;
  std::optional<std::size_t> fixed_k, right_offset;
  std::optional<std::size_t> at_n;
  std::optional<std::string> growth;
};

struct Regime {
  pc_limit_mode mode = PC_LIMIT_FIXED_K;
  std::size_t offset = 1;
  std::string label;
};

Regime regime_of(const LimitArgs& a) {
  const int chosen = int(a.interior) + int(a.fixed_k.has_value()) + int(a.right_offset.has_value());
  if (chosen > 1) usage("choose at most one of --interior, --fixed-k, --right-offset");
  if (a.interior) return {PC_LIMIT_INTERIOR, 0, "interior"};
  if (a.right_offset) {
    if (*a.right_offset < 1) usage("--right-offset must be >= 1");
    return {PC_LIMIT_FIXED_RIGHT_OFFSET, *a.right_offset, "fixed-right-offset(" + std::to_string(*a.right_offset) + ")"};
  }
  const std::size_t k = a.fixed_k.value_or(1);
  if (k < 1) usage("--fixed-k must be >= 1");
  return {PC_LIMIT_FIXED_K, k, "fixed-k(" + std::to_string(k) + ")"};
}

std::size_t finite_k(const Regime& rg, std::size_t n, std::size_t l) {
  std::size_t k = 0;
  check(pc_limit_k_at(rg.mode, rg.offset, n, l, &k));
  return k;
}

int run_limits(const Globals& g, const LimitArgs& a, Table& t) {
  const Range ls = parse_range(a.l, "--l");
  if (ls.lo < 2) usage("--l: cluster length must be >= 2");
  const Regime rg = regime_of(a);
  const Context ctx = open_context(g);
  const bool finite = a.at_n.has_value();
  const std::vector<std::string> finite_columns{"n", "k", "finite", "finite_decimal", "gap", "gap_decimal"};
  if (a.growth && a.target.rfind("cor1:", 0) != 0) usage("--L applies to cor1 targets only");

  if (a.target.rfind("cor1:", 0) == 0) {
    Perm tau;
    check(pc_perm_parse(a.target.substr(5).c_str(), out(tau)));
    const Patterns ps = parse_patterns(a.target.substr(5));
    t.columns = {"l", "pattern", "growth", "upper", "upper_decimal", "lower", "lower_decimal", "exact",
                 "exact_decimal", "applicability"};
    if (finite) t.columns.insert(t.columns.end(), finite_columns.begin(), finite_columns.end());
    for (std::size_t l = ls.lo; l <= ls.hi; ++l) {
      Value upper, lower, ex, growth;
      char* why = nullptr;
      check(pc_avoider_limits(ctx.get(), tau.get(), l, a.growth ? a.growth->c_str() : nullptr, out(upper),
                              out(lower), out(ex), out(growth), nullptr, &why));
      std::vector<std::string> row{std::to_string(l), take(pc_perm_format(tau.get()))};
      if (!growth) {
        row.insert(row.end(), {"unavailable", "unavailable", "unavailable", "unavailable", "unavailable",
                               "unavailable", "unavailable", take(why)});
      } else {
        auto cell = [](const Value& v) { return v ? exact(v) : std::string("-"); };
        auto cell_dec = [](const Value& v) { return v ? decimal(v) : std::string("-"); };
        row.insert(row.end(), {exact(growth), cell(upper), cell_dec(upper), cell(lower), cell_dec(lower), cell(ex),
                               cell_dec(ex), take(why)});
      }
      if (finite) {
        const std::size_t n = *a.at_n, k = finite_k(rg, n, l);
        Value p;
        check(pc_probability(ctx.get(), n, ps.get(), l, k, 0, out(p)));
        std::string gap = "-", gap_dec = "-";
        if (ex) {
          const Value d = difference(p, ex);
          gap = exact(d);
          gap_dec = decimal(d);
        }
        row.insert(row.end(), {std::to_string(n), std::to_string(k), exact(p), decimal(p), gap, gap_dec});
      }
      t.add(std::move(row));
    }
  } else if (a.target == "cor2") {
    t.columns = {"l", "regime", "limit", "decimal"};
    if (finite) t.columns.insert(t.columns.end(), finite_columns.begin(), finite_columns.end());
    for (std::size_t l = ls.lo; l <= ls.hi; ++l) {
      Value lim;
      check(pc_catalan_class_limit(l, rg.mode, rg.offset, out(lim)));
      std::vector<std::string> row{std::to_string(l), rg.label, exact(lim), decimal(lim)};
      if (finite) {
        const std::size_t n = *a.at_n, k = finite_k(rg, n, l);
        Value p;
        check(pc_catalan_class_probability(n, l, k, out(p)));
        const Value d = difference(p, lim);
        row.insert(row.end(), {std::to_string(n), std::to_string(k), exact(p), decimal(p), exact(d), decimal(d)});
      }
      t.add(std::move(row));
    }
  } else if (a.target == "sep") {
    if (a.interior || a.fixed_k || a.right_offset) usage("the sep limit does not depend on k; drop the regime flag");
    t.columns = {"l", "limit", "exact", "decimal"};
    if (finite) t.columns.insert(t.columns.end(), {"n", "finite", "finite_decimal", "gap", "gap_decimal"});
    for (std::size_t l = ls.lo; l <= ls.hi; ++l) {
      Value lim;
      check(pc_separable_limit(ctx.get(), l, out(lim)));
      std::vector<std::string> row{std::to_string(l), symbolic(lim), exact(lim), decimal(lim)};
      if (finite) {
        Value p;
        check(pc_separable_probability(ctx.get(), *a.at_n, l, out(p)));
        const Value d = difference(p, lim);
        row.insert(row.end(), {std::to_string(*a.at_n), exact(p), decimal(p), exact(d), decimal(d)});
      }
      t.add(std::move(row));
    }
  } else {
    usage("unknown limits target '" + a.target + "' (expected cor1:<pattern>, cor2 or sep)");
  }
  return kExitOk;
}

struct TableArgs {
  std::string kind;
  std::string avoid;
  std::string n = "3..8";
  std::optional<std::string> l;
};

int run_table(const Globals& g, const TableArgs& a, Table& t) {
  const Range n = parse_range(a.n, "--n");
  const Patterns ps = parse_patterns(a.avoid);
  const Context ctx = open_context(g);
  if (a.kind == "prob") {
    t.columns = {"n", "l", "k", "probability", "decimal", "formula", "agreement"};
    for (std::size_t i = std::max<std::size_t>(n.lo, 3); i <= n.hi; ++i) {
      const Range ls = a.l ? parse_range(*a.l, "--l") : Range{2, i - 1};
      for (std::size_t l = std::max<std::size_t>(ls.lo, 2); l <= std::min(ls.hi, i - 1); ++l) {
        for (std::size_t k = 1; k <= i - l + 1; ++k) {
          Value p, f;
          char* name = nullptr;
          check(pc_probability(ctx.get(), i, ps.get(), l, k, 0, out(p)));
          check(pc_closed_form(ctx.get(), ps.get(), i, l, k, &name, out(f)));
          const std::string label = name ? take(name) : "none";
          const std::string agree = !f ? "n/a" : pc_value_compare(f.get(), p.get()) == 0 ? "AGREE" : "DISAGREE";
          t.add({std::to_string(i), std::to_string(l), std::to_string(k), exact(p), decimal(p), label, agree});
        }
      }
    }
  } else if (a.kind == "ratio") {
    if (n.hi < 2) usage("--n: the ratio table needs an upper end of at least 2");
    t.columns = {"n", "ratio", "decimal"};
    for (std::size_t i = std::max<std::size_t>(n.lo, 1); i < n.hi; ++i) {
      Value r;
      check(pc_growth_ratio(ctx.get(), ps.get(), i, out(r)));
      t.add({std::to_string(i), exact(r), decimal(r)});
    }
    Value growth;
    char* provenance = nullptr;
    check(pc_growth_constant(ps.get(), out(growth), &provenance));
    t.meta.emplace_back("growth_constant", growth ? symbolic(growth) + " ~ " + decimal(growth) : "unknown");
    t.meta.emplace_back("growth_provenance", take(provenance));
  } else if (a.kind == "union") {
    if (!a.avoid.empty()) usage("the union table is defined on all of S_n; drop --avoid");
    const Range ls = a.l ? parse_range(*a.l, "--l") : Range{3, 3};
    t.columns = {"n", "l", "probability", "decimal", "scaled_ratio", "scaled_decimal"};
    for (std::size_t l = ls.lo; l <= ls.hi; ++l) {
      for (std::size_t i = n.lo; i <= n.hi; ++i) {
        if (i < l + 1) continue;
        Value p, r;
        check(pc_union_probability(ctx.get(), i, ps.get(), l, out(p)));
        check(pc_union_asymptotic_ratio(ctx.get(), i, l, out(r)));
        t.add({std::to_string(i), std::to_string(l), exact(p), decimal(p), exact(r), decimal(r)});
      }
    }
  } else {
    usage("unknown table kind '" + a.kind + "' (expected prob, ratio or union)");
  }
  return kExitOk;
}

int run_cache_audit(const Globals& g, Table& t) {
  if (g.no_cache) usage("cache-audit needs a cache; remove --no-cache");
  const Context ctx = open_context(g);
  Report r;
  check(pc_cache_audit(ctx.get(), out(r)));
  t.columns = {"key", "cached", "fresh", "method", "status"};
  std::size_t bad = 0;
  for (std::size_t i = 0; i < pc_report_size(r.get()); ++i) {
    const bool ok = pc_report_pass(r.get(), i);
    bad += !ok;
    t.add({pc_report_field(r.get(), i, PC_FIELD_INSTANCE), pc_report_field(r.get(), i, PC_FIELD_EXPECTED),
           pc_report_field(r.get(), i, PC_FIELD_ACTUAL), pc_report_field(r.get(), i, PC_FIELD_SUITE),
           ok ? "ok" : "repaired"});
  }
  t.meta.emplace_back("cache", g.cache);
  t.meta.emplace_back("entries", std::to_string(pc_report_size(r.get())));
  t.meta.emplace_back("ignored_corrupt", std::to_string(pc_context_cache_ignored(ctx.get())));
  t.meta.emplace_back("repaired", std::to_string(bad));
  return bad == 0 ? kExitOk : kExitVerifyFailed;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cluster statistics of pattern-avoiding permutations"};
  app.set_version_flag("--version", std::string(pc_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--cache", g.cache, "Count cache file");
  app.add_flag("--no-cache", g.no_cache, "Do not read or write the count cache");
  app.add_option("--jobs", g.jobs, "Worker threads for enumeration")->check(CLI::Range(1u, 256u));
  app.add_flag("--no-meta", g.no_meta, "Omit the timestamp so identical runs give identical bytes");

  CountArgs count;
  auto* c_count = app.add_subcommand("count", "|S_n(patterns)|");
  c_count->add_option("--n", count.n, "Length, or a range a..b")->required();
  c_count->add_option("--avoid", count.avoid, "Patterns: \"\", 321, 2413+3142, sep");

  EnumerateArgs en;
  auto* c_enum = app.add_subcommand("enumerate", "List S_n(patterns) in lexicographic order");
  c_enum->add_option("--n", en.n, "Length")->required();
  c_enum->add_option("--avoid", en.avoid, "Patterns");
  c_enum->add_option("--limit", en.limit, "Stop after this many (0 = all)");

  ProbArgs pr;
  auto* c_prob = app.add_subcommand("prob", "Exact probability of a cluster event");
  c_prob->add_option("--n", pr.n, "Length")->required();
  c_prob->add_option("--avoid", pr.avoid, "Patterns");
  c_prob->add_option("--l", pr.l, "Cluster length")->required();
  c_prob->add_option("--k", pr.k, "Smallest value of the cluster");
  c_prob->add_option("--a", pr.a, "Starting position of the cluster");
  c_prob->add_flag("--union", pr.union_event, "Any cluster of length l");
  c_prob->add_flag("--formula", pr.formula, "Compare with the matching closed form");

  VerifyArgs ve;
  auto* c_verify = app.add_subcommand("verify", "Check identities against exhaustive enumeration");
  std::vector<std::string> suites;
  for (std::size_t i = 0; pc_verify_suite_name(i); ++i) suites.emplace_back(pc_verify_suite_name(i));
  c_verify->add_option("suite", ve.suite, "Suite")->required()->check(CLI::IsMember(suites));
  c_verify->add_option("--max-n", ve.max_n, "Largest n to enumerate")->check(CLI::Range(3, 16));
  c_verify->add_flag("--failures-only", ve.failures_only, "List failing checks only");

  LimitArgs li;
  auto* c_limits = app.add_subcommand("limits", "n -> infinity limits");
  c_limits->add_option("target", li.target, "cor1:<pattern>, cor2 or sep")->required();
  c_limits->add_option("--l", li.l, "Cluster length or range a..b");
  c_limits->add_flag("--interior", li.interior, "k_n and n-k_n both grow");
  c_limits->add_option("--fixed-k", li.fixed_k, "k_n = k");
  c_limits->add_option("--right-offset", li.right_offset, "k_n = n+2-k'-l");
  c_limits->add_option("--at-n", li.at_n, "Add the finite-n value and its gap");
  c_limits->add_option("--L", li.growth, "Growth constant for cor1, e.g. 8 or 3+2*sqrt2");

  TableArgs ta;
  auto* c_table = app.add_subcommand("table", "Evidence tables over a grid");
  c_table->add_option("kind", ta.kind, "prob, ratio or union")->required();
  c_table->add_option("--avoid", ta.avoid, "Patterns");
  c_table->add_option("--n", ta.n, "Range of n");
  c_table->add_option("--l", ta.l, "Range of l");

  auto* c_audit = app.add_subcommand("cache-audit", "Recompute every cache entry and repair mismatches");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Format format = g.format == "json" ? Format::Json : g.format == "csv" ? Format::Csv : Format::Text;
  Table table;
  std::string diagnostics;
  int status = kExitOk;
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (c_count->parsed()) status = run_count(g, count, table);
    else if (c_enum->parsed()) status = run_enumerate(en, table);
    else if (c_prob->parsed()) status = run_prob(g, pr, table);
    else if (c_verify->parsed()) status = run_verify(g, ve, table, diagnostics);
    else if (c_limits->parsed()) status = run_limits(g, li, table);
    else if (c_table->parsed()) status = run_table(g, ta, table);
    else if (c_audit->parsed()) status = run_cache_audit(g, table);
  } catch (const CliError& e) {
    std::cerr << "permclust " << command << ": " << e.what() << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "permclust " << command << ": " << e.what() << '\n';
    return kExitIo;
  }

  std::vector<std::pair<std::string, std::string>> meta{{"command", command}, {"version", pc_version()}};
  if (!g.no_meta) meta.emplace_back("generated", utc_timestamp());
  meta.insert(meta.end(), table.meta.begin(), table.meta.end());
  table.meta = std::move(meta);

  std::cout << render(table, format) << std::flush;
  if (!diagnostics.empty()) std::cerr << diagnostics;
  return status;
}

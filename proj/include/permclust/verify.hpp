#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "permclust/enumerate.hpp"

namespace permclust {

struct CheckRecord {
  std::string suite;
  std::string instance;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct VerifyReport {
  std::vector<CheckRecord> checks;

  bool passed() const;
  const CheckRecord* first_failure() const;
  void append(VerifyReport other);
};

/// Suite names accepted by run_verify, "all" last.
const std::vector<std::string>& verify_suites();

/// Runs one identity suite against exhaustive enumeration for n <= max_n.
/// Throws ParseError for an unknown suite name.
VerifyReport run_verify(CountingEngine& engine, std::string_view suite, std::size_t max_n);

}  // namespace permclust

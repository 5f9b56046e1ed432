#pragma once

#include <cstddef>

#include "permclust/exact.hpp"

namespace permclust {

BigCount factorial(std::size_t n);
BigCount binomial(std::size_t n, std::size_t k);

/// C_n = binom(2n, n) / (n + 1).
BigCount catalan(std::size_t n);

/// Large Schroeder numbers r_0 = 1, r_1 = 2, r_2 = 6, ... from the
/// three-term recurrence (m+1) r_m = 3(2m-1) r_{m-1} - (m-2) r_{m-2}.
/// Memoized; safe to call concurrently.
BigCount large_schroeder(std::size_t m);

}  // namespace permclust

#include "permclust/numbers.hpp"

#include <mutex>
#include <vector>

namespace permclust {

BigCount factorial(std::size_t n) {
  BigCount r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigCount binomial(std::size_t n, std::size_t k) {
  BigCount r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigCount catalan(std::size_t n) {
  BigCount r = binomial(2 * n, n);
  mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), n + 1);
  return r;
}

BigCount large_schroeder(std::size_t m) {
  static std::mutex mu;
  static std::vector<BigCount> memo{BigCount(1), BigCount(2)};
  std::lock_guard lock(mu);
  while (memo.size() <= m) {
    const std::size_t i = memo.size();
    BigCount next = BigCount(3 * (2 * i - 1)) * memo[i - 1] - BigCount(i - 2) * memo[i - 2];
    mpz_divexact_ui(next.get_mpz_t(), next.get_mpz_t(), i + 1);
    memo.push_back(std::move(next));
  }
  return memo[m];
}

}  // namespace permclust

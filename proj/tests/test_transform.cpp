#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "permclust/error.hpp"
#include "permclust/transform.hpp"

using namespace permclust;

namespace {

Permutation P(const char* s) { return parse_permutation(s); }

}  // namespace

TEST_CASE("flatten and inflate on the worked example") {
  CHECK(flatten(LabeledSequence({7, 3, 8, 5}, GroundSet({3, 5, 7, 8}))) == P("3142"));
  CHECK(inflate(P("3142"), GroundSet({3, 5, 7, 8})).values() == std::vector<Value>{7, 3, 8, 5});
  const GroundSet b({1, 2, 3, 4, 7, 8, 9});
  CHECK(flatten(LabeledSequence({7, 9, 8, 4, 3, 1, 2}, b)) == P("5764312"));
  CHECK(inflate(P("5764312"), b).values() == std::vector<Value>{7, 9, 8, 4, 3, 1, 2});
  CHECK(flatten(LabeledSequence({4, 1, 3, 2})) == P("4132"));
  CHECK(inflate(Permutation::identity(4), GroundSet({2, 5, 6, 9})).values() == std::vector<Value>{2, 5, 6, 9});
  CHECK_THROWS_AS(inflate(P("21"), GroundSet({1, 2, 3})), DomainError);
  CHECK_THROWS_AS(GroundSet({3, 2}), DomainError);
  CHECK_THROWS_AS(GroundSet({}), DomainError);
  CHECK_THROWS_AS(LabeledSequence({1, 2}, GroundSet({1, 3})), DomainError);
}

TEST_CASE("flatten inverts inflate") {
  const GroundSet b({2, 3, 5, 7, 11});
  for (const auto& nu : all_permutations(5)) {
    CHECK(flatten(inflate(nu, b)) == nu);
    const LabeledSequence seq = inflate(nu, b);
    CHECK(inflate(flatten(seq), b) == seq);
  }
}

TEST_CASE("collapsed ground set") {
  CHECK(GroundSet::collapsed(9, 3, 4).elements() == std::vector<Value>{1, 2, 3, 4, 7, 8, 9});
  CHECK(GroundSet::collapsed(5, 2, 1).elements() == std::vector<Value>{1, 3, 4, 5});
}

TEST_CASE("contract and expand on the worked example") {
  const Permutation sigma = P("798645312");
  const Contraction c = contract_steps(sigma, 3, 4, 4);
  CHECK(c.ground.elements() == std::vector<Value>{1, 2, 3, 4, 7, 8, 9});
  CHECK(c.barred.values() == std::vector<Value>{7, 9, 8, 4, 3, 1, 2});
  CHECK(c.eta == P("5764312"));
  CHECK(contract(sigma, 3, 4, 4) == P("5764312"));
  CHECK(expand(P("5764312"), P("213"), 3, 4, 4) == P("798546312"));
  CHECK(expand(P("5764312"), window_pattern(sigma, 3, 4), 3, 4, 4) == sigma);
  CHECK(window_pattern(sigma, 3, 4) == P("312"));
}

TEST_CASE("trivial contractions and expansions") {
  CHECK(contract(Permutation::identity(5), 2, 1, 1) == Permutation::identity(4));
  CHECK(expand(Permutation::identity(4), P("12"), 2, 1, 1) == Permutation::identity(5));
}

TEST_CASE("precondition failures") {
  CHECK_THROWS_AS(contract(P("2413"), 2, 1, 1), DomainError);
  CHECK_THROWS_AS(contract(P("798645312"), 3, 4, 3), DomainError);
  CHECK_THROWS_AS(expand(P("5764312"), P("213"), 3, 4, 3), DomainError);
  CHECK_THROWS_AS(expand(P("5764312"), P("21"), 3, 4, 4), DomainError);
  try {
    contract(P("2413"), 2, 1, 2);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}

TEST_CASE("contract(expand(eta, rho)) = eta over S6 x S3") {
  const auto s3 = all_permutations(3);
  for (const auto& eta : all_permutations(6)) {
    for (std::size_t a = 1; a <= 6; ++a) {
      const std::size_t k = eta.at(a);
      for (const auto& rho : s3) {
        const Permutation s = expand(eta, rho, 3, k, a);
        REQUIRE(in_cluster_event(s, {3, k, a}));
        REQUIRE(contract(s, 3, k, a) == eta);
        REQUIRE(window_pattern(s, 3, a) == rho);
      }
    }
  }
}

TEST_CASE("cluster_occurrences lists every anchored cluster") {
  for (std::size_t n = 3; n <= 6; ++n) {
    for (const auto& sigma : all_permutations(n)) {
      const oracle::Word w(sigma.values().begin(), sigma.values().end());
      std::set<std::tuple<std::size_t, std::size_t, std::size_t>> expected, got;
      for (std::size_t l = 2; l < n; ++l)
        for (std::size_t k = 1; k <= n - l + 1; ++k)
          for (std::size_t a = 1; a <= n - l + 1; ++a)
            if (oracle::cluster_at(w, l, k, a)) expected.emplace(l, k, a);
      for (const auto& o : cluster_occurrences(sigma)) got.emplace(o.l, o.k, o.a);
      REQUIRE(got == expected);
    }
  }
}

TEST_CASE("expansion prescribed by tight containment keeps avoidance (S3 and S4, n <= 7)") {
  std::vector<Permutation> taus = all_permutations(3);
  for (auto& t : all_permutations(4)) taus.push_back(t);
  for (const auto& tau : taus) {
    const PatternSet ps({tau});
    const bool t12 = tight_contains(tau, P("12")), t21 = tight_contains(tau, P("21"));
    for (std::size_t n = 3; n <= 7; ++n) {
      for (std::size_t l = 2; l < n; ++l) {
        for (const auto& eta : all_permutations(n - l + 1)) {
          if (!avoids_all(eta, ps)) continue;
          for (std::size_t a = 1; a <= eta.size(); ++a) {
            const std::size_t k = eta.at(a);
            if (!t12) REQUIRE(avoids_all(expand(eta, Permutation::identity(l), l, k, a), ps));
            if (!t21) REQUIRE(avoids_all(expand(eta, Permutation::decreasing(l), l, k, a), ps));
          }
        }
      }
    }
  }
}

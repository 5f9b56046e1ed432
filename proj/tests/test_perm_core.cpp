#include <algorithm>

#include "doctest.h"
#include "oracle.hpp"
#include "permclust/error.hpp"
#include "permclust/permutation.hpp"

using namespace permclust;

namespace {

Permutation P(const char* s) { return parse_permutation(s); }

oracle::Word word(const Permutation& p) { return {p.values().begin(), p.values().end()}; }

}  // namespace

TEST_CASE("parse_permutation accepts compact and separated forms") {
  CHECK(P("798645312") == Permutation({7, 9, 8, 6, 4, 5, 3, 1, 2}));
  CHECK(P("1") == Permutation({1}));
  const Permutation ten = P("10 2 1 3 4 5 6 7 8 9");
  CHECK(ten.size() == 10);
  CHECK(ten.at(1) == 10);
  CHECK(P("3,1,2") == Permutation({3, 1, 2}));
  CHECK(P(" 2, 3 ,1 ") == Permutation({2, 3, 1}));
  CHECK(P("2 3 1") == Permutation({2, 3, 1}));
}

TEST_CASE("formatting round-trips") {
  for (const char* s : {"1", "21", "798645312", "10 2 1 3 4 5 6 7 8 9"}) CHECK(P(s).to_string() == s);
  for (const auto& p : all_permutations(5)) CHECK(parse_permutation(p.to_string()) == p);
}

TEST_CASE("parse errors name the offending token") {
  auto message = [](const char* s) {
    try {
      parse_permutation(s);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("") != "no error");
  CHECK(message("   ") != "no error");
  CHECK(message("1223").find("2") != std::string::npos);
  CHECK(message("1,2 3") != "no error");
  CHECK(message("1 2 x").find("x") != std::string::npos);
  CHECK(message("1 2 4").find("4") != std::string::npos);
  CHECK(message("0") != "no error");
  CHECK(message("1,,2") != "no error");
}

TEST_CASE("Permutation rejects non-bijections") {
  CHECK_THROWS_AS(Permutation({}), DomainError);
  CHECK_THROWS_AS(Permutation({1, 1}), DomainError);
  CHECK_THROWS_AS(Permutation({2, 3}), DomainError);
}

TEST_CASE("contains_pattern examples") {
  CHECK_FALSE(contains_pattern(P("798645312"), P("123")));
  CHECK(contains_pattern(P("132"), P("12")));
  CHECK_FALSE(contains_pattern(P("2413"), P("3142")));
  CHECK_FALSE(contains_pattern(P("12"), P("123")));
  CHECK(contains_pattern(P("2413"), P("2413")));
}

TEST_CASE("contains_pattern agrees with the subsequence oracle") {
  std::vector<Permutation> taus;
  for (std::size_t m = 1; m <= 4; ++m)
    for (auto& t : all_permutations(m)) taus.push_back(t);
  for (std::size_t n = 1; n <= 7; ++n) {
    for (const auto& sigma : all_permutations(n)) {
      const auto w = word(sigma);
      for (const auto& tau : taus) REQUIRE(contains_pattern(sigma, tau) == oracle::contains(w, word(tau)));
    }
  }
}

TEST_CASE("avoids_all") {
  CHECK_FALSE(avoids_all(P("2413"), PatternSet::separable()));
  CHECK(avoids_all(Permutation::identity(5), PatternSet::parse("321")));
  CHECK(avoids_all(P("798645312"), PatternSet::parse("123")));
  CHECK(avoids_all(P("4321"), PatternSet{}));
}

TEST_CASE("PatternSet parsing and canonical keys") {
  CHECK(PatternSet::parse("").empty());
  CHECK(PatternSet::parse("sep") == PatternSet::separable());
  CHECK(PatternSet::parse("SEP") == PatternSet::separable());
  CHECK(PatternSet::parse("3142+2413") == PatternSet::separable());
  CHECK(PatternSet::separable().key() == "2413+3142");
  CHECK(PatternSet::parse("321").key() == "321");
  CHECK_THROWS_AS(PatternSet::parse("321+321"), ParseError);
  CHECK_THROWS_AS(PatternSet::parse("1"), ParseError);
  CHECK_THROWS_AS(PatternSet::parse("32"), ParseError);
  CHECK_THROWS_AS(PatternSet::parse("12+"), ParseError);
  CHECK(PatternSet::parse("123").reversed() == PatternSet::parse("321"));
  CHECK(PatternSet::separable().complemented() == PatternSet::separable());
}

TEST_CASE("tight_contains") {
  CHECK(tight_contains(P("321"), P("21")));
  CHECK_FALSE(tight_contains(P("2413"), P("12")));
  CHECK_FALSE(tight_contains(P("2413"), P("21")));
  CHECK(tight_contains(P("236154"), P("12")));
  for (std::size_t m = 2; m <= 5; ++m) {
    for (const auto& tau : all_permutations(m)) {
      const auto w = word(tau);
      CHECK(tight_contains(tau, P("12")) == oracle::tight_pair(w, true));
      CHECK(tight_contains(tau, P("21")) == oracle::tight_pair(w, false));
      for (const Permutation& nu : {P("12"), P("21"), P("132"), P("213")})
        if (tight_contains(tau, nu)) CHECK(contains_pattern(tau, nu));
    }
  }
}

TEST_CASE("in_cluster_event examples") {
  CHECK(in_cluster_event(P("798645312"), {3, 4, std::nullopt}));
  CHECK(in_cluster_event(P("798645312"), {3, 4, 4}));
  CHECK(cluster_anchor(P("798645312"), 3, 4) == 4u);
  CHECK(in_cluster_event(Permutation::identity(5), {2, 1, 1}));
  CHECK_FALSE(in_cluster_event(P("2413"), {2, 1, std::nullopt}));
  CHECK_THROWS_AS(in_cluster_event(P("2413"), {4, 1, std::nullopt}), DomainError);
  CHECK_THROWS_AS(in_cluster_event(P("2413"), {1, 1, std::nullopt}), DomainError);
  CHECK_THROWS_AS(in_cluster_event(P("2413"), {2, 4, std::nullopt}), DomainError);
  CHECK_THROWS_AS(in_cluster_event(P("2413"), {2, 1, 4}), DomainError);
  CHECK_THROWS_AS(in_cluster_event(P("2413"), {2, std::nullopt, std::nullopt}), DomainError);
}

TEST_CASE("cluster events agree with the set oracle") {
  for (std::size_t n = 3; n <= 7; ++n) {
    for (const auto& sigma : all_permutations(n)) {
      const auto w = word(sigma);
      for (std::size_t l = 2; l < n; ++l) {
        REQUIRE(in_any_cluster_event(sigma, l) == oracle::any_cluster(w, l));
        for (std::size_t k = 1; k <= n - l + 1; ++k) {
          const bool any = in_cluster_event(sigma, {l, k, std::nullopt});
          REQUIRE(any == oracle::cluster(w, l, k));
          for (std::size_t a = 1; a <= n - l + 1; ++a) {
            const bool at = in_cluster_event(sigma, {l, k, a});
            REQUIRE(at == oracle::cluster_at(w, l, k, a));
            if (at) REQUIRE(any);
          }
        }
      }
    }
  }
}

TEST_CASE("in_any_cluster_event examples") {
  CHECK_FALSE(in_any_cluster_event(P("2413"), 2));
  CHECK(in_any_cluster_event(Permutation::identity(4), 3));
  CHECK_FALSE(in_any_cluster_event(P("3142"), 2));
  CHECK_FALSE(in_any_cluster_event(P("3142"), 3));
  CHECK_THROWS_AS(in_any_cluster_event(P("3142"), 4), DomainError);
}

TEST_CASE("cluster-free permutations") {
  CHECK(is_cluster_free(P("2413")));
  CHECK(is_cluster_free(P("3142")));
  CHECK(is_cluster_free(P("1")));
  CHECK(is_cluster_free(P("21")));
  CHECK_FALSE(is_cluster_free(P("236154")));
  for (const auto& tau : all_permutations(3)) CHECK_FALSE(is_cluster_free(tau));

  std::vector<Permutation> free4, free5;
  for (const auto& t : all_permutations(4))
    if (is_cluster_free(t)) free4.push_back(t);
  for (const auto& t : all_permutations(5)) {
    REQUIRE(is_cluster_free(t) == oracle::cluster_free(word(t)));
    if (is_cluster_free(t)) free5.push_back(t);
  }
  CHECK(free4 == std::vector<Permutation>{P("2413"), P("3142")});
  CHECK(free5.size() == 6);
}

TEST_CASE("conditions") {
  CHECK(check_conditions(P("123")).c2);
  const ConditionReport r = check_conditions(P("236154"));
  CHECK(r.c3);
  CHECK(r.tight12);
  CHECK(r.tight21);
  CHECK_FALSE(r.c1);
  const ConditionReport s = check_conditions(P("2413"));
  CHECK(s.c1);
  CHECK_FALSE(s.tight12);
  CHECK_FALSE(s.tight21);
  CHECK(s.cluster_free);
  CHECK_FALSE(s.c2);

  for (std::size_t m = 2; m <= 6; ++m) {
    for (const auto& tau : all_permutations(m)) {
      const ConditionReport c = check_conditions(tau);
      REQUIRE(c.c1 == !(c.tight12 && c.tight21));
      if (c.cluster_free) REQUIRE(c.c1);
      REQUIRE(c.c2 == (tau.at(1) == 1 || tau.at(1) == m || tau.at(m) == 1 || tau.at(m) == m));
      if (c.c3) REQUIRE(m >= 6);
    }
  }
}

TEST_CASE("separability") {
  CHECK_FALSE(is_separable(P("2413")));
  CHECK(is_separable(Permutation::identity(6)));
  const auto s4 = all_permutations(4);
  CHECK(std::count_if(s4.begin(), s4.end(), [](const Permutation& p) { return is_separable(p); }) == 22);
}

TEST_CASE("reverse and complement") {
  CHECK(reverse(P("123")) == P("321"));
  CHECK(complement(P("2413")) == P("3142"));
  CHECK(inverse(P("2413")) == P("3142"));
  for (const auto& s : all_permutations(5)) {
    CHECK(reverse(reverse(s)) == s);
    CHECK(complement(complement(s)) == s);
    CHECK(complement(reverse(complement(reverse(s)))) == s);
  }
}

TEST_CASE("symmetries act on cluster events as expected") {
  for (std::size_t n = 3; n <= 7; ++n) {
    for (const auto& s : all_permutations(n)) {
      for (std::size_t l = 2; l < n; ++l) {
        for (std::size_t k = 1; k <= n - l + 1; ++k) {
          const bool in = in_cluster_event(s, {l, k, std::nullopt});
          REQUIRE(in == in_cluster_event(reverse(s), {l, k, std::nullopt}));
          REQUIRE(in == in_cluster_event(complement(s), {l, n - k - l + 2, std::nullopt}));
        }
      }
      REQUIRE(avoids_all(s, PatternSet::parse("123")) == avoids_all(reverse(s), PatternSet::parse("321")));
    }
  }
}

#include <doctest.h>

#include <algorithm>

#include "covlab/ed_family.hpp"
#include "oracles.hpp"

using namespace covlab;

TEST_CASE("ed_covers") {
  CHECK(ed_covers({0, 0}, {1, 1}));
  CHECK_FALSE(ed_covers({0, 1}, {0, 2}));
  CHECK(ed_covers({1, 2, 0}, {0, 1, 2}));
  CHECK_THROWS_AS(ed_covers({0}, {0, 1}), std::invalid_argument);
}

TEST_CASE("verify_family: diagonal covers, complements refute") {
  EDFamily diag(Profile({3, 3}), {{0, 0}, {1, 1}, {2, 2}});
  diag = verify_family(diag);
  CHECK(diag.status == FamilyStatus::VerifiedCovering);

  EDFamily two(Profile({2, 2}), {{0, 0}, {1, 1}});
  two = verify_family(two);
  CHECK(two.status == FamilyStatus::Refuted);
  REQUIRE(two.refutation.has_value());
  CHECK(*two.refutation == Seq{0, 1});  // lexicographically least uncovered

  EDFamily single(Profile({2}), {{0}, {1}});
  single = verify_family(single);
  CHECK(single.status == FamilyStatus::VerifiedCovering);
}

TEST_CASE("verify_family sampling requires a seed and reports sampled") {
  Profile big(std::vector<int>(10, 11));  // 11^10, beyond a small budget
  std::vector<Seq> members;
  // 11 constants over 10 coordinates cover by pigeonhole
  for (int j = 0; j < 11; ++j) members.emplace_back(10, j);
  EDFamily fam(big, members);
  VerifyOptions opts;
  opts.budget = 1000;
  CHECK_THROWS_AS(verify_family(fam, opts), RefusalError);
  opts.seed = 99;
  opts.samples = 2000;
  EDFamily out = verify_family(fam, opts);
  CHECK(out.status == FamilyStatus::SampledOk);
  CHECK(out.sample_seed == 99);
}

TEST_CASE("eq_lower_bound") {
  CHECK(eq_lower_bound(Profile({3, 3})).counting_lb == 3);
  CHECK(eq_lower_bound(Profile({4, 4, 4})).counting_lb == 3);
  CHECK(eq_lower_bound(Profile({2, 2})).counting_lb == 4);
  CHECK(eq_lower_bound(Profile({3, 3})).pair_lb == 3);
  CHECK(eq_lower_bound(Profile({5})).pair_lb == 2);
}

TEST_CASE("eq_exact on the small profiles") {
  auto exact = [](std::vector<int> sizes) {
    EqResult r = eq_exact(Profile(std::move(sizes)));
    REQUIRE(r.bounds.exact.has_value());
    REQUIRE(r.family.has_value());
    CHECK(r.family->status == FamilyStatus::VerifiedCovering);
    CHECK(r.family->size() == *r.bounds.exact);
    return *r.bounds.exact;
  };
  CHECK(exact({2, 2}) == 4);
  CHECK(exact({3, 3}) == 3);
  CHECK(exact({4, 4}) == 3);
  CHECK(exact({3}) == 2);
  CHECK(exact({2, 2, 2}) == 8);
  CHECK(exact({3, 3, 3}) == 5);
}

TEST_CASE("eq_exact agrees with the no-symmetry oracle on spaces <= 27") {
  for (std::vector<int> sizes :
       {std::vector<int>{2}, {3}, {4}, {2, 2}, {2, 3}, {3, 3}, {2, 2, 2}, {4, 4}, {5, 5},
        {2, 2, 3}, {3, 3, 3}, {2, 3, 4}}) {
    Profile p(sizes);
    if (p.cardinality() > 27) continue;
    EqResult r = eq_exact(p);
    REQUIRE(r.bounds.exact.has_value());
    auto oracle = oracle::eq_exact_nosym(p);
    REQUIRE(oracle.has_value());
    CHECK(*r.bounds.exact == *oracle);
  }
}

TEST_CASE("eq_exact budget refusal returns bounds only") {
  EqResult r = eq_exact(Profile({4, 4, 4, 4, 4, 4, 4, 4, 4, 4}), 1000);
  CHECK_FALSE(r.bounds.exact.has_value());
  CHECK_FALSE(r.family.has_value());
  CHECK(r.bounds.counting_lb >= 1);
}

TEST_CASE("eq_greedy is deterministic and verified") {
  EDFamily g33 = eq_greedy(Profile({3, 3}));
  CHECK(g33.status == FamilyStatus::VerifiedCovering);
  CHECK(g33.size() <= 4);
  CHECK(eq_greedy(Profile({3, 3})).members == g33.members);

  CHECK(eq_greedy(Profile({2})).size() == 2);

  EDFamily g555 = eq_greedy(Profile({5, 5, 5}));
  CHECK(g555.status == FamilyStatus::VerifiedCovering);
  CHECK(g555.size() >= 1);
}

TEST_CASE("diagonal_family") {
  EDFamily f = diagonal_family(4, 3);
  CHECK(f.size() == 4);
  CHECK(f.status == FamilyStatus::VerifiedCovering);
  CHECK(diagonal_family(2, 1).size() == 2);
  CHECK_THROWS_AS(diagonal_family(3, 3), RefusalError);
}

TEST_CASE("projection closure: restriction of a covering family covers") {
  for (std::vector<int> sizes : {std::vector<int>{3, 3, 3}, {2, 2, 3}, {4, 4}}) {
    Profile p(sizes);
    EqResult r = eq_exact(p);
    REQUIRE(r.family.has_value());
    std::vector<int> head(sizes.begin(), sizes.end() - 1);
    if (head.empty()) continue;
    std::vector<Seq> restricted;
    for (const Seq& x : r.family->members)
      restricted.emplace_back(x.begin(), x.end() - 1);
    EDFamily proj(Profile(head), restricted);
    proj = verify_family(proj);
    CHECK(proj.status == FamilyStatus::VerifiedCovering);
  }
}

TEST_CASE("relabel invariance: per-coordinate bijections preserve status") {
  Rng rng(5);
  Profile p({3, 4});
  EqResult r = eq_exact(p);
  REQUIRE(r.family.has_value());
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<int>> perms;
    for (int m : p.sizes()) {
      std::vector<int> perm(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = i;
      for (int i = m - 1; i > 0; --i)
        std::swap(perm[static_cast<std::size_t>(i)],
                  perm[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i + 1)))]);
      perms.push_back(perm);
    }
    std::vector<Seq> mapped;
    for (const Seq& x : r.family->members) {
      Seq y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i)
        y[i] = perms[i][static_cast<std::size_t>(x[i])];
      mapped.push_back(y);
    }
    EDFamily fam(p, mapped);
    fam = verify_family(fam);
    CHECK(fam.status == FamilyStatus::VerifiedCovering);
  }
}

TEST_CASE("alphabet monotonicity at constant profiles (empirical)") {
  for (int n = 1; n <= 3; ++n) {
    std::uint64_t prev = 0;
    for (int m = 2; m <= 5; ++m) {
      EqResult r = eq_exact(Profile(std::vector<int>(static_cast<std::size_t>(n), m)));
      REQUIRE(r.bounds.exact.has_value());
      if (m > 2) CHECK(*r.bounds.exact <= prev);
      prev = *r.bounds.exact;
    }
  }
}

TEST_CASE("family CSV round-trip") {
  std::vector<Seq> members = {{0, 1, 2}, {2, 0, 1}};
  std::string csv = family_to_csv(members);
  CHECK(family_from_csv(csv) == members);
  CHECK(family_from_csv("# comment\n0,1\n\n1,0\n") == std::vector<Seq>{{0, 1}, {1, 0}});
}

#include <doctest.h>

#include <set>

#include "covlab/tree_relabel.hpp"

using namespace covlab;

namespace {

// depth-2 tree matching the worked relabel example:
// Sigma(.) = {10,20,30}, Sigma(10) = {11,21}, Sigma(20) = {12,22}, Sigma(30) = {13,23}
PrunedTree example_tree() {
  std::map<Seq, std::vector<int>> succ;
  succ[{}] = {10, 20, 30};
  succ[{10}] = {11, 21};
  succ[{20}] = {12, 22};
  succ[{30}] = {13, 23};
  return PrunedTree::from_map(2, succ);
}

}  // namespace

TEST_CASE("tree construction validates reachability") {
  std::map<Seq, std::vector<int>> bad;
  bad[{}] = {0};
  bad[{5}] = {1};  // 5 not a successor of the root
  CHECK_THROWS_AS(PrunedTree::from_map(2, bad), RefusalError);
}

TEST_CASE("normalize_disjoint trims a single node") {
  std::map<Seq, std::vector<int>> succ;
  succ[{}] = {0, 1, 2, 3, 4, 5};
  PrunedTree t = PrunedTree::from_map(1, succ);
  PrunedTree out = normalize_disjoint(t, 3);
  CHECK(out.sigma({}) == std::vector<int>{0, 1, 2});
  CHECK(out.is_subtree_of(t));
}

TEST_CASE("normalize_disjoint reassigns shared sibling labels") {
  std::map<Seq, std::vector<int>> succ;
  succ[{}] = {0, 1};
  succ[{0}] = {7, 8, 9};
  succ[{1}] = {7, 10, 11};  // shares 7 with its sibling
  PrunedTree t = PrunedTree::from_map(2, succ);
  PrunedTree out = normalize_disjoint(t, 2);
  CHECK(out.sigma_disjoint());
  CHECK(out.is_subtree_of(t));
  for (const auto& [node, sigma] : out.succ) CHECK(sigma.size() == 2);
}

TEST_CASE("normalize_disjoint refuses when labels run out") {
  std::map<Seq, std::vector<int>> succ;
  succ[{}] = {0, 1};
  succ[{0}] = {2, 3};
  succ[{1}] = {2, 3};  // both children fight over the same two labels
  PrunedTree t = PrunedTree::from_map(2, succ);
  CHECK_THROWS_AS(normalize_disjoint(t, 2), RefusalError);

  std::map<Seq, std::vector<int>> narrow;
  narrow[{}] = {0, 1};
  CHECK_THROWS_AS(normalize_disjoint(PrunedTree::from_map(1, narrow), 3), RefusalError);
}

TEST_CASE("relabel unfolds psi along the branch") {
  PrunedTree t = example_tree();
  PsiSystem psi = PsiSystem::standard(t, 2);
  // psi_. : 0->10, 1->20 ; psi_(10): 0->11, 1->21 ; psi_(20): 0->12, 1->22
  CHECK(relabel({0, 1}, t, psi) == Seq{10, 21});
  CHECK(relabel({1, 0}, t, psi) == Seq{20, 12});
  CHECK(relabel({0, 0}, t, psi) == Seq{10, 11});  // all-zero takes the leftmost path
}

TEST_CASE("gamma_map inverts psi and defaults to zero") {
  PrunedTree t = example_tree();
  PsiSystem psi = PsiSystem::standard(t, 2);
  CHECK(gamma_map({10, 21}, t, psi) == Seq{0, 1});
  CHECK(gamma_map({999, 998}, t, psi) == Seq{0, 0});
  // 20 sits in Sigma(.) at position 1; 11 is owned by node (10) at position 0
  CHECK(gamma_map({20, 11}, t, psi) == Seq{1, 0});
}

TEST_CASE("transfer_family: identity-like tree is a per-level bijection") {
  PrunedTree t = example_tree();
  PsiSystem psi = PsiSystem::standard(t, 2);
  EqResult r = eq_exact(Profile({2, 2}));
  REQUIRE(r.family.has_value());
  TransferResult res = transfer_family(*r.family, t, psi);
  CHECK(res.branches.size() == r.family->size());
  CHECK(res.verified);
  // distinct members map to distinct branches
  std::set<Seq> uniq(res.branches.begin(), res.branches.end());
  CHECK(uniq.size() == res.branches.size());
}

TEST_CASE("transfer refuses unverified families") {
  PrunedTree t = example_tree();
  PsiSystem psi = PsiSystem::standard(t, 2);
  EDFamily raw(Profile({2, 2}), {{0, 0}});
  CHECK_THROWS_AS(transfer_family(raw, t, psi), RefusalError);
}

TEST_CASE("depth-1 transfer fails exactly when the family fails") {
  std::map<Seq, std::vector<int>> succ;
  succ[{}] = {4, 9};
  PrunedTree t = PrunedTree::from_map(1, succ);
  PsiSystem psi = PsiSystem::standard(t, 2);
  EDFamily full(Profile({2}), {{0}, {1}});
  full = verify_family(full);
  REQUIRE(full.status == FamilyStatus::VerifiedCovering);
  CHECK(transfer_family(full, t, psi).verified);
}

TEST_CASE("lemma contradiction step over the whole label universe") {
  // if f everywhere-differs from gamma(g) then the branch of f
  // everywhere-differs from g
  std::map<Seq, std::vector<int>> succ;
  succ[{}] = {0, 1, 2};
  succ[{0}] = {10, 11, 12};
  succ[{1}] = {20, 21};
  succ[{2}] = {30, 31, 32};
  PrunedTree t = normalize_disjoint(PrunedTree::from_map(2, succ), 2);
  PsiSystem psi = PsiSystem::standard(t, 2);
  EqResult r = eq_exact(Profile({2, 2}));
  REQUIRE(r.family.has_value());

  std::vector<int> labels = t.all_labels();
  labels.push_back(labels.back() + 1);  // fresh label hits the default clause
  for (int a : labels) {
    for (int b : labels) {
      Seq g = {a, b};
      Seq gamma = gamma_map(g, t, psi);
      for (const Seq& f : r.family->members) {
        if (ed_covers(f, gamma)) {
          Seq branch = relabel(f, t, psi);
          CHECK(ed_covers(branch, g));
        }
      }
    }
  }
}

TEST_CASE("tree text round-trip") {
  PrunedTree t = example_tree();
  std::string text = t.to_text();
  PrunedTree back = PrunedTree::from_text(text);
  CHECK(back.depth == t.depth);
  CHECK(back.succ == t.succ);
  CHECK(back.to_text() == text);
}

TEST_CASE("randomized normalized trees transfer verifiably") {
  Rng rng(2026);
  int done = 0;
  for (std::uint64_t attempt = 0; done < 8 && attempt < 64; ++attempt) {
    int depth = 1 + static_cast<int>(rng.below(3));
    int width = 2 + static_cast<int>(rng.below(2));
    // random label pools; generous extras keep disjointification feasible
    std::map<Seq, std::vector<int>> succ;
    int next_label = 0;
    auto gen = [&](auto&& self, const Seq& node, int level) -> void {
      if (level >= depth) return;
      std::set<int> sigma;
      int count = width + static_cast<int>(rng.below(3));
      while (static_cast<int>(sigma.size()) < count)
        sigma.insert(next_label + static_cast<int>(rng.below(40)));
      next_label += 40;
      succ[node] = std::vector<int>(sigma.begin(), sigma.end());
      for (int a : succ[node]) {
        Seq child = node;
        child.push_back(a);
        self(self, child, level + 1);
      }
    };
    gen(gen, {}, 0);
    PrunedTree t = PrunedTree::from_map(depth, succ);
    PrunedTree norm;
    try {
      norm = normalize_disjoint(t, width);
    } catch (const RefusalError&) {
      continue;
    }
    PsiSystem psi = PsiSystem::standard(norm, width);
    EqResult r = eq_exact(Profile(std::vector<int>(static_cast<std::size_t>(depth), width)));
    REQUIRE(r.family.has_value());
    TransferResult res = transfer_family(*r.family, norm, psi);
    CHECK(res.verified);
    CHECK(res.branches.size() == r.family->size());
    ++done;
  }
  CHECK(done == 8);
}

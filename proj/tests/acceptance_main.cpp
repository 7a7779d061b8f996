// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance and time limit is pinned here.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "covlab/banach.hpp"
#include "covlab/compression.hpp"
#include "covlab/ed_family.hpp"
#include "covlab/experiment.hpp"
#include "covlab/homeo.hpp"
#include "covlab/instances.hpp"
#include "covlab/serialize.hpp"
#include "covlab/torus.hpp"
#include "covlab/tree_relabel.hpp"
#include "covlab/witness.hpp"
#include "oracles.hpp"

using namespace covlab;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::uint64_t time_limit_ms;
  std::function<bool(std::string&)> run;
};

bool require(bool cond, std::string& why, const std::string& msg) {
  if (!cond && why.empty()) why = msg;
  return cond;
}

// ---------------------------------------------------------------- 1
bool crit_eq_values(std::string& why) {
  struct Case {
    std::vector<int> sizes;
    std::uint64_t expect;
  };
  const std::vector<Case> cases = {{{2, 2}, 4}, {{3, 3}, 3}, {{4, 4}, 3}, {{3}, 2}};
  bool ok = true;
  for (const Case& c : cases) {
    auto start = std::chrono::steady_clock::now();
    Profile p(c.sizes);
    EqResult r = eq_exact(p);
    ok &= require(r.bounds.exact.has_value(), why, "exact missing for " + p.to_string());
    if (!r.bounds.exact) continue;
    ok &= require(*r.bounds.exact == c.expect, why,
                  "eq(" + p.to_string() + ") = " + std::to_string(*r.bounds.exact) +
                      ", expected " + std::to_string(c.expect));
    // independent no-symmetry oracle certifies minimality
    ok &= require(oracle::no_family_of_size(p, c.expect - 1), why,
                  "oracle found a smaller family for " + p.to_string());
    auto oracle_min = oracle::eq_exact_nosym(p, c.expect);
    ok &= require(oracle_min.has_value() && *oracle_min == c.expect, why,
                  "oracle minimum disagrees for " + p.to_string());
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    ok &= require(ms < 5000, why, "run for " + p.to_string() + " took " + std::to_string(ms) + " ms");
  }
  return ok;
}

// ---------------------------------------------------------------- 2
void profiles_up_to(std::uint64_t cap, std::vector<int>& cur, std::uint64_t prod,
                    std::vector<std::vector<int>>& out) {
  if (!cur.empty()) out.push_back(cur);
  for (int m = 2; prod * static_cast<std::uint64_t>(m) <= cap; ++m) {
    cur.push_back(m);
    profiles_up_to(cap, cur, prod * static_cast<std::uint64_t>(m), out);
    cur.pop_back();
  }
}

bool crit_lower_bounds(std::string& why) {
  std::vector<std::vector<int>> profiles;
  std::vector<int> cur;
  profiles_up_to(81, cur, 1, profiles);
  bool ok = true;
  for (const auto& sizes : profiles) {
    Profile p(sizes);
    EqResult r = eq_exact(p);
    ok &= require(r.bounds.exact.has_value(), why, "exact missing for " + p.to_string());
    if (!r.bounds.exact) continue;
    ok &= require(r.bounds.counting_lb <= *r.bounds.exact, why,
                  "counting bound exceeds exact on " + p.to_string());
  }
  EqResult r33 = eq_exact(Profile({3, 3}));
  ok &= require(r33.bounds.pair_lb == 3 && r33.bounds.exact == 3, why,
                "pair bound not tight on (3,3)");
  return ok;
}

// ---------------------------------------------------------------- 3
bool crit_tree_transfer(std::string& why) {
  Rng rng(20260810);
  int done = 0;
  std::uint64_t attempts = 0;
  bool ok = true;
  while (done < 20 && attempts < 200) {
    ++attempts;
    int depth = 1 + static_cast<int>(rng.below(3));
    int width = 2 + static_cast<int>(rng.below(2));
    std::map<Seq, std::vector<int>> succ;
    int base_label = 0;
    auto gen = [&](auto&& self, const Seq& node, int level) -> void {
      if (level >= depth) return;
      std::set<int> sigma;
      int count = width + static_cast<int>(rng.below(3));
      while (static_cast<int>(sigma.size()) < count)
        sigma.insert(base_label + static_cast<int>(rng.below(60)));
      base_label += 25;  // overlapping pools exercise disjointification
      succ[node] = std::vector<int>(sigma.begin(), sigma.end());
      for (int a : succ[node]) {
        Seq child = node;
        child.push_back(a);
        self(self, child, level + 1);
      }
    };
    gen(gen, {}, 0);
    PrunedTree tree = PrunedTree::from_map(depth, succ);
    PrunedTree norm;
    try {
      norm = normalize_disjoint(tree, width);
    } catch (const RefusalError&) {
      continue;  // label supply ran dry; draw again
    }
    PsiSystem psi = PsiSystem::standard(norm, width);
    EqResult r = eq_exact(Profile(std::vector<int>(static_cast<std::size_t>(depth), width)));
    if (!require(r.family.has_value(), why, "family missing")) return false;
    TransferResult res = transfer_family(*r.family, norm, psi);
    ok &= require(res.verified, why,
                  "transfer failed on a randomized tree (attempt " + std::to_string(attempts) +
                      ")");
    ok &= require(res.branches.size() == r.family->size(), why, "transfer changed family size");
    ++done;
  }
  ok &= require(done >= 20, why, "generated only " + std::to_string(done) + " trees");
  return ok;
}

// ---------------------------------------------------------------- 4
bool crit_soundness_sweep(std::string& why) {
  bool ok = true;
  auto run_witness = [&](const WitnessStructure& w, const std::vector<Seq>& family) {
    HypothesisReport rep = check_hypotheses(w);
    ok &= require(rep.all(), why, w.name + ": hypothesis check failed");
    CoveringCertificate cert = verify_covering(build_covering(w, family), &w);
    ok &= require(cert.status == CertStatus::Exhaustive, why,
                  w.name + ": covering not exhaustive-verified");
  };

  for (int m : {2, 3})
    for (int n : {1, 2, 3}) {
      WitnessStructure w = instantiate_lattice(m, n);
      EqResult r = eq_exact(Profile(std::vector<int>(static_cast<std::size_t>(n), m)));
      if (!require(r.family.has_value(), why, "lattice family missing")) return false;
      run_witness(w, r.family->members);
    }

  for (int n : {2, 3}) {
    WitnessStructure w = instantiate_sym(n);
    run_witness(w, minimal_injective_family(w));
  }

  {
    BlockedProduct bp = instantiate_blocked_product({2, 2, 2, 2, 2, 2}, {2, 2, 2});
    EqResult r = eq_exact(bp.block_profile);
    if (!require(r.family.has_value(), why, "blocked family missing")) return false;
    run_witness(bp.w, blocked_branches(bp, *r.family));
  }

  for (int bits : {2, 4, 6}) {
    TorusPipelineResult res = instantiate_dyadic_torus(bits, {bits});
    ok &= require(res.cert.status == CertStatus::Exhaustive, why,
                  "torus single-block covering failed at bits " + std::to_string(bits));
  }
  {
    TorusPipelineResult res = instantiate_dyadic_torus(6, {3, 3});
    ok &= require(res.cert.status == CertStatus::Exhaustive, why, "torus (3,3) covering failed");
  }

  // deliberately corrupted witnesses refute with replayable witnesses
  {
    WitnessStructure bad = corrupt_fatten_b(instantiate_lattice(3, 3));
    HypothesisReport rep = check_hypotheses(bad);
    ok &= require(!rep.h4 && rep.h4_witness.has_value(), why, "fattened B not caught by H4");
    if (rep.h4_witness) {
      // replay: the witness element lies in both product sets
      const auto& wit = *rep.h4_witness;
      const GroupModel& m = bad.model;
      auto in_product = [&](int label) {
        const auto& a = bad.a_sets[static_cast<std::size_t>(wit.level)].at(label);
        const auto& b = bad.b_sets[static_cast<std::size_t>(wit.level)];
        for (Elem x : a)
          for (Elem y : b)
            if (m.op(x, y) == wit.element) return true;
        return false;
      };
      ok &= require(in_product(wit.label_i) && in_product(wit.label_j), why,
                    "H4 witness does not replay");
    }
  }
  {
    WitnessStructure bad = corrupt_noninjective_branch(instantiate_sym(3));
    HypothesisReport rep = check_hypotheses(bad);
    ok &= require(!rep.h2 && rep.h2_witness_branch.has_value(), why,
                  "non-injective branch not caught by H2");
    if (rep.h2_witness_branch) {
      // replay: the branch intersection is empty
      const GroupModel& m = bad.model;
      std::size_t count = 0;
      for (Elem e = 0; e < m.size(); ++e) {
        bool inside = true;
        for (int k = 0; k < bad.levels && inside; ++k) {
          const auto& level = bad.a_sets[static_cast<std::size_t>(k)];
          auto it = level.find((*rep.h2_witness_branch)[static_cast<std::size_t>(k)]);
          inside = it != level.end() &&
                   std::binary_search(it->second.begin(), it->second.end(), e);
        }
        if (inside) ++count;
      }
      ok &= require(count == 0, why, "H2 witness branch intersection not empty on replay");
    }
  }
  return ok;
}

// ---------------------------------------------------------------- 5
bool crit_sym_minimality(std::string& why) {
  WitnessStructure w = instantiate_sym(3);
  const GroupModel& model = w.model;
  std::vector<Seq> branches = w.tree.branches();
  bool ok = require(branches.size() == 6, why, "expected 6 injective label sequences");

  // independent oracle: direct covering test, no certificate machinery
  auto direct_covers = [&](const std::vector<Seq>& family) {
    for (Elem e = 0; e < model.size(); ++e) {
      Seq p = model.coords(e);
      bool hit = false;
      for (const Seq& b : family) {
        bool all_diff = true;
        for (int k = 0; k < 3; ++k)
          if (p[static_cast<std::size_t>(2 * k)] == 2 * b[static_cast<std::size_t>(k)])
            all_diff = false;
        if (all_diff) {
          hit = true;
          break;
        }
      }
      if (!hit) return false;
    }
    return true;
  };

  std::size_t minimal = 0;
  for (std::size_t k = 1; k <= branches.size() && minimal == 0; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::vector<Seq> family;
      for (std::size_t i : idx) family.push_back(branches[i]);
      if (direct_covers(family)) {
        minimal = k;
        break;
      }
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == branches.size() - (k - i) - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  ok &= require(minimal == 4, why,
                "oracle minimal size " + std::to_string(minimal) + ", expected 4");

  std::vector<Seq> fam = minimal_injective_family(w);
  ok &= require(fam.size() == 4, why, "engine family size differs from 4");
  // parity obstruction: two even and two odd label permutations
  int even = 0, odd = 0;
  for (const Seq& b : fam) {
    int inv = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        if (b[i] > b[j]) ++inv;
    (inv % 2 == 0 ? even : odd)++;
  }
  ok &= require(even == 2 && odd == 2, why, "family does not split 2 even + 2 odd");
  return ok;
}

// ---------------------------------------------------------------- 6
bool crit_torus(std::string& why) {
  bool ok = true;
  for (int bits = 1; bits <= 10; ++bits) {
    PairingCheck c = check_pairing(bits);  // single block of every length
    ok &= require(c.ok(), why, "pairing check failed at block length " + std::to_string(bits));
    for (int a = 1; a < bits; ++a) {
      PairingCheck left = check_pairing(a);
      PairingCheck right = check_pairing(bits - a);
      ok &= require(left.ok() && right.ok(), why, "two-block pairing check failed");
    }
  }
  for (int bits = 2; bits <= 8; ++bits) {
    TorusPipelineResult res = instantiate_dyadic_torus(bits, {bits});
    ok &= require(res.cert.status == CertStatus::Exhaustive, why,
                  "single-block covering failed at bits " + std::to_string(bits));
    for (int a = 2; a <= bits - 2; ++a) {
      TorusPipelineResult split = instantiate_dyadic_torus(bits, {a, bits - a});
      ok &= require(split.cert.status == CertStatus::Exhaustive, why,
                    "two-block covering failed at bits " + std::to_string(bits) + " split " +
                        std::to_string(a));
    }
  }
  return ok;
}

// ---------------------------------------------------------------- 7
bool crit_homeo(std::string& why) {
  IntervalScheme scheme(3, 2);
  const std::vector<Seq> branches = {{0, 0}, {1, 0},  {0, 1},  {1, -2}, {-1, 1},
                                     {2, 2}, {-2, -2}, {1, 1}, {-1, -1}, {2, -1}};
  bool ok = require(branches.size() == 10, why, "need 10 branches");
  for (const Seq& b : branches) {
    BranchHomeoResult built = branch_to_homeo(scheme, b);
    BranchContainmentReport rep = check_branch_containment(scheme, b, built);
    ok &= require(rep.failed == 0, why, "containment failed on branch " + join(b));
    // every level carries at least one verified containment
    for (int k = 0; k < scheme.depth(); ++k) {
      bool level_verified = false;
      for (const auto& chk : rep.checks)
        if (static_cast<int>(chk.stem.size()) == k + 1 && chk.status == ContainStatus::Verified)
          level_verified = true;
      ok &= require(level_verified, why,
                    "no verified containment at level " + std::to_string(k) + " for branch " +
                        join(b));
    }
  }
  BranchHomeoResult id = branch_to_homeo(scheme, {0, 0});
  ok &= require(id.homeo.is_identity(), why, "zero branch is not the identity");

  // exactness is carried by the type: the scheme and maps hold cpp_rational
  static_assert(std::is_same_v<Rational, boost::multiprecision::cpp_rational>);

  LiftCheck lift = lift_product(branch_to_homeo(scheme, {1, -2}).homeo, 32);
  ok &= require(lift.grid_points == 1024 && lift.intertwines && lift.preserves_second, why,
                "lift intertwining failed on the 32x32 grid");
  return ok;
}

// ---------------------------------------------------------------- 8
CompressResult shipped_compress() {
  GroupModel m = GroupModel::product({2, 2, 2, 2}, 2);
  ElemList piece = {m.from_coords({0, 0, 0, 0}), m.from_coords({1, 1, 1, 1})};
  return compress(CompressionInstance::translation(m, {GradedNwdSet::of(2, piece)}));
}

RearrangeResult shipped_rearrange() {
  GroupModel m = GroupModel::product({2, 2, 2, 2}, 2);
  auto elem = [&](const Seq& c) { return m.from_coords(c); };
  RearrangementInstance inst = RearrangementInstance::make(
      m, {0, 0},
      {elem({0, 0, 0, 0}), elem({0, 1, 0, 0}), elem({1, 0, 0, 0}), elem({1, 1, 0, 0})},
      {elem({0, 0, 0, 1}), elem({0, 1, 1, 0}), elem({1, 0, 1, 1}), elem({1, 1, 0, 0})},
      {GradedNwdSet::of(2, {elem({0, 0, 1, 1}), elem({0, 1, 1, 0})}),
       GradedNwdSet::of(2, {elem({1, 0, 1, 1}), elem({1, 1, 1, 0})})});
  return rearrange(inst);
}

bool crit_compress_rearrange(std::string& why) {
  bool ok = true;
  CompressResult a = shipped_compress();
  ok &= require(a.replay_ok, why, "compress trace replay failed");
  ok &= require(a.postcondition_ok, why, "compress postcondition failed");
  ok &= require(a.c_graded_nwd, why, "compress output set not graded nwd");
  CompressResult b = shipped_compress();
  bool identical = a.trace.size() == b.trace.size() && a.c.elems == b.c.elems &&
                   a.y_all == b.y_all;
  for (std::size_t i = 0; identical && i < a.trace.size(); ++i)
    identical = a.trace[i].u == b.trace[i].u && a.trace[i].reserved == b.trace[i].reserved &&
                a.trace[i].y == b.trace[i].y;
  ok &= require(identical, why, "compress trace not bit-identical across runs");

  RearrangeResult r = shipped_rearrange();
  ok &= require(r.pieces_disjoint, why, "rearranged pieces not disjoint");
  ok &= require(r.inclusions_ok, why, "rearrange inclusion C_m in QC failed");
  ok &= require(r.c_graded_nwd, why, "rearranged set not graded nwd");
  return ok;
}

// ---------------------------------------------------------------- 9
CoveringCertificate base_cert_z2_2() {
  WitnessStructure w = instantiate_lattice(2, 2);
  EqResult r = eq_exact(Profile({2, 2}));
  return verify_covering(build_covering(w, r.family->members), &w);
}

bool crit_pullback(std::string& why) {
  bool ok = true;
  CoveringCertificate cert = base_cert_z2_2();
  ok &= require(cert.status == CertStatus::Exhaustive, why, "base certificate not verified");

  Homomorphism mod2 = hom_mod(GroupModel::product({4, 4}, 1), GroupModel::product({2, 2}, 1));
  CoveringCertificate up = pullback_covering(mod2, cert);
  ok &= require(up.status == CertStatus::Exhaustive, why, "mod-2 pullback not verified");
  ok &= require(up.translators.size() == cert.translators.size(), why,
                "mod-2 pullback changed the translator count");

  Homomorphism proj =
      hom_project(GroupModel::product({2, 2, 2}, 1), GroupModel::product({2, 2}, 1));
  CoveringCertificate up2 = pullback_covering(proj, cert);
  ok &= require(up2.status == CertStatus::Exhaustive, why, "projection pullback not verified");
  ok &= require(up2.translators.size() == cert.translators.size(), why,
                "projection pullback changed the translator count");

  Homomorphism ident = hom_identity(GroupModel::product({2, 2}, 1));
  CoveringCertificate same = pullback_covering(ident, cert);
  ok &= require(same.translators == cert.translators &&
                    same.closed_set.elems == cert.closed_set.elems,
                why, "identity pullback altered the certificate");
  return ok;
}

// ---------------------------------------------------------------- 10
bool crit_determinism(std::string& why) {
  auto snapshot = [] {
    std::vector<std::string> parts;
    {
      WitnessStructure w = instantiate_lattice(3, 3);
      EqResult r = eq_exact(Profile({3, 3, 3}));
      parts.push_back(certificate_to_json(verify_covering(build_covering(w, r.family->members), &w)));
    }
    {
      WitnessStructure w = instantiate_sym(3);
      parts.push_back(
          certificate_to_json(verify_covering(build_covering(w, minimal_injective_family(w)), &w)));
    }
    {
      BlockedProduct bp = instantiate_blocked_product({2, 2, 2, 2, 2, 2}, {2, 2, 2});
      EqResult r = eq_exact(bp.block_profile);
      parts.push_back(certificate_to_json(
          verify_covering(build_covering(bp.w, blocked_branches(bp, *r.family)), &bp.w)));
    }
    parts.push_back(certificate_to_json(instantiate_dyadic_torus(6, {3, 3}).cert));
    parts.push_back(certificate_to_json(
        pullback_covering(hom_mod(GroupModel::product({4, 4}, 1), GroupModel::product({2, 2}, 1)),
                          base_cert_z2_2())));
    {
      BanachInstance inst = make_banach({1, 1}, {Rational(1, 2), Rational(1, 4)});
      BanachCoverReport rep = banach_sampled_covering(inst, 99, 1000);
      std::ostringstream os;
      os << rep.failures << ";" << rep.translators.size();
      for (const auto& v : rep.translators)
        for (const auto& c : v) os << "," << rational_to_string(c);
      parts.push_back(os.str());
    }
    std::string all;
    for (const auto& p : parts) all += p + "\n---\n";
    return all;
  };
  std::string first = snapshot();
  std::string second = snapshot();
  return require(first == second, why, "repeated runs produced different certificate bytes");
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "eq exact values with oracle-certified minimality", 20000, crit_eq_values},
      {2, "lower-bound soundness over all spaces <= 3^4", 60000, crit_lower_bounds},
      {3, "tree transfer on 20 randomized normalized trees", 60000, crit_tree_transfer},
      {4, "witness soundness sweep with corrupted refutations", 300000, crit_soundness_sweep},
      {5, "S_6 reduced-family minimality equals 4", 60000, crit_sym_minimality},
      {6, "dyadic torus pairing and coverings", 60000, crit_torus},
      {7, "interval scheme containments, identity and lift", 30000, crit_homeo},
      {8, "compression and rearrangement postconditions", 60000, crit_compress_rearrange},
      {9, "pullback certificates through shipped homomorphisms", 30000, crit_pullback},
      {10, "byte-identical certificates across repeated runs", 120000, crit_determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string why;
    bool ok = false;
    try {
      ok = c.run(why);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    if (ok && static_cast<std::uint64_t>(ms) >= c.time_limit_ms) {
      ok = false;
      why = "time limit " + std::to_string(c.time_limit_ms) + " ms exceeded";
    }
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << c.number << ": " << c.title
              << " (" << ms << " ms)";
    if (!ok) std::cout << " -- " << why;
    std::cout << "\n";
    if (!ok) ++failures;
  }
  std::cout << "RESULT: " << (criteria.size() - static_cast<std::size_t>(failures)) << "/"
            << criteria.size() << " criteria passed\n";
  return failures;
}

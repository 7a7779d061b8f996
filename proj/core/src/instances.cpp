#include "covlab/instances.hpp"

#include <algorithm>
#include <stdexcept>

namespace covlab {

WitnessStructure instantiate_lattice(int m, int n) {
  if (m < 2 || n < 1) throw RefusalError("lattice needs m >= 2, n >= 1");
  WitnessStructure w;
  w.name = "lattice m=" + std::to_string(m) + " n=" + std::to_string(n);
  w.model = GroupModel::product(std::vector<int>(static_cast<std::size_t>(n), m), n - 1 > 0 ? n - 1 : 0);
  w.levels = n;
  w.grade = w.model.grade();
  for (int k = 0; k < n; ++k) {
    std::map<int, ElemList> level;
    for (int j = 0; j < m; ++j) level[j] = {};
    for (Elem e = 0; e < w.model.size(); ++e) {
      Seq x = w.model.coords(e);
      level[x[static_cast<std::size_t>(k)]].push_back(e);
    }
    w.b_sets.push_back(level[0]);
    w.a_sets.push_back(std::move(level));
  }
  w.tree = PrunedTree::full(std::vector<int>(static_cast<std::size_t>(n), m));
  return w;
}

WitnessStructure instantiate_sym(int n) {
  if (n < 2) throw RefusalError("symmetric instantiation needs n >= 2");
  WitnessStructure w;
  int degree = 2 * n;
  w.name = "sym n=" + std::to_string(n) + " (S_" + std::to_string(degree) + ")";
  int grade = n - 2;  // deepest grade at which the finite level supply keeps
                      // the union of the B_k dense
  w.model = GroupModel::symmetric(degree, grade);
  w.levels = n;
  w.grade = grade;
  for (int k = 0; k < n; ++k) {
    std::map<int, ElemList> level;
    for (int j = 0; j < n; ++j) level[j] = {};
    for (Elem e = 0; e < w.model.size(); ++e) {
      Seq p = w.model.coords(e);
      int v = p[static_cast<std::size_t>(2 * k)];
      if (v % 2 == 0) level[v / 2].push_back(e);
    }
    w.b_sets.push_back(level[k]);
    w.a_sets.push_back(std::move(level));
  }
  w.tree = PrunedTree::injective(n, n);
  return w;
}

Seq sym_branch_completion(int n, const Seq& branch) {
  int degree = 2 * n;
  Seq p(static_cast<std::size_t>(degree), -1);
  std::vector<bool> used(static_cast<std::size_t>(degree), false);
  for (int k = 0; k < n; ++k) {
    int v = 2 * branch[static_cast<std::size_t>(k)];
    if (v < 0 || v >= degree || used[static_cast<std::size_t>(v)])
      throw RefusalError("branch does not extend to a permutation: " + join(branch));
    p[static_cast<std::size_t>(2 * k)] = v;
    used[static_cast<std::size_t>(v)] = true;
  }
  for (int i = 0; i < degree; ++i) {
    if (p[static_cast<std::size_t>(i)] >= 0) continue;
    for (int v = 0; v < degree; ++v) {
      if (!used[static_cast<std::size_t>(v)]) {
        p[static_cast<std::size_t>(i)] = v;
        used[static_cast<std::size_t>(v)] = true;
        break;
      }
    }
  }
  return p;
}

std::vector<Seq> minimal_injective_family(const WitnessStructure& sym_w) {
  std::vector<Seq> branches = sym_w.tree.branches();
  std::vector<std::size_t> pick;
  // combinations of branch indices, sizes ascending, lexicographic
  auto try_family = [&](const std::vector<std::size_t>& idx) {
    std::vector<Seq> fam;
    for (std::size_t i : idx) fam.push_back(branches[i]);
    CoveringCertificate cert = build_covering(sym_w, fam);
    cert = verify_covering(cert);
    return cert.status == CertStatus::Exhaustive;
  };
  for (std::size_t k = 1; k <= branches.size(); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      if (try_family(idx)) {
        std::vector<Seq> fam;
        for (std::size_t i : idx) fam.push_back(branches[i]);
        return fam;
      }
      // next combination
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == branches.size() - (k - i) - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  throw std::logic_error("no injective family covers; hypotheses should forbid this");
}

BlockedProduct instantiate_blocked_product(const std::vector<int>& sizes,
                                           const std::vector<int>& block_lengths) {
  int total = 0;
  for (int l : block_lengths) {
    if (l < 1) throw RefusalError("empty block");
    total += l;
  }
  if (total != static_cast<int>(sizes.size()))
    throw RefusalError("blocks must partition the coordinate range");

  BlockedProduct bp{WitnessStructure{}, {}, Profile({2})};
  int start = 0;
  std::vector<int> pattern_counts;
  for (int l : block_lengths) {
    bp.blocks.emplace_back(start, start + l);
    std::uint64_t cnt = 1;
    for (int i = start; i < start + l; ++i)
      cnt *= static_cast<std::uint64_t>(sizes[static_cast<std::size_t>(i)]);
    if (cnt < 2) throw RefusalError("block pattern count must be >= 2");
    if (cnt > (1u << 20)) throw RefusalError("block pattern count too large");
    pattern_counts.push_back(static_cast<int>(cnt));
    start += l;
  }
  bp.block_profile = Profile(pattern_counts);

  WitnessStructure& w = bp.w;
  int levels = static_cast<int>(block_lengths.size());
  int grade = bp.blocks.back().first;  // start of the last block
  w.name = "blocked product:" + join(sizes) + " blocks=" + join(block_lengths);
  w.model = GroupModel::product(sizes, grade);
  w.levels = levels;
  w.grade = grade;

  for (int k = 0; k < levels; ++k) {
    auto [bs, be] = bp.blocks[static_cast<std::size_t>(k)];
    std::map<int, ElemList> level;
    for (int j = 0; j < pattern_counts[static_cast<std::size_t>(k)]; ++j) level[j] = {};
    for (Elem e = 0; e < w.model.size(); ++e) {
      Seq x = w.model.coords(e);
      std::uint64_t idx = 0;
      for (int i = bs; i < be; ++i)
        idx = idx * static_cast<std::uint64_t>(sizes[static_cast<std::size_t>(i)]) +
              static_cast<std::uint64_t>(x[static_cast<std::size_t>(i)]);
      level[static_cast<int>(idx)].push_back(e);
    }
    w.b_sets.push_back(level[0]);  // identity pattern has index 0
    w.a_sets.push_back(std::move(level));
  }
  w.tree = PrunedTree::full(pattern_counts);
  return bp;
}

std::vector<Seq> blocked_branches(const BlockedProduct& bp, const EDFamily& family) {
  if (!(family.profile == bp.block_profile))
    throw RefusalError("family profile must match the block profile");
  return family.members;
}

CoveringToEdResult covering_to_ed(const CoveringCertificate& cert, const BlockedProduct& bp) {
  if (cert.status != CertStatus::Exhaustive)
    throw RefusalError("reverse reduction requires an exhaustively verified certificate");
  const GroupModel& m = bp.w.model;

  // per block an avoided pattern whose cylinder misses C
  std::vector<int> avoided;
  for (std::size_t n = 0; n < bp.blocks.size(); ++n) {
    auto [bs, be] = bp.blocks[n];
    int patterns = bp.block_profile.size_at(static_cast<int>(n));
    std::optional<int> found;
    for (int pat = 0; pat < patterns && !found; ++pat) {
      bool disjoint = true;
      for (Elem e = 0; e < m.size() && disjoint; ++e) {
        if (!cert.closed_set.contains(e)) continue;
        Seq x = m.coords(e);
        std::uint64_t idx = 0;
        for (int i = bs; i < be; ++i)
          idx = idx * static_cast<std::uint64_t>(m.moduli()[static_cast<std::size_t>(i)]) +
                static_cast<std::uint64_t>(x[static_cast<std::size_t>(i)]);
        if (static_cast<int>(idx) == pat) disjoint = false;
      }
      if (disjoint) found = pat;
    }
    if (!found)
      throw RefusalError("no avoided pattern in block " + std::to_string(n) +
                         "; the closed set is too large for the reduction at this grade");
    avoided.push_back(*found);
  }

  // pattern arithmetic within one block
  auto block_pattern = [&](Elem e, std::size_t n) {
    auto [bs, be] = bp.blocks[n];
    Seq x = m.coords(e);
    std::uint64_t idx = 0;
    for (int i = bs; i < be; ++i)
      idx = idx * static_cast<std::uint64_t>(m.moduli()[static_cast<std::size_t>(i)]) +
            static_cast<std::uint64_t>(x[static_cast<std::size_t>(i)]);
    return static_cast<int>(idx);
  };
  auto pattern_mul = [&](int p, int q, std::size_t n) {
    // compose two block patterns coordinatewise
    auto [bs, be] = bp.blocks[n];
    int l = be - bs;
    Seq a(static_cast<std::size_t>(l)), b(static_cast<std::size_t>(l));
    for (int i = l - 1; i >= 0; --i) {
      int mod = m.moduli()[static_cast<std::size_t>(bs + i)];
      a[static_cast<std::size_t>(i)] = p % mod;
      p /= mod;
      b[static_cast<std::size_t>(i)] = q % mod;
      q /= mod;
    }
    std::uint64_t idx = 0;
    for (int i = 0; i < l; ++i) {
      int mod = m.moduli()[static_cast<std::size_t>(bs + i)];
      idx = idx * static_cast<std::uint64_t>(mod) +
            static_cast<std::uint64_t>((a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)]) % mod);
    }
    return static_cast<int>(idx);
  };

  std::vector<Seq> members;
  for (Elem wv : cert.translators) {
    Seq f(bp.blocks.size());
    for (std::size_t n = 0; n < bp.blocks.size(); ++n)
      f[n] = pattern_mul(block_pattern(wv, n), avoided[n], n);
    members.push_back(f);
  }
  EDFamily fam(bp.block_profile, std::move(members));
  fam = verify_family(std::move(fam));
  return CoveringToEdResult{std::move(fam), std::move(avoided)};
}

WitnessStructure corrupt_fatten_b(WitnessStructure w) {
  w.name += " [corrupt: fattened B]";
  for (int k = 0; k < w.levels; ++k) {
    auto& level = w.a_sets[static_cast<std::size_t>(k)];
    auto it0 = level.find(0);
    auto it1 = level.find(1);
    if (it0 == level.end() || it1 == level.end()) continue;
    ElemList fat = it0->second;
    fat.insert(fat.end(), it1->second.begin(), it1->second.end());
    std::sort(fat.begin(), fat.end());
    fat.erase(std::unique(fat.begin(), fat.end()), fat.end());
    w.b_sets[static_cast<std::size_t>(k)] = std::move(fat);
  }
  return w;
}

WitnessStructure corrupt_noninjective_branch(WitnessStructure w) {
  w.name += " [corrupt: non-injective branch]";
  // graft the repeated-label spine (0,0,...,0) into the tree
  Seq node{};
  for (int level = 0; level < w.tree.depth; ++level) {
    auto& sigma = w.tree.succ[node];
    if (std::find(sigma.begin(), sigma.end(), 0) == sigma.end()) {
      sigma.push_back(0);
      std::sort(sigma.begin(), sigma.end());
    }
    node.push_back(0);
  }
  return w;
}

}  // namespace covlab

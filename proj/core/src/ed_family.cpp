#include "covlab/ed_family.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace covlab {

bool ed_covers(const Seq& x, const Seq& g) {
  if (x.size() != g.size()) throw std::invalid_argument("ed_covers: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] == g[i]) return false;
  return true;
}

std::string to_string(FamilyStatus s) {
  switch (s) {
    case FamilyStatus::Unverified: return "unverified";
    case FamilyStatus::VerifiedCovering: return "verified-covering";
    case FamilyStatus::Refuted: return "refuted";
    case FamilyStatus::SampledOk: return "sampled";
  }
  return "?";
}

FamilyStatus family_status_from_string(const std::string& s) {
  if (s == "unverified") return FamilyStatus::Unverified;
  if (s == "verified-covering") return FamilyStatus::VerifiedCovering;
  if (s == "refuted") return FamilyStatus::Refuted;
  if (s == "sampled") return FamilyStatus::SampledOk;
  throw RefusalError("unknown family status: '" + s + "'");
}

EDFamily::EDFamily(Profile p, std::vector<Seq> m) : profile(std::move(p)), members(std::move(m)) {
  for (const Seq& x : members)
    if (!profile.contains(x))
      throw RefusalError("family member outside the profile space: " + join(x));
}

EDFamily verify_family(EDFamily family, const VerifyOptions& opts) {
  const Profile& p = family.profile;
  auto covered = [&](const Seq& g) {
    for (const Seq& x : family.members)
      if (ed_covers(x, g)) return true;
    return false;
  };

  if (p.cardinality() <= opts.budget) {
    family.status = FamilyStatus::VerifiedCovering;
    family.refutation.reset();
    // lexicographic scan, so a refutation carries the least uncovered g
    bool hit = false;
    try {
      enumerate_space(p, opts.budget, [&](const Seq& g) {
        if (!hit && !covered(g)) {
          family.status = FamilyStatus::Refuted;
          family.refutation = g;
          hit = true;
        }
      });
    } catch (const RefusalError&) {
      throw;  // budget already checked; re-throw defensively
    }
    return family;
  }

  if (!opts.seed)
    throw RefusalError("space of " + std::to_string(p.cardinality()) +
                       " exceeds budget " + std::to_string(opts.budget) +
                       "; sampled verification requires a seed");
  Rng rng(*opts.seed);
  family.sample_seed = opts.seed;
  family.sample_count = opts.samples;
  for (std::uint64_t t = 0; t < opts.samples; ++t) {
    Seq g = p.unrank(rng.below(p.cardinality()));
    if (!covered(g)) {
      family.status = FamilyStatus::Refuted;
      family.refutation = g;
      return family;
    }
  }
  family.status = FamilyStatus::SampledOk;
  return family;
}

BoundReport eq_lower_bound(const Profile& profile) {
  BoundReport rep;
  rep.counting_lb = ceil_div(profile.cardinality(), profile.member_coverage());
  rep.pair_lb = profile.length() >= 2 ? 3 : 2;
  return rep;
}

EDFamily eq_greedy(const Profile& profile, std::uint64_t budget) {
  std::vector<Seq> space = enumerate_space(profile, budget);
  const std::size_t n = space.size();
  std::vector<bool> covered(n, false);
  std::size_t remaining = n;
  std::vector<Seq> members;

  while (remaining > 0) {
    std::size_t best = 0, best_gain = 0;
    bool have = false;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t gain = 0;
      for (std::size_t g = 0; g < n; ++g)
        if (!covered[g] && ed_covers(space[c], space[g])) ++gain;
      if (gain > best_gain) {  // strict: keeps the lex-least argmax
        best_gain = gain;
        best = c;
        have = true;
      }
    }
    if (!have || best_gain == 0)
      throw std::logic_error("greedy stalled; profile alphabets should prevent this");
    members.push_back(space[best]);
    for (std::size_t g = 0; g < n; ++g)
      if (!covered[g] && ed_covers(space[best], space[g])) {
        covered[g] = true;
        --remaining;
      }
  }
  EDFamily fam(profile, std::move(members));
  fam = verify_family(std::move(fam), {budget, std::nullopt, 0});
  if (fam.status != FamilyStatus::VerifiedCovering)
    throw std::logic_error("greedy produced a non-covering family");
  return fam;
}

namespace {

// DFS over coverers of the least uncovered sequence, coverage tracked in
// precomputed bitmasks. Complete for families containing the fixed root
// member.
class EqSearch {
 public:
  EqSearch(const Profile& p, std::uint64_t budget)
      : p_(p), n_(p.cardinality()), max_cover_(p.member_coverage()) {
    if (n_ > kMaskCap)
      throw RefusalError("exact search supports spaces up to " + std::to_string(kMaskCap) +
                         " sequences; got " + std::to_string(n_));
    space_ = enumerate_space(p, budget);
    words_ = (n_ + 63) / 64;
    masks_.assign(n_ * words_, 0);
    coverers_.assign(n_, {});
    for (std::uint64_t i = 0; i < n_; ++i) {
      for (std::uint64_t g = 0; g < n_; ++g) {
        if (ed_covers(space_[i], space_[g])) {
          masks_[i * words_ + g / 64] |= std::uint64_t{1} << (g % 64);
          coverers_[g].push_back(static_cast<std::uint32_t>(i));
        }
      }
    }
    // a sequence's pattern on the binary coordinates pins the pattern of
    // every coverer, so demands accumulate per pattern group
    group_of_.assign(n_, 0);
    std::uint32_t groups = 1;
    std::vector<int> core_sizes;
    for (int i = 0; i < p.length(); ++i) {
      if (p.size_at(i) == 2)
        groups *= 2;
      else
        core_sizes.push_back(p.size_at(i));
    }
    n_groups_ = groups;
    if (n_groups_ > 1) {
      for (std::uint64_t g = 0; g < n_; ++g) {
        std::uint32_t id = 0;
        for (int i = 0; i < p.length(); ++i)
          if (p.size_at(i) == 2)
            id = id * 2 + static_cast<std::uint32_t>(space_[g][static_cast<std::size_t>(i)]);
        group_of_[g] = id;
      }
      core_size_ = n_ / n_groups_;
      // an untouched group is a full copy of the non-binary core, so it
      // needs at least the core's own covering number
      core_eq_ = 1;
      if (!core_sizes.empty()) {
        EqResult core = eq_exact(Profile(core_sizes), budget);
        if (core.bounds.exact) core_eq_ = *core.bounds.exact;
      }
    }
    group_counts_.assign(n_groups_, 0);
  }

  // any size-k covering family exists iff one containing all-ones exists
  // (map a coverer of the all-zero sequence to all-ones coordinatewise)
  std::optional<std::vector<Seq>> find(std::uint64_t k) {
    if (k == 0) return std::nullopt;
    scratch_.assign((k + 1) * words_, 0);
    chosen_.clear();
    Seq ones(static_cast<std::size_t>(p_.length()), 1);
    std::uint32_t root = static_cast<std::uint32_t>(p_.rank(ones));
    std::uint64_t* level0 = scratch_.data();
    const std::uint64_t* root_mask = mask_of(root);
    std::copy(root_mask, root_mask + words_, level0);
    chosen_.push_back(root);
    if (dfs(level0, n_ - popcount(level0), k)) {
      std::vector<Seq> out;
      for (std::uint32_t i : chosen_) out.push_back(space_[i]);
      return out;
    }
    chosen_.clear();
    return std::nullopt;
  }

 private:
  static constexpr std::uint64_t kMaskCap = 4096;

  const std::uint64_t* mask_of(std::uint32_t i) const { return &masks_[i * words_]; }

  std::uint64_t popcount(const std::uint64_t* covered) const {
    std::uint64_t c = 0;
    for (std::uint64_t w = 0; w < words_; ++w) c += static_cast<std::uint64_t>(__builtin_popcountll(covered[w]));
    return c;
  }

  bool dfs(const std::uint64_t* covered, std::uint64_t uncovered, std::uint64_t k) {
    if (uncovered == 0) return true;
    if (chosen_.size() >= k) return false;
    std::uint64_t slots = k - chosen_.size();
    if (uncovered > slots * max_cover_) return false;
    // group bound: a member serves one binary pattern group only, so the
    // per-group demands add
    if (n_groups_ > 1) {
      std::fill(group_counts_.begin(), group_counts_.end(), 0);
      for (std::uint64_t w = 0; w < words_; ++w) {
        std::uint64_t free_bits = ~covered[w];
        if (w + 1 == words_ && n_ % 64 != 0) free_bits &= (std::uint64_t{1} << (n_ % 64)) - 1;
        while (free_bits) {
          std::uint64_t g = w * 64 + static_cast<std::uint64_t>(__builtin_ctzll(free_bits));
          ++group_counts_[group_of_[g]];
          free_bits &= free_bits - 1;
        }
      }
      std::uint64_t demand = 0;
      for (std::uint64_t c : group_counts_) {
        std::uint64_t need = (c + max_cover_ - 1) / max_cover_;
        if (c == core_size_ && core_eq_ > need) need = core_eq_;
        demand += need;
      }
      if (demand > slots) return false;
    }
    // residual bound: no candidate can contribute more than its overlap
    // with the uncovered region
    if (slots < 4 || uncovered * 4 > slots * max_cover_ * 3) {
      std::uint64_t best = 0;
      for (std::uint64_t i = 0; i < n_ && best < max_cover_; ++i) {
        const std::uint64_t* m = mask_of(static_cast<std::uint32_t>(i));
        std::uint64_t gain = 0;
        for (std::uint64_t w = 0; w < words_; ++w)
          gain += static_cast<std::uint64_t>(__builtin_popcountll(m[w] & ~covered[w]));
        if (gain > best) best = gain;
      }
      if (uncovered > slots * best) return false;
    }

    // least uncovered sequence
    std::uint64_t g = 0;
    for (std::uint64_t w = 0; w < words_; ++w) {
      std::uint64_t free_bits = ~covered[w];
      if (w + 1 == words_ && n_ % 64 != 0) free_bits &= (std::uint64_t{1} << (n_ % 64)) - 1;
      if (free_bits) {
        g = w * 64 + static_cast<std::uint64_t>(__builtin_ctzll(free_bits));
        break;
      }
    }

    std::uint64_t* next = scratch_.data() + chosen_.size() * words_;
    for (std::uint32_t cand : coverers_[g]) {
      const std::uint64_t* m = mask_of(cand);
      std::uint64_t now_covered = 0;
      for (std::uint64_t w = 0; w < words_; ++w) {
        next[w] = covered[w] | m[w];
        now_covered += static_cast<std::uint64_t>(__builtin_popcountll(next[w]));
      }
      chosen_.push_back(cand);
      if (dfs(next, n_ - now_covered, k)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  const Profile& p_;
  std::uint64_t n_;
  std::uint64_t max_cover_;
  std::uint64_t words_ = 0;
  std::uint32_t n_groups_ = 1;
  std::uint64_t core_size_ = 0;
  std::uint64_t core_eq_ = 1;
  std::vector<Seq> space_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::vector<std::uint32_t>> coverers_;
  std::vector<std::uint32_t> group_of_;
  std::vector<std::uint64_t> group_counts_;
  std::vector<std::uint64_t> scratch_;
  std::vector<std::uint32_t> chosen_;
};

}  // namespace

EqResult eq_exact(const Profile& profile, std::uint64_t budget) {
  constexpr std::uint64_t kExactCap = 4096;  // coverage masks are quadratic in the space
  EqResult res;
  res.bounds = eq_lower_bound(profile);
  if (profile.cardinality() > budget) {
    // bounds only; exact absent
    return res;
  }
  EDFamily greedy = eq_greedy(profile, budget);
  res.bounds.greedy_ub = greedy.size();
  if (profile.cardinality() > kExactCap) return res;  // greedy bound only, exact absent

  EqSearch search(profile, budget);
  std::uint64_t lb = std::max(res.bounds.counting_lb, res.bounds.pair_lb);
  std::optional<std::vector<Seq>> found;
  std::uint64_t exact = 0;
  for (std::uint64_t k = lb; k <= greedy.size(); ++k) {
    found = search.find(k);
    if (found) {
      exact = k;
      break;
    }
  }
  if (!found) {  // greedy family is covering, so the loop must have hit
    found = greedy.members;
    exact = greedy.size();
  }
  // minimality certificate: exhaust size exact-1. The upward loop already
  // did this when exact > lb; when the search found a family at lb itself,
  // run the exhaustion once below the bound.
  if (exact == lb && exact > 1) {
    if (search.find(exact - 1))
      throw std::logic_error("lower bound claimed lb but a smaller family exists");
  }
  res.bounds.exact = exact;
  EDFamily fam(profile, *found);
  fam = verify_family(std::move(fam), {budget, std::nullopt, 0});
  if (fam.status != FamilyStatus::VerifiedCovering)
    throw std::logic_error("exact search returned a non-covering family");
  res.family = std::move(fam);
  return res;
}

EDFamily diagonal_family(int alphabet, int length) {
  if (alphabet <= length)
    throw RefusalError("diagonal family needs alphabet > length (pigeonhole); got m=" +
                       std::to_string(alphabet) + " n=" + std::to_string(length));
  Profile p(std::vector<int>(static_cast<std::size_t>(length), alphabet));
  std::vector<Seq> members;
  for (int j = 0; j < alphabet; ++j)
    members.emplace_back(static_cast<std::size_t>(length), j);
  EDFamily fam(p, std::move(members));
  fam = verify_family(std::move(fam));
  if (fam.status != FamilyStatus::VerifiedCovering)
    throw std::logic_error("diagonal family failed verification");
  return fam;
}

std::string family_to_csv(const std::vector<Seq>& members) {
  std::string out;
  for (const Seq& x : members) {
    out += join(x);
    out.push_back('\n');
  }
  return out;
}

std::vector<Seq> family_from_csv(const std::string& text) {
  std::vector<Seq> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    out.push_back(parse_int_list(line));
  }
  return out;
}

}  // namespace covlab

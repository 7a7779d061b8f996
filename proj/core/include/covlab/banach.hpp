#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "covlab/ed_family.hpp"
#include "covlab/homeo.hpp"  // Rational

namespace covlab {

// Finite coordinate blocks with the max-norm standing in for the
// unconditional-basis projections. The separated points of block k are the
// 2^{d_k} sign-corner vectors scaled by delta_k/2, so corner separation is
// exactly delta_k and smallness is delta_k/2 < delta_k. eps_k = delta_k.
struct BanachInstance {
  std::vector<int> dims;
  std::vector<Rational> deltas;
  std::vector<Rational> eps;
  std::vector<std::pair<int, int>> blocks;  // coordinate ranges [start, end)
  int total_dim = 0;
};

BanachInstance make_banach(const std::vector<int>& dims, const std::vector<Rational>& deltas);

using RatVec = std::vector<Rational>;

// Corner i of block k: coordinate j carries +delta/2 when bit j of i is set,
// -delta/2 otherwise.
RatVec banach_corner(const BanachInstance& inst, int k, int i);

Rational block_max_norm(const BanachInstance& inst, const RatVec& v, int k);

// b* = sum of the chosen corners, computed exactly as a finite sum.
RatVec banach_branch_point(const BanachInstance& inst, const Seq& branch);

struct BanachSeparationReport {
  bool smallness = false;   // all corner norms < delta_k
  bool separation = false;  // pairwise corner distance >= eps_k
  bool h4 = false;          // open eps/2 balls around distinct corners disjoint
};

// Exact rational check of the separation data behind hypothesis H4.
BanachSeparationReport banach_check_separation(const BanachInstance& inst);

struct BanachCoverReport {
  EDFamily family;                 // over the corner-count profile
  std::vector<RatVec> translators; // branch points of the family members
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::uint64_t failures = 0;      // sampled points not in X + C
  bool sampled_ok() const { return failures == 0; }
};

// The ambient space is not finitely enumerable; coverage is checked on a
// seeded rational sample and reported as sampled, never as exhaustive.
// v in X + C  iff  some branch point b* has ||P_k(v - b*)|| >= eps_k/2 at
// every block.
BanachCoverReport banach_sampled_covering(const BanachInstance& inst, std::uint64_t seed,
                                          std::uint64_t samples);

}  // namespace covlab

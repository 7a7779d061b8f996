#include "covlab/banach.hpp"

#include <stdexcept>

namespace covlab {

BanachInstance make_banach(const std::vector<int>& dims, const std::vector<Rational>& deltas) {
  if (dims.empty() || dims.size() != deltas.size())
    throw RefusalError("banach instance needs matching dims and deltas");
  BanachInstance inst;
  inst.dims = dims;
  inst.deltas = deltas;
  int start = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (dims[k] < 1) throw RefusalError("block dimension must be >= 1");
    if (dims[k] > 16) throw RefusalError("block dimension too large");
    if (!(deltas[k] > 0)) throw RefusalError("deltas must be positive rationals");
    inst.blocks.emplace_back(start, start + dims[k]);
    start += dims[k];
    inst.eps.push_back(deltas[k]);  // corner separation under the max-norm
  }
  inst.total_dim = start;
  return inst;
}

RatVec banach_corner(const BanachInstance& inst, int k, int i) {
  int d = inst.dims[static_cast<std::size_t>(k)];
  if (i < 0 || i >= (1 << d)) throw RefusalError("corner index out of range");
  RatVec v(static_cast<std::size_t>(inst.total_dim), Rational(0));
  auto [bs, be] = inst.blocks[static_cast<std::size_t>(k)];
  Rational half = inst.deltas[static_cast<std::size_t>(k)] / 2;
  for (int j = 0; j < d; ++j)
    v[static_cast<std::size_t>(bs + j)] = ((i >> j) & 1) ? half : -half;
  (void)be;
  return v;
}

Rational block_max_norm(const BanachInstance& inst, const RatVec& v, int k) {
  auto [bs, be] = inst.blocks[static_cast<std::size_t>(k)];
  Rational best(0);
  for (int j = bs; j < be; ++j) {
    Rational a = v[static_cast<std::size_t>(j)];
    if (a < 0) a = -a;
    if (a > best) best = a;
  }
  return best;
}

RatVec banach_branch_point(const BanachInstance& inst, const Seq& branch) {
  if (branch.size() != inst.dims.size())
    throw RefusalError("branch length must equal block count");
  RatVec v(static_cast<std::size_t>(inst.total_dim), Rational(0));
  for (std::size_t k = 0; k < branch.size(); ++k) {
    RatVec u = banach_corner(inst, static_cast<int>(k), branch[k]);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += u[j];
  }
  return v;
}

BanachSeparationReport banach_check_separation(const BanachInstance& inst) {
  BanachSeparationReport rep;
  rep.smallness = true;
  rep.separation = true;
  for (std::size_t k = 0; k < inst.dims.size(); ++k) {
    int corners = 1 << inst.dims[k];
    for (int i = 0; i < corners; ++i) {
      RatVec u = banach_corner(inst, static_cast<int>(k), i);
      if (!(block_max_norm(inst, u, static_cast<int>(k)) < inst.deltas[k])) rep.smallness = false;
      for (int j = i + 1; j < corners; ++j) {
        RatVec w = banach_corner(inst, static_cast<int>(k), j);
        RatVec diff(u.size());
        for (std::size_t t = 0; t < u.size(); ++t) diff[t] = u[t] - w[t];
        if (!(block_max_norm(inst, diff, static_cast<int>(k)) >= inst.eps[k]))
          rep.separation = false;
      }
    }
  }
  // distinct centers at distance >= eps with open radius-eps/2 balls cannot
  // meet, so separation is exactly the disjointness hypothesis
  rep.h4 = rep.separation;
  return rep;
}

BanachCoverReport banach_sampled_covering(const BanachInstance& inst, std::uint64_t seed,
                                          std::uint64_t samples) {
  std::vector<int> corner_counts;
  for (int d : inst.dims) corner_counts.push_back(1 << d);
  Profile profile(corner_counts);
  EqResult eq = eq_exact(profile);
  EDFamily family = eq.family ? *eq.family : eq_greedy(profile);

  BanachCoverReport rep{family, {}, seed, samples, 0};
  for (const Seq& b : family.members)
    rep.translators.push_back(banach_branch_point(inst, b));

  Rng rng(seed);
  for (std::uint64_t t = 0; t < samples; ++t) {
    // rational sample with denominator 64, coordinates in [-2, 2]
    RatVec v(static_cast<std::size_t>(inst.total_dim));
    for (auto& c : v)
      c = Rational(rng.in_range(-128, 128), 64);
    bool covered = false;
    for (const RatVec& bp : rep.translators) {
      bool all_blocks = true;
      for (std::size_t k = 0; k < inst.dims.size(); ++k) {
        RatVec diff(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) diff[j] = v[j] - bp[j];
        if (!(block_max_norm(inst, diff, static_cast<int>(k)) >= inst.eps[k] / 2)) {
          all_blocks = false;
          break;
        }
      }
      if (all_blocks) {
        covered = true;
        break;
      }
    }
    if (!covered) ++rep.failures;
  }
  return rep;
}

}  // namespace covlab

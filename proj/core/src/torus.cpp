#include "covlab/torus.hpp"

#include <algorithm>
#include <stdexcept>

namespace covlab {

std::uint32_t torus_partner(std::uint32_t pattern, int len) {
  if (len < 1 || len > 31) throw std::invalid_argument("block length out of range");
  // least j with positions > j constant (positions run MSB..LSB, 0..len-1)
  auto bit = [&](int i) { return (pattern >> (len - 1 - i)) & 1u; };
  int j = len - 1;
  for (int cand = 0; cand < len; ++cand) {
    bool constant = true;
    for (int i = cand + 2; i < len; ++i)
      if (bit(i) != bit(cand + 1)) {
        constant = false;
        break;
      }
    if (cand + 1 >= len) constant = true;
    if (constant) {
      j = cand;
      break;
    }
  }
  std::uint32_t out = pattern;
  for (int i = j; i < len; ++i) out ^= (1u << (len - 1 - i));
  return out;
}

PairingCheck check_pairing(int len) {
  PairingCheck c;
  std::uint32_t n = 1u << len;
  c.involution = true;
  c.fixed_point_free = true;
  for (std::uint32_t p = 0; p < n; ++p) {
    std::uint32_t q = torus_partner(p, len);
    if (q == p) c.fixed_point_free = false;
    if (torus_partner(q, len) != p) c.involution = false;
  }
  c.all_pairs = c.involution && c.fixed_point_free;
  return c;
}

TorusClassTable build_class_table(int len) {
  TorusClassTable t;
  t.len = len;
  std::uint32_t n = 1u << len;
  t.class_of.assign(n, -1);
  for (std::uint32_t p = 0; p < n; ++p) {
    if (t.class_of[p] >= 0) continue;
    std::uint32_t q = torus_partner(p, len);
    int idx = static_cast<int>(t.classes.size());
    t.class_of[p] = idx;
    t.class_of[q] = idx;
    t.classes.emplace_back(std::min(p, q), std::max(p, q));
  }
  for (auto [a, b] : t.classes) {
    std::uint32_t succ_a = (a + 1) & (n - 1);
    std::uint32_t succ_b = (b + 1) & (n - 1);
    if (succ_a == b)
      t.representative.push_back(a);
    else if (succ_b == a)
      t.representative.push_back(b);
    else
      throw std::logic_error("pairing classes are not successor pairs");
  }
  return t;
}

TorusPipelineResult instantiate_dyadic_torus(int bits, const std::vector<int>& block_lengths,
                                             std::uint64_t budget) {
  if (bits < 1 || bits > 20) throw RefusalError("torus bits must be in 1..20");
  int total = 0;
  for (int l : block_lengths) {
    if (l < 1) throw RefusalError("empty block");
    total += l;
  }
  if (total != bits) throw RefusalError("blocks must partition the bit range");

  TorusPipelineResult res{GroupModel::dyadic(bits, 0), {}, {}, Profile({2}), EDFamily(Profile({2}), {}), {}};
  int start = 0;
  for (int l : block_lengths) {
    res.blocks.emplace_back(start, start + l);
    start += l;
  }
  // grade: below the start of the last block every stem can still zero a block
  int grade = res.blocks.back().first;
  res.model = GroupModel::dyadic(bits, grade);

  std::vector<TorusClassTable> tables;
  for (auto [bs, be] : res.blocks) {
    int len = be - bs;
    PairingCheck c = check_pairing(len);
    if (!c.ok()) {
      res.pairing = c;
      throw std::logic_error("pairing failed the pair-partition check at block length " +
                             std::to_string(len));
    }
    tables.push_back(build_class_table(len));
  }
  res.pairing = PairingCheck{true, true, true};

  std::vector<int> phi;
  for (const auto& t : tables) {
    if (t.classes.size() < 2)
      throw RefusalError("block of a single bit has one pattern class; covering needs >= 2 "
                         "classes per block");
    phi.push_back(static_cast<int>(t.classes.size()));
  }
  res.class_profile = Profile(phi);

  EqResult eq = eq_exact(res.class_profile, budget);
  if (eq.family)
    res.class_family = *eq.family;
  else
    res.class_family = eq_greedy(res.class_profile, budget);

  auto block_bits = [&](Elem t, std::size_t n) {
    auto [bs, be] = res.blocks[n];
    return static_cast<std::uint32_t>((t >> (bits - be)) & ((1u << (be - bs)) - 1u));
  };

  ElemList translators;
  for (const Seq& y : res.class_family.members) {
    Elem t = 0;
    for (std::size_t n = 0; n < res.blocks.size(); ++n) {
      auto [bs, be] = res.blocks[n];
      t = static_cast<Elem>((t << (be - bs)) |
                            tables[n].representative[static_cast<std::size_t>(y[n])]);
    }
    translators.push_back(t);
  }

  ElemList c_elems;
  for (Elem t = 0; t < res.model.size(); ++t) {
    bool every_block_hit = true;
    for (std::size_t n = 0; n < res.blocks.size(); ++n)
      if (block_bits(t, n) == 0) {
        every_block_hit = false;
        break;
      }
    if (every_block_hit) c_elems.push_back(t);
  }

  CoveringCertificate cert;
  cert.name = "dyadic torus bits=" + std::to_string(bits) + " blocks=" + join(block_lengths);
  cert.model = res.model;
  cert.translators = std::move(translators);
  cert.closed_set = GradedNwdSet::of(grade, std::move(c_elems));
  res.cert = verify_covering(std::move(cert), nullptr, budget);
  return res;
}

}  // namespace covlab

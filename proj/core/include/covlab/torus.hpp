#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "covlab/ed_family.hpp"
#include "covlab/witness.hpp"

namespace covlab {

// Pairing of block bit-patterns (MSB first within the block): flip the
// pattern from position j onward, j the least index at which everything
// strictly above is constant. As numbers the classes come out as the
// consecutive pairs {odd, odd+1 mod 2^len}, which is exactly what makes the
// construction robust to borrows arriving from lower blocks.
std::uint32_t torus_partner(std::uint32_t pattern, int len);

struct TorusClassTable {
  int len = 0;
  std::vector<int> class_of;                              // pattern -> class index
  std::vector<std::pair<std::uint32_t, std::uint32_t>> classes;  // sorted by least member
  // the member whose successor mod 2^len stays inside the class
  std::vector<std::uint32_t> representative;
};

struct PairingCheck {
  bool involution = false;
  bool fixed_point_free = false;
  bool all_pairs = false;
  bool ok() const { return involution && fixed_point_free && all_pairs; }
};

PairingCheck check_pairing(int len);
TorusClassTable build_class_table(int len);

struct TorusPipelineResult {
  GroupModel model;                          // Z_{2^bits}
  std::vector<std::pair<int, int>> blocks;   // bit ranges, MSB first
  PairingCheck pairing;
  Profile class_profile;
  EDFamily class_family;
  CoveringCertificate cert;
};

// Full pipeline: pairing check per block (hard error on failure), class
// profile, covering family over the classes via the eq machinery, translator
// realization through the in-class representatives, exhaustive verification
// of X + C = Z_{2^bits} with C = {t : every block of t contains a set bit}.
// Blocks of a single bit collapse to one class and are refused at the family
// stage.
TorusPipelineResult instantiate_dyadic_torus(int bits, const std::vector<int>& block_lengths,
                                             std::uint64_t budget = kDefaultBudget);

}  // namespace covlab

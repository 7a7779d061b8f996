#pragma once

#include <vector>

#include "covlab/ed_family.hpp"
#include "covlab/witness.hpp"

namespace covlab {

// Z_m^n with A_k^j = {x : x(k)=j}, B_k = A_k^0, full tree of width m.
WitnessStructure instantiate_lattice(int m, int n);

// S_{2n} acting on {0..2n-1}: A_k^j = {p : p(2k)=2j}, B_k = A_k^k, tree of
// injective label sequences. Disjointness holds because the even positions
// of a product a.b with b(2k)=2k pin a(2k).
WitnessStructure instantiate_sym(int n);

// Branch completion for the symmetric instantiation: the partial injection
// 2k -> 2b(k) extended position by position with the least available image.
Seq sym_branch_completion(int n, const Seq& branch);

// Exhaustive search over families of injective label sequences, smallest
// covering family first (sizes ascending, candidate sets in lex order).
std::vector<Seq> minimal_injective_family(const WitnessStructure& sym_w);

struct BlockedProduct {
  WitnessStructure w;
  std::vector<std::pair<int, int>> blocks;  // [start, end) coordinate ranges
  Profile block_profile;                    // pattern counts per block
};

// prod Z_{sizes[i]} with coordinates partitioned into contiguous blocks.
// Level-k labels enumerate the block-k patterns lexicographically; B_k fixes
// block k to the identity pattern, so the complement is "every block
// contains a non-identity coordinate".
BlockedProduct instantiate_blocked_product(const std::vector<int>& sizes,
                                           const std::vector<int>& block_lengths);

// Realize a family over the block-profile as group elements (block n of the
// element is pattern f(n)).
std::vector<Seq> blocked_branches(const BlockedProduct& bp, const EDFamily& family);

// The reverse reduction: from an exhaustively verified certificate, recover
// a family over the block-profile that must be everywhere-different
// covering. Per block an avoided pattern with cylinder disjoint from C is
// located by search; f_w(n) indexes pattern(block n of w) * avoided(n).
struct CoveringToEdResult {
  EDFamily family;
  std::vector<int> avoided_patterns;  // per block
};
CoveringToEdResult covering_to_ed(const CoveringCertificate& cert, const BlockedProduct& bp);

// Deliberate corruptions used to exercise refutation paths.
// Fattened B: B_k := A_k^0 union A_k^1, which makes A_k^0 B_k and A_k^1 B_k
// meet (both contain elements whose level-k digit is 1).
WitnessStructure corrupt_fatten_b(WitnessStructure w);
// Tree gains a repeated-label child, creating a non-injective branch whose
// A-intersection is empty on injective instantiations.
WitnessStructure corrupt_noninjective_branch(WitnessStructure w);

}  // namespace covlab

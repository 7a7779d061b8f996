#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covlab/ed_family.hpp"
#include "covlab/profile.hpp"

namespace covlab {

// Finite-depth tree over integer labels. Nodes are label sequences; succ
// maps every node of depth < depth to its sorted successor-label set.
// "Infinite branching" is finitized to a minimum width.
struct PrunedTree {
  int depth = 0;
  std::map<Seq, std::vector<int>> succ;

  static PrunedTree from_map(int depth, std::map<Seq, std::vector<int>> succ);
  // Sigma(t) = {0..widths[|t|]-1} for every node
  static PrunedTree full(const std::vector<int>& widths);
  // Sigma(t) = labels not used along t (branches are injective sequences)
  static PrunedTree injective(int labels, int depth);

  const std::vector<int>& sigma(const Seq& node) const;
  int min_width() const;
  bool sigma_disjoint() const;
  bool is_subtree_of(const PrunedTree& other) const;
  std::vector<Seq> branches() const;
  std::vector<int> all_labels() const;  // sorted union of all Sigma(t)

  // sorted (node-stem -> Sigma list) records; "." denotes the root stem
  std::string to_text() const;
  static PrunedTree from_text(const std::string& text);
};

// Subtree with pairwise disjoint successor sets of size exactly width.
// Nodes are processed breadth-first, each taking the least labels not yet
// claimed anywhere in the output tree.
PrunedTree normalize_disjoint(const PrunedTree& tree, int width);

// Per-node bijection {0..width-1} -> a size-width subset of Sigma(t).
struct PsiSystem {
  int width = 0;
  std::map<Seq, std::vector<int>> range;  // node -> image labels, position i = psi_t(i)

  // order-preserving bijection onto the width least labels of every Sigma(t)
  static PsiSystem standard(const PrunedTree& tree, int width);
  int apply(const Seq& node, int value) const;
  std::optional<int> invert(const Seq& node, int label) const;
};

// The branch f_psi with f_psi(n) = psi_{f_psi|n}(f(n)).
Seq relabel(const Seq& f, const PrunedTree& tree, const PsiSystem& psi);

// G(k) = psi^{-1}_{s_k}(g(k)) for the unique node s_k owning label g(k)
// within psi's ranges, 0 otherwise. Total by the default clause.
Seq gamma_map(const Seq& g, const PrunedTree& tree, const PsiSystem& psi);

struct TransferResult {
  std::vector<Seq> branches;
  bool verified = false;
  std::optional<Seq> counterexample;
  std::uint64_t universe_size = 0;  // sequences over (union Sigma) + one fresh label
  int fresh_label = 0;
};

// Push a verified family over the constant width-profile into the tree and
// check exhaustively that every sequence over the label universe plus one
// fresh label is everywhere-differed by some branch.
TransferResult transfer_family(const EDFamily& fstar, const PrunedTree& tree,
                               const PsiSystem& psi,
                               std::uint64_t budget = kDefaultBudget);

}  // namespace covlab

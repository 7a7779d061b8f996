#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covlab/graded.hpp"
#include "covlab/group_model.hpp"

namespace covlab {

// Meagre-to-nowhere-dense compression under a dense-orbit action. The acting
// group is the model itself, acting by left translation; pieces are handled
// one per stage, stage k refining base cylinder k.
struct CompressionInstance {
  GroupModel model;
  std::vector<GradedNwdSet> pieces;  // D_0 .. D_{m-1}, one consumed per stage
  std::vector<Stem> base;            // enumeration of base cylinders B_0 ..
  int grade = 0;

  // base defaults to all stems of depth == grade, canonical order
  static CompressionInstance translation(GroupModel model,
                                         std::vector<GradedNwdSet> pieces);
};

struct CompressStage {
  Stem base;
  Stem u;               // chosen sub-cylinder of the base
  Stem reserved;        // witness cylinder disjoint from all U so far
  ElemList y;           // finite translator set pushing the stage piece away
};

struct CompressResult {
  std::vector<CompressStage> trace;
  ElemList y_all;
  GradedNwdSet c;  // complement of the union of the U_k

  // induction clauses re-checked from the trace alone
  bool replay_ok = false;
  // every x in some piece admits y in Y with y.x in C
  bool postcondition_ok = false;
  bool c_graded_nwd = false;
};

// Deterministic induction: U_k is the least admissible extension of base k
// (disjoint from every translated earlier piece, leaving a reserved
// cylinder); Y_k greedily pushes the stage piece into the reserve.
// Throws RefusalError naming the stuck stage when no admissible U exists.
CompressResult compress(const CompressionInstance& inst);

// Rearrangement via disjoint translates: the designated cylinder U, a
// disjoint translate system {x_n U}, covering translates {q_n U} = G, and
// nowhere dense pieces to relocate.
struct RearrangementInstance {
  GroupModel model;
  Stem u_stem;
  ElemList xs;  // {x_n U} pairwise disjoint — verified at construction
  ElemList qs;  // union q_n U = G — verified at construction
  std::vector<GradedNwdSet> pieces;
  int grade = 0;

  static RearrangementInstance make(GroupModel model, Stem u_stem, ElemList xs, ElemList qs,
                                    std::vector<GradedNwdSet> pieces);
  // xs = qs = one representative per disjoint U-translate
  static RearrangementInstance coset_default(GroupModel model, Stem u_stem,
                                             std::vector<GradedNwdSet> pieces);
};

struct RearrangePiece {
  int n = 0;  // q index
  int m = 0;  // piece index
  int x_index = 0;
  Elem r = 0;  // r_{n,m} with r q_n = x_{k(n,m)}
  ElemList moved;  // r (q_n U cap C_m)
};

struct RearrangeResult {
  ElemList q_out;  // Q = {r^{-1}}
  GradedNwdSet c;
  std::vector<RearrangePiece> pieces;
  bool pieces_disjoint = false;
  bool inclusions_ok = false;  // C_m inside Q C for every m
  bool c_graded_nwd = false;
};

// The pairing assigns one x per (n, m) with q_n U cap C_m nonempty, least
// pairs first; refuses when the disjoint translate supply runs out.
RearrangeResult rearrange(const RearrangementInstance& inst);

}  // namespace covlab

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covlab/group_model.hpp"

namespace covlab {

// A closed set in a finite graded truncation: membership is determined by
// the full-depth stem, so the set is an element list plus the grade at which
// nowhere-density is claimed. Finite spaces have no nonempty nowhere dense
// sets in the topological sense; the graded notion asks every cylinder of
// depth <= grade to admit a disjoint refinement.
struct GradedNwdSet {
  int grade = 0;
  ElemList elems;  // sorted, unique

  static GradedNwdSet of(int grade, ElemList elems);
  bool contains(Elem e) const;
  std::size_t size() const { return elems.size(); }
};

struct NwdReport {
  bool pass = false;
  std::optional<Stem> witness;  // cylinder with no disjoint extension
};

// Every cylinder of depth <= set.grade must contain an element outside the
// set (at full depth that is exactly "has a disjoint extension cylinder").
NwdReport is_graded_nwd(const GradedNwdSet& set, const GroupModel& model);

// Dual check used for hypothesis H3: every cylinder of depth <= grade
// contains a deeper cylinder inside `open_set`.
NwdReport is_graded_dense_open(const ElemList& open_set, int grade, const GroupModel& model);

GradedNwdSet complement_of(const ElemList& elems, int grade, const GroupModel& model);

// canonical sorted-stem serialization
std::vector<Stem> to_sorted_stems(const GradedNwdSet& set, const GroupModel& model);
GradedNwdSet from_sorted_stems(int grade, const std::vector<Stem>& stems, const GroupModel& model);

}  // namespace covlab

#include "covlab/graded.hpp"

#include <algorithm>
#include <stdexcept>

namespace covlab {

GradedNwdSet GradedNwdSet::of(int grade, ElemList elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  GradedNwdSet s;
  s.grade = grade;
  s.elems = std::move(elems);
  return s;
}

bool GradedNwdSet::contains(Elem e) const {
  return std::binary_search(elems.begin(), elems.end(), e);
}

NwdReport is_graded_nwd(const GradedNwdSet& set, const GroupModel& model) {
  if (set.grade < 0 || set.grade >= model.depth())
    throw std::invalid_argument("graded set grade must satisfy 0 <= g < depth");
  for (Elem e : set.elems)
    if (e >= model.size()) throw std::invalid_argument("graded set element outside universe");

  NwdReport rep;
  for (int d = 0; d <= set.grade; ++d) {
    for (const Stem& s : model.stems_at(d)) {
      bool escapes = false;
      for (Elem e = 0; e < model.size(); ++e) {
        if (!set.contains(e) && model.stem_matches(e, s)) {
          escapes = true;
          break;
        }
      }
      if (!escapes) {
        rep.pass = false;
        rep.witness = s;
        return rep;
      }
    }
  }
  rep.pass = true;
  return rep;
}

NwdReport is_graded_dense_open(const ElemList& open_set, int grade, const GroupModel& model) {
  std::vector<bool> in(model.size(), false);
  for (Elem e : open_set) {
    if (e >= model.size()) throw std::invalid_argument("element outside universe");
    in[e] = true;
  }
  NwdReport rep;
  for (int d = 0; d <= grade; ++d) {
    for (const Stem& s : model.stems_at(d)) {
      bool meets = false;
      for (Elem e = 0; e < model.size(); ++e) {
        if (in[e] && model.stem_matches(e, s)) {
          meets = true;
          break;
        }
      }
      if (!meets) {
        rep.pass = false;
        rep.witness = s;
        return rep;
      }
    }
  }
  rep.pass = true;
  return rep;
}

GradedNwdSet complement_of(const ElemList& elems, int grade, const GroupModel& model) {
  std::vector<bool> in(model.size(), false);
  for (Elem e : elems) in[e] = true;
  ElemList out;
  for (Elem e = 0; e < model.size(); ++e)
    if (!in[e]) out.push_back(e);
  return GradedNwdSet::of(grade, std::move(out));
}

std::vector<Stem> to_sorted_stems(const GradedNwdSet& set, const GroupModel& model) {
  std::vector<Stem> stems;
  stems.reserve(set.elems.size());
  for (Elem e : set.elems) stems.push_back(model.coords(e));
  std::sort(stems.begin(), stems.end());
  return stems;
}

GradedNwdSet from_sorted_stems(int grade, const std::vector<Stem>& stems, const GroupModel& model) {
  ElemList elems;
  elems.reserve(stems.size());
  for (const Stem& s : stems) elems.push_back(model.from_coords(s));
  return GradedNwdSet::of(grade, std::move(elems));
}

}  // namespace covlab

#include "covlab/compression.hpp"

#include <algorithm>
#include <stdexcept>

namespace covlab {

namespace {

std::vector<bool> cylinder_mask(const GroupModel& m, const Stem& s) {
  std::vector<bool> mask(m.size(), false);
  for (Elem e = 0; e < m.size(); ++e)
    if (m.stem_matches(e, s)) mask[e] = true;
  return mask;
}

bool mask_disjoint(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

// stems of depth 1..max_depth, shallow first, lex within a depth
std::vector<Stem> all_stems(const GroupModel& m, int max_depth) {
  std::vector<Stem> out;
  for (int d = 1; d <= max_depth; ++d) {
    auto stems = m.stems_at(d);
    out.insert(out.end(), stems.begin(), stems.end());
  }
  return out;
}

bool extends(const Stem& deep, const Stem& shallow) {
  if (deep.size() < shallow.size()) return false;
  return std::equal(shallow.begin(), shallow.end(), deep.begin());
}

}  // namespace

CompressionInstance CompressionInstance::translation(GroupModel model,
                                                     std::vector<GradedNwdSet> pieces) {
  CompressionInstance inst;
  inst.grade = model.grade();
  inst.base = model.stems_at(inst.grade);
  inst.model = std::move(model);
  inst.pieces = std::move(pieces);
  return inst;
}

CompressResult compress(const CompressionInstance& inst) {
  const GroupModel& m = inst.model;
  for (const auto& piece : inst.pieces) {
    NwdReport rep = is_graded_nwd(piece, m);
    if (!rep.pass)
      throw RefusalError("piece fails graded nowhere-density at stem " +
                         (rep.witness ? join(*rep.witness) : std::string("?")));
  }
  if (inst.pieces.size() > inst.base.size())
    throw RefusalError("more pieces than base cylinders; extend the base enumeration");
  // dense orbits: translation orbits are the whole group, so every orbit
  // meets every cylinder; re-checked on the identity orbit
  {
    std::vector<bool> orbit(m.size(), false);
    for (Elem g = 0; g < m.size(); ++g) orbit[m.op(g, m.identity())] = true;
    for (const Stem& s : m.stems_at(m.grade())) {
      bool meets = false;
      for (Elem e = 0; e < m.size(); ++e)
        if (orbit[e] && m.stem_matches(e, s)) meets = true;
      if (!meets) throw RefusalError("orbit misses a grade cylinder; action not dense");
    }
  }

  CompressResult res;
  std::vector<bool> u_union(m.size(), false);
  std::vector<bool> translated_bad(m.size(), false);  // union over i<k of y D_i, y in Y_i
  const std::vector<Stem> candidates = all_stems(m, m.depth());

  for (std::size_t k = 0; k < inst.base.size(); ++k) {
    const Stem& base = inst.base[k];
    CompressStage stage;
    stage.base = base;

    bool placed = false;
    for (const Stem& u : candidates) {
      if (!extends(u, base)) continue;
      std::vector<bool> u_mask = cylinder_mask(m, u);
      if (!mask_disjoint(u_mask, translated_bad)) continue;
      // a reserved cylinder disjoint from every U chosen so far must remain
      std::vector<bool> with_u = u_union;
      for (std::size_t i = 0; i < with_u.size(); ++i) with_u[i] = with_u[i] || u_mask[i];
      std::optional<Stem> reserve;
      for (const Stem& w : candidates) {
        if (mask_disjoint(cylinder_mask(m, w), with_u)) {
          reserve = w;
          break;
        }
      }
      if (!reserve) continue;
      stage.u = u;
      stage.reserved = *reserve;
      u_union = std::move(with_u);
      placed = true;
      break;
    }
    if (!placed)
      throw RefusalError("compression induction stuck at stage " + std::to_string(k) +
                         " (base " + join(base) + "); grade too coarse");

    if (k < inst.pieces.size()) {
      // greedy minimal translator set pushing the stage piece into the reserve
      std::vector<bool> w_mask = cylinder_mask(m, stage.reserved);
      std::vector<bool> pushed(m.size(), false);
      for (Elem d : inst.pieces[k].elems) {
        bool done = false;
        for (Elem y : stage.y)
          if (w_mask[m.op(y, d)]) {
            done = true;
            break;
          }
        if (done) continue;
        for (Elem y = 0; y < m.size(); ++y) {
          if (w_mask[m.op(y, d)]) {
            stage.y.push_back(y);
            done = true;
            break;
          }
        }
        if (!done) throw RefusalError("no translator pushes piece element into the reserve");
        (void)pushed;
      }
      for (Elem y : stage.y)
        for (Elem d : inst.pieces[k].elems) translated_bad[m.op(y, d)] = true;
    }
    res.trace.push_back(std::move(stage));
  }

  ElemList u_elems;
  for (Elem e = 0; e < m.size(); ++e)
    if (u_union[e]) u_elems.push_back(e);
  res.c = complement_of(u_elems, inst.grade, m);
  for (const auto& stage : res.trace)
    res.y_all.insert(res.y_all.end(), stage.y.begin(), stage.y.end());
  std::sort(res.y_all.begin(), res.y_all.end());
  res.y_all.erase(std::unique(res.y_all.begin(), res.y_all.end()), res.y_all.end());

  // replay the four induction clauses from the recorded trace
  res.replay_ok = true;
  {
    std::vector<bool> u_sofar(m.size(), false);
    for (std::size_t k = 0; k < res.trace.size(); ++k) {
      const auto& stage = res.trace[k];
      if (!extends(stage.u, inst.base[k])) res.replay_ok = false;
      std::vector<bool> u_mask = cylinder_mask(m, stage.u);
      for (std::size_t i = 0; i < u_sofar.size(); ++i) u_sofar[i] = u_sofar[i] || u_mask[i];
      // clause: reserved cylinder disjoint from every U so far
      if (!mask_disjoint(cylinder_mask(m, stage.reserved), u_sofar)) res.replay_ok = false;
      // clause: every earlier piece keeps an escape translator
      for (std::size_t j = 0; j <= k && j < inst.pieces.size(); ++j) {
        for (Elem d : inst.pieces[j].elems) {
          bool escapes = false;
          for (Elem y : res.trace[j].y)
            if (!u_sofar[m.op(y, d)]) {
              escapes = true;
              break;
            }
          if (!escapes) res.replay_ok = false;
        }
      }
    }
  }

  res.postcondition_ok = true;
  for (const auto& piece : inst.pieces) {
    for (Elem d : piece.elems) {
      bool ok = false;
      for (Elem y : res.y_all)
        if (res.c.contains(m.op(y, d))) {
          ok = true;
          break;
        }
      if (!ok) res.postcondition_ok = false;
    }
  }
  res.c_graded_nwd = is_graded_nwd(res.c, m).pass;
  return res;
}

RearrangementInstance RearrangementInstance::make(GroupModel model, Stem u_stem, ElemList xs,
                                                  ElemList qs,
                                                  std::vector<GradedNwdSet> pieces) {
  RearrangementInstance inst;
  inst.grade = model.grade();
  inst.u_stem = std::move(u_stem);
  inst.xs = std::move(xs);
  inst.qs = std::move(qs);
  inst.pieces = std::move(pieces);
  inst.model = std::move(model);

  const GroupModel& m = inst.model;
  ElemList u = m.cylinder_members(inst.u_stem);
  if (u.empty()) throw RefusalError("designated cylinder is empty");

  std::vector<bool> seen(m.size(), false);
  for (Elem x : inst.xs) {
    for (Elem e : u) {
      Elem t = m.op(x, e);
      if (seen[t]) throw RefusalError("x translates of U are not pairwise disjoint");
      seen[t] = true;
    }
  }
  std::vector<bool> covered(m.size(), false);
  for (Elem q : inst.qs)
    for (Elem e : u) covered[m.op(q, e)] = true;
  if (std::find(covered.begin(), covered.end(), false) != covered.end())
    throw RefusalError("q translates of U do not cover the group");
  for (const auto& piece : inst.pieces)
    if (!is_graded_nwd(piece, m).pass)
      throw RefusalError("piece fails graded nowhere-density");
  return inst;
}

RearrangementInstance RearrangementInstance::coset_default(GroupModel model, Stem u_stem,
                                                           std::vector<GradedNwdSet> pieces) {
  const GroupModel m = model;
  ElemList u = m.cylinder_members(u_stem);
  if (u.empty()) throw RefusalError("designated cylinder is empty");
  std::vector<bool> hit(m.size(), false);
  ElemList reps;
  for (Elem g = 0; g < m.size(); ++g) {
    if (hit[g]) continue;
    reps.push_back(g);
    for (Elem e : u) hit[m.op(g, e)] = true;
  }
  return make(std::move(model), std::move(u_stem), reps, reps, std::move(pieces));
}

RearrangeResult rearrange(const RearrangementInstance& inst) {
  const GroupModel& m = inst.model;
  ElemList u = m.cylinder_members(inst.u_stem);
  std::vector<bool> u_mask(m.size(), false);
  for (Elem e : u) u_mask[e] = true;

  RearrangeResult res;
  std::size_t next_x = 0;
  for (std::size_t n = 0; n < inst.qs.size(); ++n) {
    Elem q = inst.qs[n];
    std::vector<bool> qu(m.size(), false);
    for (Elem e : u) qu[m.op(q, e)] = true;
    for (std::size_t mm = 0; mm < inst.pieces.size(); ++mm) {
      ElemList inter;
      for (Elem e : inst.pieces[mm].elems)
        if (qu[e]) inter.push_back(e);
      if (inter.empty()) continue;
      if (next_x >= inst.xs.size())
        throw RefusalError("pairing exhausted: " + std::to_string(next_x + 1) +
                           " nonempty (q, piece) pairs need as many disjoint translates, have " +
                           std::to_string(inst.xs.size()));
      RearrangePiece piece;
      piece.n = static_cast<int>(n);
      piece.m = static_cast<int>(mm);
      piece.x_index = static_cast<int>(next_x);
      piece.r = m.op(inst.xs[next_x], m.inverse(q));  // r q = x
      piece.moved = translate(m, piece.r, inter);
      ++next_x;
      res.pieces.push_back(std::move(piece));
    }
  }

  ElemList c_elems;
  for (const auto& piece : res.pieces)
    c_elems.insert(c_elems.end(), piece.moved.begin(), piece.moved.end());
  res.c = GradedNwdSet::of(inst.grade, std::move(c_elems));

  for (const auto& piece : res.pieces) res.q_out.push_back(m.inverse(piece.r));
  std::sort(res.q_out.begin(), res.q_out.end());
  res.q_out.erase(std::unique(res.q_out.begin(), res.q_out.end()), res.q_out.end());

  res.pieces_disjoint = true;
  {
    std::vector<bool> seen(m.size(), false);
    for (const auto& piece : res.pieces) {
      for (Elem e : piece.moved) {
        if (seen[e]) res.pieces_disjoint = false;
        seen[e] = true;
      }
    }
  }

  res.inclusions_ok = true;
  {
    std::vector<bool> qc(m.size(), false);
    for (Elem q : res.q_out)
      for (Elem c : res.c.elems) qc[m.op(q, c)] = true;
    for (const auto& piece : inst.pieces)
      for (Elem e : piece.elems)
        if (!qc[e]) res.inclusions_ok = false;
  }
  res.c_graded_nwd = is_graded_nwd(res.c, m).pass;
  return res;
}

}  // namespace covlab

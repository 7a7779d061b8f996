#include <doctest.h>

#include "covlab/compression.hpp"

using namespace covlab;

namespace {

GroupModel z2_4() { return GroupModel::product({2, 2, 2, 2}, 2); }

GradedNwdSet set_of(const GroupModel& m, std::initializer_list<Seq> coords, int grade) {
  ElemList elems;
  for (const Seq& c : coords) elems.push_back(m.from_coords(c));
  return GradedNwdSet::of(grade, elems);
}

}  // namespace

TEST_CASE("compress: two-point piece in Z_2^4 at grade 2") {
  GroupModel m = z2_4();
  CompressionInstance inst = CompressionInstance::translation(
      m, {set_of(m, {{0, 0, 0, 0}, {1, 1, 1, 1}}, 2)});
  CompressResult res = compress(inst);
  CHECK(res.replay_ok);
  CHECK(res.postcondition_ok);
  CHECK(res.c_graded_nwd);
  CHECK(res.y_all.size() <= 4);
  CHECK(res.trace.size() == inst.base.size());
}

TEST_CASE("compress: empty piece list still refines every base cylinder") {
  GroupModel m = z2_4();
  CompressionInstance inst = CompressionInstance::translation(m, {});
  CompressResult res = compress(inst);
  CHECK(res.y_all.empty());
  CHECK(res.c_graded_nwd);
  CHECK(res.replay_ok);
  // one cylinder refined away per base stem
  CHECK(res.trace.size() == m.stems_at(m.grade()).size());
}

TEST_CASE("compress rejects pieces containing a full cylinder") {
  GroupModel m = z2_4();
  ElemList half;
  for (Elem e = 0; e < m.size(); ++e)
    if (m.coords(e)[0] == 0) half.push_back(e);
  CompressionInstance inst = CompressionInstance::translation(m, {GradedNwdSet::of(2, half)});
  CHECK_THROWS_AS(compress(inst), RefusalError);
}

TEST_CASE("compress trace replay is bit-identical") {
  GroupModel m = z2_4();
  CompressionInstance inst = CompressionInstance::translation(
      m, {set_of(m, {{0, 0, 1, 1}, {1, 0, 1, 0}}, 2), set_of(m, {{0, 1, 0, 1}}, 2)});
  CompressResult a = compress(inst);
  CompressResult b = compress(inst);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].u == b.trace[i].u);
    CHECK(a.trace[i].reserved == b.trace[i].reserved);
    CHECK(a.trace[i].y == b.trace[i].y);
  }
  CHECK(a.c.elems == b.c.elems);
}

TEST_CASE("rearrange: shipped Z_2^4 instance with four disjoint translates") {
  GroupModel m = z2_4();
  auto elem = [&](const Seq& c) { return m.from_coords(c); };
  // U = 00**; x translates partition; q translates cover
  RearrangementInstance inst = RearrangementInstance::make(
      m, {0, 0},
      {elem({0, 0, 0, 0}), elem({0, 1, 0, 0}), elem({1, 0, 0, 0}), elem({1, 1, 0, 0})},
      {elem({0, 0, 0, 1}), elem({0, 1, 1, 0}), elem({1, 0, 1, 1}), elem({1, 1, 0, 0})},
      {set_of(m, {{0, 0, 1, 1}, {0, 1, 1, 0}}, 2), set_of(m, {{1, 0, 1, 1}, {1, 1, 1, 0}}, 2)});
  RearrangeResult res = rearrange(inst);
  CHECK(res.pieces_disjoint);
  CHECK(res.inclusions_ok);
  CHECK(res.c_graded_nwd);
  CHECK(res.q_out.size() <= 4);
  CHECK(res.pieces.size() == 4);
}

TEST_CASE("rearrange: single piece inside one translate") {
  GroupModel m = z2_4();
  RearrangementInstance inst = RearrangementInstance::coset_default(
      m, {0, 0}, {set_of(m, {{0, 0, 1, 1}, {0, 0, 1, 0}}, 2)});
  RearrangeResult res = rearrange(inst);
  CHECK(res.pieces.size() == 1);
  CHECK(res.q_out.size() == 1);
  CHECK(res.inclusions_ok);
  // C is a translate of the piece
  CHECK(res.c.size() == 2);
}

TEST_CASE("rearrange: empty pieces give empty Q and C") {
  GroupModel m = z2_4();
  RearrangementInstance inst = RearrangementInstance::coset_default(m, {0, 0}, {});
  RearrangeResult res = rearrange(inst);
  CHECK(res.q_out.empty());
  CHECK(res.c.size() == 0);
  CHECK(res.inclusions_ok);
  CHECK(res.c_graded_nwd);
}

TEST_CASE("rearrange refuses when the translate supply runs out") {
  GroupModel m = GroupModel::product({2, 2, 2, 2}, 1);
  auto elem = [&](const Seq& c) { return m.from_coords(c); };
  // U = 0***; only two disjoint translates exist but pieces meet every pair
  std::vector<GradedNwdSet> pieces = {
      set_of(m, {{0, 0, 1, 1}, {1, 1, 0, 0}}, 1),
      set_of(m, {{0, 1, 0, 1}, {1, 0, 1, 0}}, 1),
  };
  RearrangementInstance inst = RearrangementInstance::make(
      m, {0}, {elem({0, 0, 0, 0}), elem({1, 0, 0, 0})},
      {elem({0, 0, 0, 0}), elem({1, 0, 0, 0})}, pieces);
  CHECK_THROWS_AS(rearrange(inst), RefusalError);
}

TEST_CASE("construction validates the instance invariants") {
  GroupModel m = z2_4();
  auto elem = [&](const Seq& c) { return m.from_coords(c); };
  // overlapping x translates
  CHECK_THROWS_AS(RearrangementInstance::make(m, {0}, {elem({0, 0, 0, 0}), elem({0, 0, 0, 1})},
                                              {elem({0, 0, 0, 0}), elem({1, 0, 0, 0})}, {}),
                  RefusalError);
  // q translates failing to cover
  CHECK_THROWS_AS(RearrangementInstance::make(m, {0}, {elem({0, 0, 0, 0})},
                                              {elem({0, 0, 0, 0})}, {}),
                  RefusalError);
}

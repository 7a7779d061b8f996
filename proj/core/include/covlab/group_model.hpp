#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covlab/profile.hpp"
#include "covlab/util.hpp"

namespace covlab {

using Elem = std::uint32_t;
using ElemList = std::vector<Elem>;

// A coordinate prefix. For sequence models a partial assignment of the
// leading coordinates; for permutation models a partial injection (the
// images of 0..k-1).
using Stem = std::vector<int>;

enum class GroupKind { Product, Symmetric, Dyadic };

std::string to_string(GroupKind k);
GroupKind group_kind_from_string(const std::string& s);

struct AxiomReport {
  bool identity_ok = false;
  bool inverses_ok = false;
  bool assoc_ok = false;
  bool assoc_exhaustive = false;  // false: seeded random triples
  std::uint64_t assoc_checks = 0;
  bool all() const { return identity_ok && inverses_ok && assoc_ok; }
};

// Finite group with a cylinder structure compatible with enumeration order:
// elements are indexed 0..size-1 and coords() maps an element to its digit
// string, whose prefixes are the cylinders. Index order equals lexicographic
// order on coords for every kind.
class GroupModel {
 public:
  GroupModel() = default;  // empty placeholder; factories produce usable models

  static GroupModel product(std::vector<int> moduli, int grade);
  static GroupModel symmetric(int degree, int grade);  // S_degree in one-line notation
  static GroupModel dyadic(int bits, int grade);       // Z_{2^bits}, binary digits, MSB first

  GroupKind kind() const { return kind_; }
  std::uint64_t size() const { return size_; }
  int depth() const { return depth_; }
  int grade() const { return grade_; }
  int level_size(int level) const;

  Elem identity() const { return 0; }
  Elem op(Elem a, Elem b) const;
  Elem inverse(Elem a) const;

  Seq coords(Elem e) const;
  Elem from_coords(const Seq& digits) const;

  bool stem_matches(Elem e, const Stem& s) const;
  ElemList cylinder_members(const Stem& s) const;

  // All valid stems of the given depth, lexicographic. Injective for the
  // symmetric kind.
  std::vector<Stem> stems_at(int depth) const;

  // Identity and inverses for every element; associativity exhaustive while
  // |G|^3 stays small, otherwise seeded random triples.
  AxiomReport verify_axioms(std::uint64_t seed = 0,
                            std::uint64_t sample_triples = 100000) const;

  // model descriptor, e.g. "product:3,3,3" / "sym:6" / "dyadic:4"
  std::string descriptor() const;
  static GroupModel from_descriptor(const std::string& desc, int grade);

  bool operator==(const GroupModel& o) const;

  const std::vector<int>& moduli() const { return moduli_; }
  int sym_degree() const { return sym_degree_; }
  int dyadic_bits() const { return dyadic_bits_; }

 private:
  GroupKind kind_ = GroupKind::Product;
  std::uint64_t size_ = 0;
  int depth_ = 0;
  int grade_ = 0;
  std::vector<int> moduli_;  // Product
  int sym_degree_ = 0;       // Symmetric
  int dyadic_bits_ = 0;      // Dyadic

  std::vector<int> perm_of(Elem e) const;
  Elem rank_perm(const std::vector<int>& p) const;
};

// gS; |gS| = |S|.
ElemList translate(const GroupModel& model, Elem g, const ElemList& s);

// Surjective homomorphism between finite models, stored pointwise.
struct Homomorphism {
  GroupModel domain;
  GroupModel codomain;
  std::vector<Elem> map;  // indexed by domain element

  Elem operator()(Elem e) const { return map[e]; }
};

struct HomReport {
  bool is_homomorphism = false;
  bool surjective = false;
  bool graded_open = false;  // image of each depth<=grade cylinder contains a codomain cylinder
  bool all() const { return is_homomorphism && surjective && graded_open; }
};

HomReport check_homomorphism(const Homomorphism& h);

Homomorphism hom_identity(const GroupModel& g);
// coordinatewise reduction Z_{m_i}^n -> Z_{k_i}^n (k_i | m_i)
Homomorphism hom_mod(const GroupModel& domain, const GroupModel& codomain);
// drop trailing coordinates of a product model
Homomorphism hom_project(const GroupModel& domain, const GroupModel& codomain);

}  // namespace covlab

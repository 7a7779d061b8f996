#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covlab/graded.hpp"
#include "covlab/group_model.hpp"
#include "covlab/tree_relabel.hpp"

namespace covlab {

// The data (B_k, A_k^j, T) over a finite group model. Labels at level k
// index the A_k sets; branches of the tree select one A per level.
struct WitnessStructure {
  std::string name;
  GroupModel model;
  int levels = 0;
  std::vector<ElemList> b_sets;                  // B_k
  std::vector<std::map<int, ElemList>> a_sets;   // level -> label -> A_k^label
  PrunedTree tree;
  int grade = 0;
};

struct H4Witness {
  int level = 0;
  int label_i = 0;
  int label_j = 0;
  Elem element = 0;  // lies in both A_k^i B_k and A_k^j B_k
};

struct HypothesisReport {
  bool h1 = false;  // all sets inside the universe
  bool h2 = false;  // every branch has nonempty intersection of its A sets
  bool h3 = false;  // union of B_k graded-dense-open at the structure grade
  bool h4 = false;  // A_k^i B_k pairwise disjoint per level
  std::optional<Seq> h2_witness_branch;
  std::optional<Stem> h3_witness_stem;
  std::optional<H4Witness> h4_witness;
  bool all() const { return h1 && h2 && h3 && h4; }
};

HypothesisReport check_hypotheses(const WitnessStructure& w);

enum class CertStatus { Unverified, Exhaustive, Sampled, Refuted };
std::string to_string(CertStatus s);
CertStatus cert_status_from_string(const std::string& s);

// Translator set X and closed set C with the checkable claim X.C = G
// (left translates).
struct CoveringCertificate {
  std::string name;
  GroupModel model;
  ElemList translators;
  GradedNwdSet closed_set;
  CertStatus status = CertStatus::Unverified;
  std::optional<Elem> refuted_witness;
  std::vector<std::optional<int>> gamma_trace;  // filled alongside a refutation
  std::optional<std::uint64_t> sample_seed;
  std::uint64_t sample_count = 0;
};

// X = {b* : b in family} with b* the lexicographically least element of the
// branch's A-intersection; C = complement of the union of the B_k.
CoveringCertificate build_covering(const WitnessStructure& w,
                                   const std::vector<Seq>& branch_family);

// Exhaustive g in X.C sweep within budget, otherwise seeded sampling with
// explicit Sampled status. A refutation records the least uncovered g and,
// when the witness structure is supplied, its gamma trace.
CoveringCertificate verify_covering(CoveringCertificate cert,
                                    const WitnessStructure* ctx = nullptr,
                                    std::uint64_t budget = kDefaultBudget,
                                    std::optional<std::uint64_t> seed = std::nullopt,
                                    std::uint64_t samples = 100000);

// True iff every element is hit; used to replay stored refutations.
bool element_covered(const CoveringCertificate& cert, Elem g);

// Gamma(k) = the unique label j with g in A_k^j B_k, unset where none
// exists. Two hits at one level surface an H4 violation.
std::vector<std::optional<int>> gamma_of(Elem g, const WitnessStructure& w);

// Pull a verified certificate back through a surjective graded-open
// homomorphism: the closed set becomes its preimage, each translator the
// least preimage of the original. Translator count is preserved and the
// result is verified exhaustively over the domain.
CoveringCertificate pullback_covering(const Homomorphism& hom,
                                      const CoveringCertificate& cert_h,
                                      std::uint64_t budget = kDefaultBudget);

}  // namespace covlab

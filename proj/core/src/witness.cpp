#include "covlab/witness.hpp"

#include <algorithm>
#include <stdexcept>

namespace covlab {

namespace {

// membership mask of A_k^j B_k = {a.b}
std::vector<bool> product_mask(const GroupModel& model, const ElemList& a, const ElemList& b) {
  std::vector<bool> mask(model.size(), false);
  for (Elem x : a)
    for (Elem y : b) mask[model.op(x, y)] = true;
  return mask;
}

}  // namespace

HypothesisReport check_hypotheses(const WitnessStructure& w) {
  HypothesisReport rep;
  const GroupModel& m = w.model;

  rep.h1 = true;
  auto in_universe = [&](const ElemList& s) {
    for (Elem e : s)
      if (e >= m.size()) return false;
    return true;
  };
  for (const auto& b : w.b_sets)
    if (!in_universe(b)) rep.h1 = false;
  for (const auto& level : w.a_sets)
    for (const auto& [label, set] : level)
      if (!in_universe(set)) rep.h1 = false;

  rep.h2 = true;
  for (const Seq& branch : w.tree.branches()) {
    std::vector<bool> inter(m.size(), true);
    for (int k = 0; k < w.levels; ++k) {
      auto it = w.a_sets[static_cast<std::size_t>(k)].find(branch[static_cast<std::size_t>(k)]);
      std::vector<bool> mask(m.size(), false);
      if (it != w.a_sets[static_cast<std::size_t>(k)].end())
        for (Elem e : it->second) mask[e] = true;
      for (Elem e = 0; e < m.size(); ++e) inter[e] = inter[e] && mask[e];
    }
    if (std::find(inter.begin(), inter.end(), true) == inter.end()) {
      rep.h2 = false;
      rep.h2_witness_branch = branch;
      break;
    }
  }

  ElemList b_union;
  for (const auto& b : w.b_sets) b_union.insert(b_union.end(), b.begin(), b.end());
  std::sort(b_union.begin(), b_union.end());
  b_union.erase(std::unique(b_union.begin(), b_union.end()), b_union.end());
  NwdReport dense = is_graded_dense_open(b_union, w.grade, m);
  rep.h3 = dense.pass;
  rep.h3_witness_stem = dense.witness;

  rep.h4 = true;
  for (int k = 0; k < w.levels && rep.h4; ++k) {
    const auto& level = w.a_sets[static_cast<std::size_t>(k)];
    const auto& b = w.b_sets[static_cast<std::size_t>(k)];
    std::vector<std::pair<int, std::vector<bool>>> masks;
    masks.reserve(level.size());
    for (const auto& [label, set] : level)
      masks.emplace_back(label, product_mask(m, set, b));
    for (std::size_t i = 0; i < masks.size() && rep.h4; ++i) {
      for (std::size_t j = i + 1; j < masks.size(); ++j) {
        for (Elem e = 0; e < m.size(); ++e) {
          if (masks[i].second[e] && masks[j].second[e]) {
            rep.h4 = false;
            rep.h4_witness = H4Witness{k, masks[i].first, masks[j].first, e};
            break;
          }
        }
        if (!rep.h4) break;
      }
    }
  }
  return rep;
}

std::string to_string(CertStatus s) {
  switch (s) {
    case CertStatus::Unverified: return "unverified";
    case CertStatus::Exhaustive: return "exhaustive";
    case CertStatus::Sampled: return "sampled";
    case CertStatus::Refuted: return "refuted";
  }
  return "?";
}

CertStatus cert_status_from_string(const std::string& s) {
  if (s == "unverified") return CertStatus::Unverified;
  if (s == "exhaustive") return CertStatus::Exhaustive;
  if (s == "sampled") return CertStatus::Sampled;
  if (s == "refuted") return CertStatus::Refuted;
  throw RefusalError("unknown certificate status: '" + s + "'");
}

CoveringCertificate build_covering(const WitnessStructure& w,
                                   const std::vector<Seq>& branch_family) {
  const GroupModel& m = w.model;
  ElemList translators;
  for (const Seq& branch : branch_family) {
    if (static_cast<int>(branch.size()) != w.levels)
      throw RefusalError("branch length must equal level count");
    // least element of the branch intersection
    std::vector<bool> inter(m.size(), true);
    for (int k = 0; k < w.levels; ++k) {
      auto it = w.a_sets[static_cast<std::size_t>(k)].find(branch[static_cast<std::size_t>(k)]);
      if (it == w.a_sets[static_cast<std::size_t>(k)].end())
        throw RefusalError("branch label without an A set at level " + std::to_string(k));
      std::vector<bool> mask(m.size(), false);
      for (Elem e : it->second) mask[e] = true;
      for (Elem e = 0; e < m.size(); ++e) inter[e] = inter[e] && mask[e];
    }
    auto it = std::find(inter.begin(), inter.end(), true);
    if (it == inter.end())
      throw RefusalError("empty branch intersection (contradicts H2) at branch " + join(branch));
    translators.push_back(static_cast<Elem>(it - inter.begin()));
  }

  ElemList b_union;
  for (const auto& b : w.b_sets) b_union.insert(b_union.end(), b.begin(), b.end());
  CoveringCertificate cert;
  cert.name = w.name;
  cert.model = m;
  cert.translators = std::move(translators);
  cert.closed_set = complement_of(b_union, w.grade, m);
  cert.status = CertStatus::Unverified;
  return cert;
}

bool element_covered(const CoveringCertificate& cert, Elem g) {
  const GroupModel& m = cert.model;
  for (Elem x : cert.translators)
    if (cert.closed_set.contains(m.op(m.inverse(x), g))) return true;
  return false;
}

CoveringCertificate verify_covering(CoveringCertificate cert, const WitnessStructure* ctx,
                                    std::uint64_t budget, std::optional<std::uint64_t> seed,
                                    std::uint64_t samples) {
  const GroupModel& m = cert.model;
  cert.gamma_trace.clear();
  cert.refuted_witness.reset();
  auto refute = [&](Elem g) {
    cert.status = CertStatus::Refuted;
    cert.refuted_witness = g;
    if (ctx) cert.gamma_trace = gamma_of(g, *ctx);
  };

  if (m.size() <= budget) {
    for (Elem g = 0; g < m.size(); ++g) {
      if (!element_covered(cert, g)) {
        refute(g);
        return cert;
      }
    }
    cert.status = CertStatus::Exhaustive;
    return cert;
  }
  if (!seed)
    throw RefusalError("universe of " + std::to_string(m.size()) + " exceeds budget " +
                       std::to_string(budget) + "; sampled verification requires a seed");
  Rng rng(*seed);
  cert.sample_seed = seed;
  cert.sample_count = samples;
  for (std::uint64_t t = 0; t < samples; ++t) {
    Elem g = static_cast<Elem>(rng.below(m.size()));
    if (!element_covered(cert, g)) {
      refute(g);
      return cert;
    }
  }
  cert.status = CertStatus::Sampled;
  return cert;
}

CoveringCertificate pullback_covering(const Homomorphism& hom, const CoveringCertificate& cert_h,
                                      std::uint64_t budget) {
  if (!(hom.codomain == cert_h.model))
    throw RefusalError("homomorphism codomain does not match the certificate model");
  HomReport hr = check_homomorphism(hom);
  if (!hr.is_homomorphism) throw RefusalError("map is not a homomorphism");
  if (!hr.surjective) throw RefusalError("homomorphism is not surjective");
  if (!hr.graded_open) throw RefusalError("homomorphism is not graded-open");
  if (cert_h.status != CertStatus::Exhaustive)
    throw RefusalError("pullback requires an exhaustively verified certificate");

  ElemList preimage;
  for (Elem g = 0; g < hom.domain.size(); ++g)
    if (cert_h.closed_set.contains(hom.map[g])) preimage.push_back(g);
  GradedNwdSet b = GradedNwdSet::of(hom.domain.grade(), std::move(preimage));
  if (!is_graded_nwd(b, hom.domain).pass)
    throw RefusalError("preimage of the closed set is not graded nowhere dense in the domain");

  ElemList y;
  for (Elem x : cert_h.translators) {
    bool found = false;
    for (Elem g = 0; g < hom.domain.size(); ++g) {
      if (hom.map[g] == x) {
        y.push_back(g);  // least preimage
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("surjective map missed a translator");
  }

  CoveringCertificate out;
  out.name = cert_h.name + " pulled back through " + hom.domain.descriptor();
  out.model = hom.domain;
  out.translators = std::move(y);
  out.closed_set = std::move(b);
  return verify_covering(std::move(out), nullptr, budget);
}

std::vector<std::optional<int>> gamma_of(Elem g, const WitnessStructure& w) {
  const GroupModel& m = w.model;
  std::vector<std::optional<int>> gamma;
  gamma.reserve(static_cast<std::size_t>(w.levels));
  for (int k = 0; k < w.levels; ++k) {
    const auto& b = w.b_sets[static_cast<std::size_t>(k)];
    std::vector<bool> b_mask(m.size(), false);
    for (Elem e : b) b_mask[e] = true;
    std::optional<int> found;
    for (const auto& [label, set] : w.a_sets[static_cast<std::size_t>(k)]) {
      bool hit = false;
      for (Elem a : set) {
        // g in A_k^j B_k  iff  a^{-1} g in B_k for some a
        if (b_mask[m.op(m.inverse(a), g)]) {
          hit = true;
          break;
        }
      }
      if (hit) {
        if (found)
          throw std::logic_error("H4 violation surfaced by gamma: level " + std::to_string(k) +
                                 " labels " + std::to_string(*found) + "," +
                                 std::to_string(label));
        found = label;
      }
    }
    gamma.push_back(found);
  }
  return gamma;
}

}  // namespace covlab

#include "covlab/group_model.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace covlab {

std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::Product: return "product";
    case GroupKind::Symmetric: return "sym";
    case GroupKind::Dyadic: return "dyadic";
  }
  return "?";
}

GroupKind group_kind_from_string(const std::string& s) {
  if (s == "product") return GroupKind::Product;
  if (s == "sym") return GroupKind::Symmetric;
  if (s == "dyadic") return GroupKind::Dyadic;
  throw RefusalError("unknown group kind: '" + s + "'");
}

GroupModel GroupModel::product(std::vector<int> moduli, int grade) {
  GroupModel m;
  m.kind_ = GroupKind::Product;
  Profile check(moduli);  // validates sizes >= 2, no overflow
  m.size_ = check.cardinality();
  m.depth_ = static_cast<int>(moduli.size());
  m.moduli_ = std::move(moduli);
  if (grade < 0 || grade >= m.depth_) throw RefusalError("grade must satisfy 0 <= g < depth");
  m.grade_ = grade;
  if (m.size_ > (1u << 24)) throw RefusalError("product model too large to enumerate");
  return m;
}

GroupModel GroupModel::symmetric(int degree, int grade) {
  GroupModel m;
  m.kind_ = GroupKind::Symmetric;
  if (degree < 1 || degree > 8) throw RefusalError("symmetric degree must be in 1..8");
  std::uint64_t f = 1;
  for (int i = 2; i <= degree; ++i) f *= static_cast<std::uint64_t>(i);
  m.size_ = f;
  m.depth_ = degree;
  m.sym_degree_ = degree;
  if (grade < 0 || grade >= degree) throw RefusalError("grade must satisfy 0 <= g < depth");
  m.grade_ = grade;
  return m;
}

GroupModel GroupModel::dyadic(int bits, int grade) {
  GroupModel m;
  m.kind_ = GroupKind::Dyadic;
  if (bits < 1 || bits > 20) throw RefusalError("dyadic bits must be in 1..20");
  m.size_ = std::uint64_t{1} << bits;
  m.depth_ = bits;
  m.dyadic_bits_ = bits;
  if (grade < 0 || grade >= bits) throw RefusalError("grade must satisfy 0 <= g < depth");
  m.grade_ = grade;
  return m;
}

int GroupModel::level_size(int level) const {
  switch (kind_) {
    case GroupKind::Product: return moduli_[static_cast<std::size_t>(level)];
    case GroupKind::Symmetric: return sym_degree_;
    case GroupKind::Dyadic: return 2;
  }
  return 0;
}

std::vector<int> GroupModel::perm_of(Elem e) const {
  // lexicographic unrank via the factorial number system
  int n = sym_degree_;
  std::vector<int> avail(static_cast<std::size_t>(n));
  std::iota(avail.begin(), avail.end(), 0);
  std::vector<std::uint64_t> fact(static_cast<std::size_t>(n) + 1, 1);
  for (int i = 1; i <= n; ++i) fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * static_cast<std::uint64_t>(i);
  std::vector<int> p;
  p.reserve(static_cast<std::size_t>(n));
  std::uint64_t r = e;
  for (int i = n - 1; i >= 0; --i) {
    std::uint64_t f = fact[static_cast<std::size_t>(i)];
    std::size_t idx = static_cast<std::size_t>(r / f);
    r %= f;
    p.push_back(avail[idx]);
    avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return p;
}

Elem GroupModel::rank_perm(const std::vector<int>& p) const {
  int n = sym_degree_;
  std::vector<std::uint64_t> fact(static_cast<std::size_t>(n) + 1, 1);
  for (int i = 1; i <= n; ++i) fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * static_cast<std::uint64_t>(i);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::uint64_t r = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int v = 0; v < p[static_cast<std::size_t>(i)]; ++v)
      if (!used[static_cast<std::size_t>(v)]) ++smaller;
    r += static_cast<std::uint64_t>(smaller) * fact[static_cast<std::size_t>(n - 1 - i)];
    used[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] = true;
  }
  return static_cast<Elem>(r);
}

Elem GroupModel::op(Elem a, Elem b) const {
  switch (kind_) {
    case GroupKind::Product: {
      Seq x = coords(a), y = coords(b);
      Seq z(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] + y[i]) % moduli_[i];
      return from_coords(z);
    }
    case GroupKind::Symmetric: {
      auto p = perm_of(a), q = perm_of(b);
      std::vector<int> r(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[static_cast<std::size_t>(q[i])];
      return rank_perm(r);
    }
    case GroupKind::Dyadic:
      return static_cast<Elem>((static_cast<std::uint64_t>(a) + b) & (size_ - 1));
  }
  return 0;
}

Elem GroupModel::inverse(Elem a) const {
  switch (kind_) {
    case GroupKind::Product: {
      Seq x = coords(a);
      Seq z(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) z[i] = (moduli_[i] - x[i]) % moduli_[i];
      return from_coords(z);
    }
    case GroupKind::Symmetric: {
      auto p = perm_of(a);
      std::vector<int> r(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
      return rank_perm(r);
    }
    case GroupKind::Dyadic:
      return static_cast<Elem>((size_ - a) & (size_ - 1));
  }
  return 0;
}

Seq GroupModel::coords(Elem e) const {
  switch (kind_) {
    case GroupKind::Product: {
      Seq x(moduli_.size());
      std::uint64_t r = e;
      for (std::size_t i = moduli_.size(); i-- > 0;) {
        x[i] = static_cast<int>(r % static_cast<std::uint64_t>(moduli_[i]));
        r /= static_cast<std::uint64_t>(moduli_[i]);
      }
      return x;
    }
    case GroupKind::Symmetric:
      return perm_of(e);
    case GroupKind::Dyadic: {
      Seq x(static_cast<std::size_t>(dyadic_bits_));
      for (int i = 0; i < dyadic_bits_; ++i)
        x[static_cast<std::size_t>(i)] = static_cast<int>((e >> (dyadic_bits_ - 1 - i)) & 1u);
      return x;
    }
  }
  return {};
}

Elem GroupModel::from_coords(const Seq& digits) const {
  if (static_cast<int>(digits.size()) != depth_)
    throw std::invalid_argument("coords length mismatch");
  switch (kind_) {
    case GroupKind::Product: {
      std::uint64_t r = 0;
      for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] < 0 || digits[i] >= moduli_[i])
          throw std::invalid_argument("digit out of range");
        r = r * static_cast<std::uint64_t>(moduli_[i]) + static_cast<std::uint64_t>(digits[i]);
      }
      return static_cast<Elem>(r);
    }
    case GroupKind::Symmetric: {
      std::vector<bool> seen(static_cast<std::size_t>(sym_degree_), false);
      for (int d : digits) {
        if (d < 0 || d >= sym_degree_ || seen[static_cast<std::size_t>(d)])
          throw std::invalid_argument("not a permutation");
        seen[static_cast<std::size_t>(d)] = true;
      }
      return rank_perm(digits);
    }
    case GroupKind::Dyadic: {
      Elem r = 0;
      for (int d : digits) {
        if (d != 0 && d != 1) throw std::invalid_argument("bit out of range");
        r = static_cast<Elem>((r << 1) | static_cast<Elem>(d));
      }
      return r;
    }
  }
  return 0;
}

bool GroupModel::stem_matches(Elem e, const Stem& s) const {
  Seq x = coords(e);
  if (s.size() > x.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (x[i] != s[i]) return false;
  return true;
}

ElemList GroupModel::cylinder_members(const Stem& s) const {
  ElemList out;
  for (Elem e = 0; e < size_; ++e)
    if (stem_matches(e, s)) out.push_back(e);
  return out;
}

std::vector<Stem> GroupModel::stems_at(int depth) const {
  if (depth < 0 || depth > depth_) throw std::invalid_argument("stem depth out of range");
  std::vector<Stem> out;
  Stem cur;
  std::vector<bool> used(kind_ == GroupKind::Symmetric ? static_cast<std::size_t>(sym_degree_) : 0, false);
  auto rec = [&](auto&& self, int level) -> void {
    if (level == depth) {
      out.push_back(cur);
      return;
    }
    int w = level_size(level);
    for (int v = 0; v < w; ++v) {
      if (kind_ == GroupKind::Symmetric) {
        if (used[static_cast<std::size_t>(v)]) continue;
        used[static_cast<std::size_t>(v)] = true;
      }
      cur.push_back(v);
      self(self, level + 1);
      cur.pop_back();
      if (kind_ == GroupKind::Symmetric) used[static_cast<std::size_t>(v)] = false;
    }
  };
  rec(rec, 0);
  return out;
}

AxiomReport GroupModel::verify_axioms(std::uint64_t seed, std::uint64_t sample_triples) const {
  AxiomReport rep;
  rep.identity_ok = true;
  rep.inverses_ok = true;
  Elem e = identity();
  for (Elem a = 0; a < size_; ++a) {
    if (op(e, a) != a || op(a, e) != a) rep.identity_ok = false;
    if (op(a, inverse(a)) != e || op(inverse(a), a) != e) rep.inverses_ok = false;
  }
  rep.assoc_ok = true;
  const std::uint64_t kExhaustiveCap = 2'000'000;  // |G|^3 budget
  std::uint64_t cube = 0;
  bool small = checked_mul(size_, size_).has_value();
  if (small) {
    auto sq = checked_mul(size_, size_);
    auto cb = sq ? checked_mul(*sq, size_) : std::nullopt;
    small = cb.has_value() && *cb <= kExhaustiveCap;
    if (cb) cube = *cb;
  }
  if (small) {
    rep.assoc_exhaustive = true;
    rep.assoc_checks = cube;
    for (Elem a = 0; a < size_ && rep.assoc_ok; ++a)
      for (Elem b = 0; b < size_ && rep.assoc_ok; ++b)
        for (Elem c = 0; c < size_; ++c)
          if (op(op(a, b), c) != op(a, op(b, c))) {
            rep.assoc_ok = false;
            break;
          }
  } else {
    rep.assoc_exhaustive = false;
    rep.assoc_checks = sample_triples;
    Rng rng(seed);
    for (std::uint64_t t = 0; t < sample_triples; ++t) {
      Elem a = static_cast<Elem>(rng.below(size_));
      Elem b = static_cast<Elem>(rng.below(size_));
      Elem c = static_cast<Elem>(rng.below(size_));
      if (op(op(a, b), c) != op(a, op(b, c))) {
        rep.assoc_ok = false;
        break;
      }
    }
  }
  return rep;
}

std::string GroupModel::descriptor() const {
  switch (kind_) {
    case GroupKind::Product: return "product:" + join(moduli_);
    case GroupKind::Symmetric: return "sym:" + std::to_string(sym_degree_);
    case GroupKind::Dyadic: return "dyadic:" + std::to_string(dyadic_bits_);
  }
  return "?";
}

GroupModel GroupModel::from_descriptor(const std::string& desc, int grade) {
  auto parts = split(desc, ':');
  if (parts.size() != 2) throw RefusalError("bad model descriptor: '" + desc + "'");
  GroupKind k = group_kind_from_string(parts[0]);
  switch (k) {
    case GroupKind::Product: return product(parse_int_list(parts[1]), grade);
    case GroupKind::Symmetric: return symmetric(std::stoi(parts[1]), grade);
    case GroupKind::Dyadic: return dyadic(std::stoi(parts[1]), grade);
  }
  throw RefusalError("bad model descriptor");
}

bool GroupModel::operator==(const GroupModel& o) const {
  return kind_ == o.kind_ && moduli_ == o.moduli_ && sym_degree_ == o.sym_degree_ &&
         dyadic_bits_ == o.dyadic_bits_ && grade_ == o.grade_;
}

ElemList translate(const GroupModel& model, Elem g, const ElemList& s) {
  if (g >= model.size()) throw std::invalid_argument("element outside universe");
  ElemList out;
  out.reserve(s.size());
  for (Elem e : s) {
    if (e >= model.size()) throw std::invalid_argument("element outside universe");
    out.push_back(model.op(g, e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

HomReport check_homomorphism(const Homomorphism& h) {
  HomReport rep;
  const auto& g = h.domain;
  const auto& hh = h.codomain;
  if (h.map.size() != g.size()) throw std::invalid_argument("hom map size mismatch");

  rep.is_homomorphism = true;
  for (Elem a = 0; a < g.size() && rep.is_homomorphism; ++a)
    for (Elem b = 0; b < g.size(); ++b)
      if (h.map[g.op(a, b)] != hh.op(h.map[a], h.map[b])) {
        rep.is_homomorphism = false;
        break;
      }

  std::vector<bool> hit(hh.size(), false);
  for (Elem a = 0; a < g.size(); ++a) hit[h.map[a]] = true;
  rep.surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });

  // every depth<=grade cylinder of the domain maps onto a set containing
  // some codomain cylinder
  rep.graded_open = true;
  for (int d = 0; d <= g.grade() && rep.graded_open; ++d) {
    for (const Stem& s : g.stems_at(d)) {
      std::vector<bool> image(hh.size(), false);
      for (Elem e : g.cylinder_members(s)) image[h.map[e]] = true;
      bool found = false;
      for (int dc = 0; dc <= hh.depth() && !found; ++dc) {
        for (const Stem& t : hh.stems_at(dc)) {
          bool inside = true;
          for (Elem e : hh.cylinder_members(t))
            if (!image[e]) {
              inside = false;
              break;
            }
          if (inside) {
            found = true;
            break;
          }
        }
      }
      if (!found) {
        rep.graded_open = false;
        break;
      }
    }
  }
  return rep;
}

Homomorphism hom_identity(const GroupModel& g) {
  Homomorphism h{g, g, {}};
  h.map.resize(g.size());
  for (Elem e = 0; e < g.size(); ++e) h.map[e] = e;
  return h;
}

Homomorphism hom_mod(const GroupModel& domain, const GroupModel& codomain) {
  if (domain.kind() != GroupKind::Product || codomain.kind() != GroupKind::Product)
    throw RefusalError("hom_mod requires product models");
  if (domain.moduli().size() != codomain.moduli().size())
    throw RefusalError("hom_mod requires equal coordinate count");
  for (std::size_t i = 0; i < domain.moduli().size(); ++i)
    if (domain.moduli()[i] % codomain.moduli()[i] != 0)
      throw RefusalError("hom_mod requires codomain moduli dividing domain moduli");
  Homomorphism h{domain, codomain, {}};
  h.map.resize(domain.size());
  for (Elem e = 0; e < domain.size(); ++e) {
    Seq x = domain.coords(e);
    Seq y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] % codomain.moduli()[i];
    h.map[e] = codomain.from_coords(y);
  }
  return h;
}

Homomorphism hom_project(const GroupModel& domain, const GroupModel& codomain) {
  if (domain.kind() != GroupKind::Product || codomain.kind() != GroupKind::Product)
    throw RefusalError("hom_project requires product models");
  std::size_t k = codomain.moduli().size();
  if (k > domain.moduli().size()) throw RefusalError("hom_project: codomain longer than domain");
  for (std::size_t i = 0; i < k; ++i)
    if (domain.moduli()[i] != codomain.moduli()[i])
      throw RefusalError("hom_project requires matching leading moduli");
  Homomorphism h{domain, codomain, {}};
  h.map.resize(domain.size());
  for (Elem e = 0; e < domain.size(); ++e) {
    Seq x = domain.coords(e);
    Seq y(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k));
    h.map[e] = codomain.from_coords(y);
  }
  return h;
}

}  // namespace covlab

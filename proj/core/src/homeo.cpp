#include "covlab/homeo.hpp"

#include <algorithm>
#include <stdexcept>

namespace covlab {

std::string rational_to_string(const Rational& r) {
  return r.str();
}

Rational rational_from_string(const std::string& s) {
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw RefusalError("not a rational: '" + s + "'");
  }
}

IntervalScheme::IntervalScheme(int window, int depth) : window_(window), depth_(depth) {
  if (window < 1 || depth < 1) throw RefusalError("scheme needs window >= 1 and depth >= 1");
  if (depth > 4 || window > 8) throw RefusalError("scheme too large to tabulate");

  // child weights 2^{-|n|} over n in {-M..M}, normalized
  Rational weight_sum = 0;
  std::vector<Rational> weight;
  for (int n = -window; n <= window; ++n) {
    Rational w = Rational(1, std::int64_t{1} << std::abs(n));
    weight.push_back(w);
    weight_sum += w;
  }
  for (auto& w : weight) w /= weight_sum;

  intervals_[{}] = RatInterval{Rational(0), Rational(1)};
  Seq cur;
  auto rec = [&](auto&& self, int level) -> void {
    if (level == depth_) return;
    const RatInterval base = intervals_.at(cur);
    Rational cursor = base.left;
    for (int n = -window_; n <= window_; ++n) {
      Rational w = weight[static_cast<std::size_t>(n + window_)] * base.length();
      cur.push_back(n);
      intervals_[cur] = RatInterval{cursor, cursor + w};
      self(self, level + 1);
      cur.pop_back();
      cursor += w;
    }
  };
  rec(rec, 0);
}

const RatInterval& IntervalScheme::interval(const Seq& stem) const {
  auto it = intervals_.find(stem);
  if (it == intervals_.end()) throw RefusalError("stem outside the scheme window: " + join(stem));
  return it->second;
}

std::vector<RatInterval> IntervalScheme::u_set(int k, int i) const {
  if (k < 0 || k >= depth_) throw RefusalError("u_set level out of range");
  if (!in_window(i)) throw RefusalError("u_set label outside the window");
  std::vector<RatInterval> out;
  for (const auto& [stem, iv] : intervals_) {
    if (static_cast<int>(stem.size()) == k + 1 && stem[static_cast<std::size_t>(k)] == i)
      out.push_back(iv);
  }
  std::sort(out.begin(), out.end(),
            [](const RatInterval& a, const RatInterval& b) { return a.left < b.left; });
  return out;
}

std::vector<Seq> IntervalScheme::stems() const {
  std::vector<Seq> out;
  for (const auto& [stem, iv] : intervals_) out.push_back(stem);
  std::sort(out.begin(), out.end(), [](const Seq& a, const Seq& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

bool IntervalScheme::is_endpoint(const Rational& x) const {
  for (const auto& [stem, iv] : intervals_)
    if (x == iv.left || x == iv.right) return true;
  return false;
}

Seq IntervalScheme::locate(const Rational& x) const {
  if (is_endpoint(x)) throw RefusalError("point lies on a scheme endpoint");
  if (!(Rational(0) < x && x < Rational(1))) throw RefusalError("point outside (0,1)");
  Seq addr;
  for (int level = 0; level < depth_; ++level) {
    bool found = false;
    for (int n = -window_; n <= window_; ++n) {
      addr.push_back(n);
      if (interval(addr).contains(x)) {
        found = true;
        break;
      }
      addr.pop_back();
    }
    if (!found) throw std::logic_error("non-endpoint escaped every child interval");
  }
  return addr;
}

PLHomeo PLHomeo::identity() {
  return from_breakpoints({{Rational(0), Rational(0)}, {Rational(1), Rational(1)}});
}

PLHomeo PLHomeo::from_breakpoints(std::vector<std::pair<Rational, Rational>> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (pts.empty() || pts.front().first != 0 || pts.front().second != 0 ||
      pts.back().first != 1 || pts.back().second != 1)
    throw RefusalError("breakpoints must fix 0 and 1");
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!(pts[i - 1].first < pts[i].first) || !(pts[i - 1].second < pts[i].second))
      throw RefusalError("breakpoints must be strictly increasing in both coordinates");
  }
  PLHomeo h;
  h.pts_ = std::move(pts);
  return h;
}

Rational PLHomeo::operator()(const Rational& x) const {
  if (x < 0 || x > 1) throw RefusalError("argument outside [0,1]");
  auto it = std::lower_bound(pts_.begin(), pts_.end(), x,
                             [](const auto& p, const Rational& v) { return p.first < v; });
  if (it != pts_.end() && it->first == x) return it->second;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  return lo.second + (hi.second - lo.second) * (x - lo.first) / (hi.first - lo.first);
}

PLHomeo PLHomeo::inverse() const {
  std::vector<std::pair<Rational, Rational>> flipped;
  flipped.reserve(pts_.size());
  for (const auto& [x, y] : pts_) flipped.emplace_back(y, x);
  return from_breakpoints(std::move(flipped));
}

PLHomeo PLHomeo::compose(const PLHomeo& outer, const PLHomeo& inner) {
  std::vector<std::pair<Rational, Rational>> pts;
  for (const auto& [x, y] : inner.pts_) pts.emplace_back(x, outer(y));
  PLHomeo inv = inner.inverse();
  for (const auto& [x, y] : outer.pts_) pts.emplace_back(inv(x), outer(x));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return from_breakpoints(std::move(pts));
}

bool PLHomeo::is_identity() const {
  for (const auto& [x, y] : pts_)
    if (x != y) return false;
  return true;
}

BranchHomeoResult branch_to_homeo(const IntervalScheme& scheme, const Seq& branch) {
  if (static_cast<int>(branch.size()) != scheme.depth())
    throw RefusalError("branch length must equal scheme depth");
  for (int v : branch)
    if (!scheme.in_window(v))
      throw RefusalError("branch label outside the window: " + join(branch));

  BranchHomeoResult res{PLHomeo::identity(), {}, {}};
  std::map<Rational, Rational> pins;          // input endpoint -> image
  std::map<Rational, Rational> used_outputs;  // image -> input endpoint
  pins[Rational(0)] = Rational(0);
  used_outputs[Rational(0)] = Rational(0);
  pins[Rational(1)] = Rational(1);
  used_outputs[Rational(1)] = Rational(1);

  for (const Seq& s : scheme.stems()) {  // shallow nodes first, so they win conflicts
    if (s.empty()) continue;
    Seq t(s.size());
    bool inside = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
      t[i] = s[i] + branch[i];
      if (!scheme.in_window(t[i])) inside = false;
    }
    if (!inside) {
      res.out_of_window.push_back(s);
      continue;
    }
    Rational in = scheme.left_endpoint(s);
    Rational out = scheme.left_endpoint(t);
    auto it = pins.find(in);
    if (it != pins.end()) {
      // a leftmost-child chain reuses its ancestor's endpoint; a deeper
      // constraint at the same point cannot be honored
      if (it->second != out) res.boundary_conflicts.push_back(s);
      continue;
    }
    auto out_it = used_outputs.find(out);
    if (out_it != used_outputs.end()) {
      // the shifted node collapsed onto an already-pinned image
      if (out_it->second != in) res.boundary_conflicts.push_back(s);
      continue;
    }
    pins[in] = out;
    used_outputs[out] = in;
  }
  std::vector<std::pair<Rational, Rational>> pts;
  pts.reserve(pins.size());
  for (const auto& [in, out] : pins) pts.emplace_back(in, out);
  res.homeo = PLHomeo::from_breakpoints(std::move(pts));
  return res;
}

BranchContainmentReport check_branch_containment(const IntervalScheme& scheme, const Seq& branch,
                                                 const BranchHomeoResult& built) {
  BranchContainmentReport rep;
  for (int k = 0; k < scheme.depth(); ++k) {
    for (const Seq& s : scheme.stems()) {
      if (static_cast<int>(s.size()) != k + 1 || s[static_cast<std::size_t>(k)] != 0) continue;
      ContainmentCheck chk;
      chk.stem = s;
      Seq t(s.size());
      bool inside = true;
      for (std::size_t i = 0; i < s.size(); ++i) {
        t[i] = s[i] + branch[i];
        if (!scheme.in_window(t[i])) inside = false;
      }
      if (!inside) {
        chk.status = ContainStatus::Unverified;
        rep.checks.push_back(chk);
        continue;
      }
      const RatInterval& src = scheme.interval(s);
      const RatInterval& dst = scheme.interval(t);
      // the increasing PL map sends (l, r) onto (h(l), h(r))
      Rational img_l = built.homeo(src.left);
      Rational img_r = built.homeo(src.right);
      if (img_l >= dst.left && img_r <= dst.right) {
        chk.status = ContainStatus::Verified;
      } else {
        // containment can only miss where an endpoint was not pinned by
        // in-window data; pinned endpoints landing wrong would be a
        // construction defect
        bool pinned = img_l == dst.left && img_r == dst.right;
        chk.status = pinned ? ContainStatus::Failed : ContainStatus::Unverified;
      }
      rep.checks.push_back(chk);
    }
  }
  for (const auto& c : rep.checks) {
    if (c.status == ContainStatus::Verified) ++rep.verified;
    else if (c.status == ContainStatus::Unverified) ++rep.unverified;
    else ++rep.failed;
  }
  return rep;
}

WitnessPointReport check_homeo_witness(const IntervalScheme& scheme, const Rational& p0,
                                       const std::vector<Seq>& branches) {
  if (!(Rational(0) < p0 && p0 < Rational(1))) throw RefusalError("p0 must lie in (0,1)");
  if (scheme.is_endpoint(p0)) throw RefusalError("p0 lies on a scheme endpoint");

  WitnessPointReport rep;
  Seq addr = scheme.locate(p0);
  for (int k = 0; k < scheme.depth(); ++k)
    if (addr[static_cast<std::size_t>(k)] == 0) rep.b_levels.push_back(k);

  struct Built {
    Seq branch;
    BranchHomeoResult res;
    Rational image;
  };
  std::vector<Built> built;
  for (const Seq& b : branches) {
    bool shift_ok = true;
    for (int k = 0; k < scheme.depth(); ++k) {
      int digit = addr[static_cast<std::size_t>(k)] + b[static_cast<std::size_t>(k)];
      if (digit < -scheme.window() || digit > scheme.window()) shift_ok = false;
    }
    if (!shift_ok) {
      rep.refused_branches.push_back(b);
      continue;
    }
    BranchHomeoResult r = branch_to_homeo(scheme, b);
    Rational image = r.homeo(p0);
    rep.containment.push_back(check_branch_containment(scheme, b, r));
    built.push_back(Built{b, std::move(r), std::move(image)});
  }

  rep.disjointness_ok = true;
  for (int k : rep.b_levels) {
    for (std::size_t i = 0; i < built.size(); ++i) {
      for (std::size_t j = i + 1; j < built.size(); ++j) {
        int bi = built[i].branch[static_cast<std::size_t>(k)];
        int bj = built[j].branch[static_cast<std::size_t>(k)];
        if (bi == bj) continue;
        // tracked images must land in the disjoint U_k sets of their labels
        auto in_u = [&](const Rational& x, int label) {
          for (const RatInterval& iv : scheme.u_set(k, label))
            if (iv.contains(x)) return true;
          return false;
        };
        int ti = addr[static_cast<std::size_t>(k)] + bi;
        int tj = addr[static_cast<std::size_t>(k)] + bj;
        if (!scheme.in_window(ti) || !scheme.in_window(tj)) continue;
        if (!in_u(built[i].image, ti) || !in_u(built[j].image, tj) ||
            built[i].image == built[j].image)
          rep.disjointness_ok = false;
      }
    }
  }
  return rep;
}

LiftCheck lift_product(const PLHomeo& h, int grid) {
  auto lift = [&](const Rational& x, const Rational& y) {
    return std::pair<Rational, Rational>{h(x), y};
  };
  auto project = [](const std::pair<Rational, Rational>& p) { return p.first; };

  LiftCheck chk;
  chk.intertwines = true;
  chk.preserves_second = true;
  for (int i = 1; i <= grid; ++i) {
    for (int j = 1; j <= grid; ++j) {
      Rational x = Rational(i) / (grid + 1);
      Rational y = Rational(j) / (grid + 1);
      auto lifted = lift(x, y);
      if (project(lifted) != h(project({x, y}))) chk.intertwines = false;
      if (lifted.second != y) chk.preserves_second = false;
      ++chk.grid_points;
    }
  }
  return chk;
}

}  // namespace covlab

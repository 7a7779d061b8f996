#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covlab/profile.hpp"
#include "covlab/util.hpp"

namespace covlab {

// All arithmetic in this module is exact; no floating point anywhere.
using Rational = boost::multiprecision::cpp_rational;

std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

struct RatInterval {
  Rational left;
  Rational right;  // open interval (left, right)
  bool contains(const Rational& x) const { return left < x && x < right; }
  Rational length() const { return right - left; }
};

// Nested contiguous rational subintervals of (0,1) indexed by integer
// strings over the window {-M..M}. Within each interval the children get
// widths proportional to 2^{-|n|}, which keeps depth-k lengths below 2^{-k}.
// Left endpoints are ordered exactly like the lexicographic order on stems,
// except that a leftmost-child chain shares its ancestor's left endpoint.
class IntervalScheme {
 public:
  IntervalScheme(int window, int depth);

  int window() const { return window_; }
  int depth() const { return depth_; }
  bool in_window(int label) const { return label >= -window_ && label <= window_; }

  const RatInterval& interval(const Seq& stem) const;
  Rational left_endpoint(const Seq& stem) const { return interval(stem).left; }

  // U_k^i = union of the I_s with |s| = k+1 and s(k) = i, sorted by left end
  std::vector<RatInterval> u_set(int k, int i) const;

  // every node stem of depth <= depth(), lexicographic within each depth
  std::vector<Seq> stems() const;

  bool is_endpoint(const Rational& x) const;
  // digits of the unique interval chain containing x at every depth;
  // refuses endpoints
  Seq locate(const Rational& x) const;

 private:
  int window_;
  int depth_;
  std::map<Seq, RatInterval> intervals_;
};

// Piecewise-linear increasing bijection of [0,1] fixing the endpoints,
// stored as breakpoints. Composition and inversion stay in the type.
class PLHomeo {
 public:
  static PLHomeo identity();
  static PLHomeo from_breakpoints(std::vector<std::pair<Rational, Rational>> pts);

  Rational operator()(const Rational& x) const;
  PLHomeo inverse() const;
  static PLHomeo compose(const PLHomeo& outer, const PLHomeo& inner);  // outer after inner

  const std::vector<std::pair<Rational, Rational>>& breakpoints() const { return pts_; }
  bool is_identity() const;

 private:
  std::vector<std::pair<Rational, Rational>> pts_;  // strictly increasing in both coords
};

struct BranchHomeoResult {
  PLHomeo homeo;
  std::vector<Seq> out_of_window;  // nodes whose shift left the window
  std::vector<Seq> boundary_conflicts;  // deeper nodes sharing an endpoint with a
                                        // conflicting image; reported, never silently passed
};

// h(a_s) = a_{s+b} interpolated linearly between consecutive pinned
// endpoints. Nodes whose shift leaves the window are skipped and reported;
// refuses when a whole level has no pinned node.
BranchHomeoResult branch_to_homeo(const IntervalScheme& scheme, const Seq& branch);

enum class ContainStatus { Verified, Unverified, Failed };

struct ContainmentCheck {
  Seq stem;
  ContainStatus status = ContainStatus::Unverified;
};

struct BranchContainmentReport {
  std::vector<ContainmentCheck> checks;
  std::size_t verified = 0, unverified = 0, failed = 0;
  bool ok() const { return failed == 0; }
};

// h(I_s) inside I_{s+b} for every depth-(k+1) node with s(k) = 0; the level-k
// statement h(U_k^0 cap window) subset U_k^{b(k)}.
BranchContainmentReport check_branch_containment(const IntervalScheme& scheme, const Seq& branch,
                                                 const BranchHomeoResult& built);

struct WitnessPointReport {
  std::vector<int> b_levels;                    // k with p0 in U_k^0
  bool disjointness_ok = false;                 // tracked p0 images land in disjoint U sets
  std::vector<Seq> refused_branches;            // out-of-window branches, recorded not failed
  std::vector<BranchContainmentReport> containment;
};

WitnessPointReport check_homeo_witness(const IntervalScheme& scheme, const Rational& p0,
                                       const std::vector<Seq>& branches);

// The product lift (x,y) -> (h(x), y); the projection to the first
// coordinate intertwines exactly.
struct LiftCheck {
  std::uint64_t grid_points = 0;
  bool intertwines = false;
  bool preserves_second = false;
};
LiftCheck lift_product(const PLHomeo& h, int grid = 32);

}  // namespace covlab

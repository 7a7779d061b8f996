#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covlab/profile.hpp"

namespace covlab {

// x covers g when x(i) != g(i) at every coordinate.
bool ed_covers(const Seq& x, const Seq& g);

enum class FamilyStatus { Unverified, VerifiedCovering, Refuted, SampledOk };
std::string to_string(FamilyStatus s);
FamilyStatus family_status_from_string(const std::string& s);

struct EDFamily {
  Profile profile;
  std::vector<Seq> members;
  FamilyStatus status = FamilyStatus::Unverified;
  std::optional<Seq> refutation;  // lexicographically least uncovered g
  std::optional<std::uint64_t> sample_seed;
  std::uint64_t sample_count = 0;

  EDFamily(Profile p, std::vector<Seq> m);
  std::size_t size() const { return members.size(); }
};

struct VerifyOptions {
  std::uint64_t budget = kDefaultBudget;
  std::optional<std::uint64_t> seed;  // required when the space exceeds the budget
  std::uint64_t samples = 100000;
};

// Exhaustive when the space fits the budget; otherwise seeded sampling with
// an explicit SampledOk status, never a silent downgrade.
EDFamily verify_family(EDFamily family, const VerifyOptions& opts = {});

struct BoundReport {
  std::uint64_t counting_lb = 0;
  std::uint64_t pair_lb = 0;
  std::optional<std::uint64_t> greedy_ub;
  std::optional<std::uint64_t> exact;
};

// counting_lb = ceil(prod f / prod (f-1)). pair_lb = 3 for n >= 2: any two
// members are defeated by g agreeing with the first at coordinate 0 and the
// second at coordinate 1.
BoundReport eq_lower_bound(const Profile& profile);

// Max-new-coverage greedy, ties broken by lexicographically least candidate.
EDFamily eq_greedy(const Profile& profile, std::uint64_t budget = kDefaultBudget);

struct EqResult {
  BoundReport bounds;
  std::optional<EDFamily> family;  // verified minimal covering family when exact present
};

// Exact minimum via depth-first search branching on coverers of the least
// uncovered sequence. Symmetry reduction: per-coordinate value bijections let
// the first member be normalized to the all-ones sequence. Minimality is
// certified by exhausting size exact-1 with the same search.
EqResult eq_exact(const Profile& profile, std::uint64_t budget = kDefaultBudget);

// {constant-j : j < alphabet}; covering by pigeonhole when alphabet > length.
EDFamily diagonal_family(int alphabet, int length);

// families import/export as CSV rows of digits
std::string family_to_csv(const std::vector<Seq>& members);
std::vector<Seq> family_from_csv(const std::string& text);

}  // namespace covlab

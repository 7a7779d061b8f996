#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "covlab/util.hpp"

namespace covlab {

using Seq = std::vector<int>;

// Finite alphabet-size vector f(0..n-1) describing the product space
// prod f(i). Alphabets of size 1 are rejected: with a unary coordinate
// everywhere-difference is impossible.
class Profile {
 public:
  explicit Profile(std::vector<int> sizes);
  static Profile parse(const std::string& csv);  // "3,3"

  const std::vector<int>& sizes() const { return sizes_; }
  int length() const { return static_cast<int>(sizes_.size()); }
  int size_at(int i) const { return sizes_[static_cast<std::size_t>(i)]; }
  std::uint64_t cardinality() const { return cardinality_; }
  bool constant() const;

  // ceil(prod f(i) / prod (f(i)-1)); the denominator is the number of
  // sequences a single member everywhere-differs from.
  std::uint64_t member_coverage() const;

  bool contains(const Seq& x) const;
  std::string to_string() const { return join(sizes_); }

  // lexicographic index <-> sequence
  Seq unrank(std::uint64_t index) const;
  std::uint64_t rank(const Seq& x) const;

  bool operator==(const Profile& o) const { return sizes_ == o.sizes_; }
  bool operator<(const Profile& o) const { return sizes_ < o.sizes_; }

 private:
  std::vector<int> sizes_;
  std::uint64_t cardinality_ = 0;
};

// Yields every element of prod f(i) exactly once, in lexicographic order.
// Refuses when the cardinality exceeds the budget, naming the required one.
void enumerate_space(const Profile& profile, std::uint64_t budget,
                     const std::function<void(const Seq&)>& fn);
std::vector<Seq> enumerate_space(const Profile& profile,
                                 std::uint64_t budget = kDefaultBudget);

}  // namespace covlab

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace covlab {

inline constexpr const char* kToolVersion = "0.1.0";

// Default cap on exhaustively enumerated universes. Overridable per call
// and, at the CLI layer, through the COVLAB_BUDGET environment variable.
inline constexpr std::uint64_t kDefaultBudget = 1u << 20;

// Precondition failures that are part of the contract (invalid construction,
// budget refusals, out-of-window requests). The CLI maps these to exit code 2.
class RefusalError : public std::runtime_error {
 public:
  explicit RefusalError(const std::string& what) : std::runtime_error(what) {}
};

// a*b with overflow detection; instances whose cardinality overflows are
// rejected rather than silently truncated.
inline std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
  return r;
}

inline std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) {
  return a / b + (a % b != 0);
}

// FNV-1a, used for stable config hashes in result records.
inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Deterministic seeded RNG. splitmix64 keeps sampled runs reproducible
// across standard libraries (std::uniform_int_distribution is not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below(0)");
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
  }

  std::int64_t in_range(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

std::vector<std::string> split(const std::string& s, char sep);
std::string join(const std::vector<int>& v, char sep = ',');
std::vector<int> parse_int_list(const std::string& s, char sep = ',');
std::string trim(const std::string& s);

}  // namespace covlab

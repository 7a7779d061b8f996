#include "covlab/profile.hpp"

#include <sstream>
#include <stdexcept>

namespace covlab {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string join(const std::vector<int>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out.push_back(sep);
    out += std::to_string(v[i]);
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<int> parse_int_list(const std::string& s, char sep) {
  std::vector<int> out;
  for (const auto& part : split(s, sep)) {
    const std::string t = trim(part);
    if (t.empty()) throw RefusalError("empty entry in integer list: '" + s + "'");
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(t, &pos);
    } catch (const std::exception&) {
      throw RefusalError("not an integer: '" + t + "'");
    }
    if (pos != t.size()) throw RefusalError("not an integer: '" + t + "'");
    out.push_back(v);
  }
  return out;
}

Profile::Profile(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw RefusalError("profile must have length >= 1");
  std::uint64_t card = 1;
  for (int m : sizes_) {
    if (m < 2) throw RefusalError("profile alphabet sizes must be >= 2, got " + std::to_string(m));
    auto next = checked_mul(card, static_cast<std::uint64_t>(m));
    if (!next) throw RefusalError("profile cardinality overflows 64 bits; instance rejected");
    card = *next;
  }
  cardinality_ = card;
}

Profile Profile::parse(const std::string& csv) { return Profile(parse_int_list(csv)); }

bool Profile::constant() const {
  for (int m : sizes_)
    if (m != sizes_[0]) return false;
  return true;
}

std::uint64_t Profile::member_coverage() const {
  std::uint64_t c = 1;
  for (int m : sizes_) c *= static_cast<std::uint64_t>(m - 1);
  return c;
}

bool Profile::contains(const Seq& x) const {
  if (x.size() != sizes_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < 0 || x[i] >= sizes_[i]) return false;
  return true;
}

Seq Profile::unrank(std::uint64_t index) const {
  Seq x(sizes_.size());
  for (std::size_t i = sizes_.size(); i-- > 0;) {
    x[i] = static_cast<int>(index % static_cast<std::uint64_t>(sizes_[i]));
    index /= static_cast<std::uint64_t>(sizes_[i]);
  }
  return x;
}

std::uint64_t Profile::rank(const Seq& x) const {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < sizes_.size(); ++i)
    r = r * static_cast<std::uint64_t>(sizes_[i]) + static_cast<std::uint64_t>(x[i]);
  return r;
}

void enumerate_space(const Profile& profile, std::uint64_t budget,
                     const std::function<void(const Seq&)>& fn) {
  if (profile.cardinality() > budget) {
    throw RefusalError("enumeration budget exceeded: space has " +
                       std::to_string(profile.cardinality()) + " elements, budget " +
                       std::to_string(budget) + "; required budget " +
                       std::to_string(profile.cardinality()));
  }
  Seq x(static_cast<std::size_t>(profile.length()), 0);
  for (;;) {
    fn(x);
    int i = profile.length() - 1;
    while (i >= 0 && x[static_cast<std::size_t>(i)] + 1 == profile.size_at(i)) {
      x[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++x[static_cast<std::size_t>(i)];
  }
}

std::vector<Seq> enumerate_space(const Profile& profile, std::uint64_t budget) {
  std::vector<Seq> out;
  out.reserve(profile.cardinality());
  enumerate_space(profile, budget, [&](const Seq& x) { out.push_back(x); });
  return out;
}

}  // namespace covlab

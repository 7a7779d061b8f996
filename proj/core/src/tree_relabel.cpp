#include "covlab/tree_relabel.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace covlab {

PrunedTree PrunedTree::from_map(int depth, std::map<Seq, std::vector<int>> succ) {
  PrunedTree t;
  t.depth = depth;
  t.succ = std::move(succ);
  if (depth < 1) throw RefusalError("tree depth must be >= 1");
  if (!t.succ.count(Seq{})) throw RefusalError("tree must contain the root stem");
  for (auto& [node, sigma] : t.succ) {
    if (static_cast<int>(node.size()) >= depth)
      throw RefusalError("tree node at or beyond leaf depth: " + join(node));
    std::sort(sigma.begin(), sigma.end());
    sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
    if (sigma.empty()) throw RefusalError("empty successor set at node " + join(node));
    if (!node.empty()) {
      Seq parent(node.begin(), node.end() - 1);
      auto it = t.succ.find(parent);
      if (it == t.succ.end() ||
          !std::binary_search(it->second.begin(), it->second.end(), node.back()))
        throw RefusalError("node not reachable from parent: " + join(node));
    }
  }
  // interior nodes must be present
  for (const auto& [node, sigma] : t.succ) {
    if (static_cast<int>(node.size()) + 1 >= depth) continue;
    for (int a : sigma) {
      Seq child = node;
      child.push_back(a);
      if (!t.succ.count(child))
        throw RefusalError("missing interior node: " + join(child));
    }
  }
  return t;
}

PrunedTree PrunedTree::full(const std::vector<int>& widths) {
  PrunedTree t;
  t.depth = static_cast<int>(widths.size());
  Seq cur;
  auto rec = [&](auto&& self, int level) -> void {
    if (level >= t.depth) return;
    std::vector<int> sigma(static_cast<std::size_t>(widths[static_cast<std::size_t>(level)]));
    for (std::size_t i = 0; i < sigma.size(); ++i) sigma[i] = static_cast<int>(i);
    t.succ[cur] = sigma;
    for (int a : sigma) {
      cur.push_back(a);
      self(self, level + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return t;
}

PrunedTree PrunedTree::injective(int labels, int depth) {
  if (depth > labels) throw RefusalError("injective tree needs labels >= depth");
  PrunedTree t;
  t.depth = depth;
  Seq cur;
  std::vector<bool> used(static_cast<std::size_t>(labels), false);
  auto rec = [&](auto&& self, int level) -> void {
    if (level >= depth) return;
    std::vector<int> sigma;
    for (int a = 0; a < labels; ++a)
      if (!used[static_cast<std::size_t>(a)]) sigma.push_back(a);
    t.succ[cur] = sigma;
    for (int a : sigma) {
      used[static_cast<std::size_t>(a)] = true;
      cur.push_back(a);
      self(self, level + 1);
      cur.pop_back();
      used[static_cast<std::size_t>(a)] = false;
    }
  };
  rec(rec, 0);
  return t;
}

const std::vector<int>& PrunedTree::sigma(const Seq& node) const {
  auto it = succ.find(node);
  if (it == succ.end()) throw std::invalid_argument("not a tree node: " + join(node));
  return it->second;
}

int PrunedTree::min_width() const {
  int w = -1;
  for (const auto& [node, sigma] : succ) {
    int s = static_cast<int>(sigma.size());
    if (w < 0 || s < w) w = s;
  }
  return w;
}

bool PrunedTree::sigma_disjoint() const {
  std::set<int> seen;
  for (const auto& [node, sigma] : succ)
    for (int a : sigma)
      if (!seen.insert(a).second) return false;
  return true;
}

bool PrunedTree::is_subtree_of(const PrunedTree& other) const {
  if (depth != other.depth) return false;
  for (const auto& [node, sigma] : succ) {
    auto it = other.succ.find(node);
    if (it == other.succ.end()) return false;
    if (!std::includes(it->second.begin(), it->second.end(), sigma.begin(), sigma.end()))
      return false;
  }
  return true;
}

std::vector<Seq> PrunedTree::branches() const {
  std::vector<Seq> out;
  Seq cur;
  auto rec = [&](auto&& self, int level) -> void {
    if (level == depth) {
      out.push_back(cur);
      return;
    }
    for (int a : sigma(cur)) {
      cur.push_back(a);
      self(self, level + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<int> PrunedTree::all_labels() const {
  std::set<int> labels;
  for (const auto& [node, sigma] : succ) labels.insert(sigma.begin(), sigma.end());
  return {labels.begin(), labels.end()};
}

std::string PrunedTree::to_text() const {
  std::string out = "depth " + std::to_string(depth) + "\n";
  for (const auto& [node, sigma] : succ) {  // std::map iterates stems sorted
    out += node.empty() ? "." : join(node);
    out += " : ";
    out += join(sigma);
    out.push_back('\n');
  }
  return out;
}

PrunedTree PrunedTree::from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int depth = -1;
  std::map<Seq, std::vector<int>> succ;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("depth ", 0) == 0) {
      depth = std::stoi(line.substr(6));
      continue;
    }
    auto pos = line.find(" : ");
    if (pos == std::string::npos) throw RefusalError("bad tree line: '" + line + "'");
    std::string stem_s = trim(line.substr(0, pos));
    Seq stem = stem_s == "." ? Seq{} : parse_int_list(stem_s);
    succ[stem] = parse_int_list(trim(line.substr(pos + 3)));
  }
  if (depth < 0) throw RefusalError("tree text missing 'depth' header");
  return PrunedTree::from_map(depth, std::move(succ));
}

PrunedTree normalize_disjoint(const PrunedTree& tree, int width) {
  if (width < 1) throw RefusalError("width must be >= 1");
  if (tree.min_width() < width)
    throw RefusalError("tree has a node of width below " + std::to_string(width));

  PrunedTree out;
  out.depth = tree.depth;
  std::set<int> used;
  std::deque<Seq> queue;
  queue.push_back(Seq{});
  while (!queue.empty()) {
    Seq node = queue.front();
    queue.pop_front();
    std::vector<int> pick;
    for (int a : tree.sigma(node)) {
      if (used.count(a)) continue;
      pick.push_back(a);
      if (static_cast<int>(pick.size()) == width) break;
    }
    if (static_cast<int>(pick.size()) < width)
      throw RefusalError("insufficient labels to disjointify at node " +
                         (node.empty() ? std::string(".") : join(node)));
    used.insert(pick.begin(), pick.end());
    out.succ[node] = pick;
    if (static_cast<int>(node.size()) + 1 < out.depth) {
      for (int a : pick) {
        Seq child = node;
        child.push_back(a);
        queue.push_back(child);
      }
    }
  }
  return out;
}

PsiSystem PsiSystem::standard(const PrunedTree& tree, int width) {
  if (tree.min_width() < width)
    throw RefusalError("tree width below requested psi width");
  PsiSystem psi;
  psi.width = width;
  for (const auto& [node, sigma] : tree.succ) {
    std::vector<int> image(sigma.begin(), sigma.begin() + width);
    psi.range[node] = image;
  }
  return psi;
}

int PsiSystem::apply(const Seq& node, int value) const {
  auto it = range.find(node);
  if (it == range.end())
    throw RefusalError("psi undefined at node " + (node.empty() ? std::string(".") : join(node)));
  if (value < 0 || value >= width) throw RefusalError("psi argument out of range");
  return it->second[static_cast<std::size_t>(value)];
}

std::optional<int> PsiSystem::invert(const Seq& node, int label) const {
  auto it = range.find(node);
  if (it == range.end()) return std::nullopt;
  for (std::size_t i = 0; i < it->second.size(); ++i)
    if (it->second[i] == label) return static_cast<int>(i);
  return std::nullopt;
}

Seq relabel(const Seq& f, const PrunedTree& tree, const PsiSystem& psi) {
  if (static_cast<int>(f.size()) != tree.depth)
    throw RefusalError("sequence length must equal tree depth");
  Seq branch;
  for (int level = 0; level < tree.depth; ++level)
    branch.push_back(psi.apply(branch, f[static_cast<std::size_t>(level)]));
  return branch;
}

Seq gamma_map(const Seq& g, const PrunedTree& tree, const PsiSystem& psi) {
  if (static_cast<int>(g.size()) != tree.depth)
    throw RefusalError("sequence length must equal tree depth");
  // owner node per label; Sigma sets are disjoint on normalized trees, and
  // on overlapping trees the least owner stands in for "the unique node"
  std::map<int, Seq> owner;
  for (const auto& [node, sigma] : tree.succ)
    for (int a : sigma)
      owner.emplace(a, node);
  Seq out;
  for (int k = 0; k < tree.depth; ++k) {
    int label = g[static_cast<std::size_t>(k)];
    auto it = owner.find(label);
    if (it == owner.end()) {
      out.push_back(0);
      continue;
    }
    auto inv = psi.invert(it->second, label);
    out.push_back(inv ? *inv : 0);
  }
  return out;
}

TransferResult transfer_family(const EDFamily& fstar, const PrunedTree& tree,
                               const PsiSystem& psi, std::uint64_t budget) {
  if (fstar.status != FamilyStatus::VerifiedCovering)
    throw RefusalError("transfer requires a verified covering family");
  if (fstar.profile.length() != tree.depth)
    throw RefusalError("family length must equal tree depth");
  for (int m : fstar.profile.sizes())
    if (m != psi.width)
      throw RefusalError("family profile must be the constant width-profile");

  TransferResult res;
  for (const Seq& f : fstar.members) res.branches.push_back(relabel(f, tree, psi));

  std::vector<int> labels = tree.all_labels();
  res.fresh_label = labels.empty() ? 0 : labels.back() + 1;
  labels.push_back(res.fresh_label);

  std::uint64_t universe = 1;
  for (int k = 0; k < tree.depth; ++k) {
    auto next = checked_mul(universe, labels.size());
    if (!next || *next > budget)
      throw RefusalError("label universe exceeds budget");
    universe = *next;
  }
  res.universe_size = universe;

  Seq g(static_cast<std::size_t>(tree.depth));
  std::vector<std::size_t> idx(static_cast<std::size_t>(tree.depth), 0);
  res.verified = true;
  for (;;) {
    for (std::size_t i = 0; i < idx.size(); ++i) g[i] = labels[idx[i]];
    bool hit = false;
    for (const Seq& b : res.branches)
      if (ed_covers(b, g)) {
        hit = true;
        break;
      }
    if (!hit) {
      res.verified = false;
      res.counterexample = g;
      return res;
    }
    std::size_t i = idx.size();
    while (i > 0 && idx[i - 1] + 1 == labels.size()) idx[--i] = 0;
    if (i == 0) break;
    ++idx[i - 1];
  }
  return res;
}

}  // namespace covlab

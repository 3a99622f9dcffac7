#include "aisemi/structure.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace aisemi {

Partition::Partition(std::size_t size, std::vector<std::vector<Element>> blocks)
    : block_of_(size, size) {
  std::vector<bool> seen(size, false);
  for (auto& b : blocks) {
    if (b.empty()) throw AlgebraError("empty block");
    std::sort(b.begin(), b.end());
    for (auto e : b) {
      if (e < 0 || static_cast<std::size_t>(e) >= size) {
        throw AlgebraError("block element out of range");
      }
      if (seen[e]) throw AlgebraError("blocks overlap");
      seen[e] = true;
    }
    blocks_.push_back(std::move(b));
  }
  for (std::size_t e = 0; e < size; ++e) {
    if (!seen[e]) blocks_.push_back({static_cast<Element>(e)});
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    for (auto e : blocks_[i]) block_of_[e] = i;
}

Partition Partition::discrete(std::size_t size) { return Partition(size, {}); }

Partition Partition::total(std::size_t size) {
  std::vector<Element> all(size);
  std::iota(all.begin(), all.end(), 0);
  return Partition(size, {all});
}

Partition Partition::parse(const FiniteAiSemiring& s, std::string_view text) {
  std::vector<std::vector<Element>> blocks;
  std::string spec(text);
  std::istringstream blocks_in(spec);
  for (std::string block; std::getline(blocks_in, block, '|');) {
    std::vector<Element> b;
    std::istringstream items(block);
    for (std::string item; std::getline(items, item, ',');) {
      auto first = item.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      auto last = item.find_last_not_of(" \t");
      b.push_back(s.index_of(item.substr(first, last - first + 1)));
    }
    if (!b.empty()) blocks.push_back(std::move(b));
  }
  return Partition(s.size(), std::move(blocks));
}

std::string to_string(const FiniteAiSemiring& s, const Partition& p) {
  std::string out;
  for (const auto& b : p.blocks()) {
    if (!out.empty()) out += "|";
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) out += ",";
      out += s.label(b[i]);
    }
  }
  return out;
}

Partition meet(const Partition& a, const Partition& b) {
  std::vector<std::vector<Element>> blocks;
  for (const auto& x : a.blocks()) {
    for (const auto& y : b.blocks()) {
      std::vector<Element> both;
      std::set_intersection(x.begin(), x.end(), y.begin(), y.end(),
                            std::back_inserter(both));
      if (!both.empty()) blocks.push_back(std::move(both));
    }
  }
  return Partition(a.size(), std::move(blocks));
}

std::optional<CongruenceFailure> congruence_failure(const FiniteAiSemiring& s,
                                                    const Partition& p) {
  const auto n = static_cast<Element>(s.size());
  for (Element a = 0; a < n; ++a) {
    for (Element b = a + 1; b < n; ++b) {
      if (!p.same_block(a, b)) continue;
      for (Element c = 0; c < n; ++c) {
        if (!p.same_block(s.add(a, c), s.add(b, c)))
          return CongruenceFailure{Op::Add, a, b, c, false};
        if (!p.same_block(s.add(c, a), s.add(c, b)))
          return CongruenceFailure{Op::Add, a, b, c, true};
        if (!p.same_block(s.mul(a, c), s.mul(b, c)))
          return CongruenceFailure{Op::Mul, a, b, c, false};
        if (!p.same_block(s.mul(c, a), s.mul(c, b)))
          return CongruenceFailure{Op::Mul, a, b, c, true};
      }
    }
  }
  return std::nullopt;
}

FiniteAiSemiring quotient(const FiniteAiSemiring& s, const Partition& p) {
  if (auto f = congruence_failure(s, p)) {
    throw AlgebraError("partition " + to_string(s, p) +
                       " is not a congruence: " + s.label(f->a) + " ~ " +
                       s.label(f->b) + " but not under " +
                       (f->op == Op::Add ? "+ " : "* ") + s.label(f->c));
  }
  const auto& blocks = p.blocks();
  const std::size_t k = blocks.size();
  std::vector<std::string> labels;
  for (const auto& b : blocks) {
    std::string l = "{";
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) l += ",";
      l += s.label(b[i]);
    }
    labels.push_back(l + "}");
  }
  Table add(k, std::vector<Element>(k)), mul(k, std::vector<Element>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      add[i][j] = static_cast<Element>(p.block_of(s.add(blocks[i][0], blocks[j][0])));
      mul[i][j] = static_cast<Element>(p.block_of(s.mul(blocks[i][0], blocks[j][0])));
    }
  }
  return FiniteAiSemiring(s.name() + "/" + to_string(s, p), std::move(labels),
                          add, mul);
}

FiniteAiSemiring subalgebra(const FiniteAiSemiring& s,
                            const std::vector<Element>& subset) {
  if (subset.empty()) throw AlgebraError("empty subset");
  std::vector<Element> elems = subset;
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  std::vector<int> pos(s.size(), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<int>(i);

  const std::size_t k = elems.size();
  Table add(k, std::vector<Element>(k)), mul(k, std::vector<Element>(k));
  std::vector<std::string> labels;
  std::string name = s.name() + "[";
  for (std::size_t i = 0; i < k; ++i) {
    labels.push_back(s.label(elems[i]));
    name += (i ? "," : "") + s.label(elems[i]);
    for (std::size_t j = 0; j < k; ++j) {
      const auto a = elems[i], b = elems[j];
      const auto sum = s.add(a, b), prod = s.mul(a, b);
      if (pos[sum] < 0 || pos[prod] < 0) {
        const bool bad_sum = pos[sum] < 0;
        throw AlgebraError("subset not closed: " + s.label(a) +
                           (bad_sum ? " + " : " * ") + s.label(b) + " = " +
                           s.label(bad_sum ? sum : prod));
      }
      add[i][j] = pos[sum];
      mul[i][j] = pos[prod];
    }
  }
  return FiniteAiSemiring(name + "]", std::move(labels), add, mul);
}

bool Homomorphism::preserves_operations() const {
  const auto n = static_cast<Element>(source->size());
  if (map.size() != source->size()) return false;
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (map[source->add(a, b)] != target->add(map[a], map[b])) return false;
      if (map[source->mul(a, b)] != target->mul(map[a], map[b])) return false;
    }
  }
  return true;
}

bool Homomorphism::is_surjective() const {
  std::vector<bool> hit(target->size(), false);
  for (auto e : map) hit[e] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
}

bool Homomorphism::is_bijective() const {
  return source->size() == target->size() && is_surjective();
}

std::optional<std::vector<Element>> find_isomorphism(const FiniteAiSemiring& a,
                                                     const FiniteAiSemiring& b) {
  if (a.size() != b.size()) return std::nullopt;
  const std::size_t n = a.size();
  std::vector<Element> map(n, -1);
  std::vector<bool> used(n, false);

  // Assign images in element order; check every pair whose operands and
  // result are already mapped.
  auto consistent = [&](Element upto) {
    for (Element x = 0; x <= upto; ++x) {
      for (Element y = 0; y <= upto; ++y) {
        if (x != upto && y != upto) continue;
        const auto s = a.add(x, y), p = a.mul(x, y);
        if (s <= upto && map[s] != b.add(map[x], map[y])) return false;
        if (p <= upto && map[p] != b.mul(map[x], map[y])) return false;
      }
    }
    return true;
  };
  auto recurse = [&](auto&& self, Element next) -> bool {
    if (static_cast<std::size_t>(next) == n) {
      return Homomorphism{&a, &b, map}.preserves_operations();
    }
    for (Element img = 0; img < static_cast<Element>(n); ++img) {
      if (used[img]) continue;
      map[next] = img;
      used[img] = true;
      if (consistent(next) && self(self, next + 1)) return true;
      used[img] = false;
      map[next] = -1;
    }
    return false;
  };
  if (recurse(recurse, 0)) return map;
  return std::nullopt;
}

FiniteAiSemiring direct_product(const FiniteAiSemiring& a,
                                const FiniteAiSemiring& b) {
  const std::size_t m = a.size(), n = b.size(), k = m * n;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      labels.push_back("(" + a.label(static_cast<Element>(i)) + "," +
                       b.label(static_cast<Element>(j)) + ")");
  std::vector<Element> add(k * k), mul(k * k);
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < k; ++y) {
      const auto xa = static_cast<Element>(x / n), xb = static_cast<Element>(x % n);
      const auto ya = static_cast<Element>(y / n), yb = static_cast<Element>(y % n);
      add[x * k + y] = static_cast<Element>(a.add(xa, ya) * static_cast<Element>(n) + b.add(xb, yb));
      mul[x * k + y] = static_cast<Element>(a.mul(xa, ya) * static_cast<Element>(n) + b.mul(xb, yb));
    }
  }
  // Componentwise tables of two ai-semirings satisfy every axiom.
  return FiniteAiSemiring::from_flat_unchecked(a.name() + "x" + b.name(),
                                               std::move(labels), std::move(add),
                                               std::move(mul));
}

SubdirectReport check_subdirect(const FiniteAiSemiring& s,
                                const Partition& theta1,
                                const Partition& theta2) {
  auto f1 = quotient(s, theta1);
  auto f2 = quotient(s, theta2);
  std::vector<Element> embedding;
  std::set<std::pair<std::size_t, std::size_t>> images;
  std::vector<bool> hit1(f1.size(), false), hit2(f2.size(), false);
  for (std::size_t e = 0; e < s.size(); ++e) {
    const auto b1 = theta1.block_of(static_cast<Element>(e));
    const auto b2 = theta2.block_of(static_cast<Element>(e));
    embedding.push_back(static_cast<Element>(b1 * f2.size() + b2));
    images.insert({b1, b2});
    hit1[b1] = hit2[b2] = true;
  }
  SubdirectReport r{
      .injective = images.size() == s.size(),
      .surjective = std::all_of(hit1.begin(), hit1.end(), [](bool h) { return h; }) &&
                    std::all_of(hit2.begin(), hit2.end(), [](bool h) { return h; }),
      .factor1 = std::move(f1),
      .factor2 = std::move(f2),
      .embedding = std::move(embedding),
  };
  return r;
}

std::vector<Partition> enumerate_congruences(const FiniteAiSemiring& s) {
  const std::size_t n = s.size();
  if (n > kMaxCongruenceSearch) {
    throw AlgebraError("congruence search limited to " +
                       std::to_string(kMaxCongruenceSearch) + " elements");
  }
  // Restricted growth strings enumerate every set partition once.
  std::vector<Partition> out;
  std::vector<std::size_t> rgs(n, 0);
  auto recurse = [&](auto&& self, std::size_t i, std::size_t max_block) -> void {
    if (i == n) {
      std::vector<std::vector<Element>> blocks(max_block + 1);
      for (std::size_t e = 0; e < n; ++e) blocks[rgs[e]].push_back(static_cast<Element>(e));
      Partition p(n, std::move(blocks));
      if (is_congruence(s, p)) out.push_back(std::move(p));
      return;
    }
    for (std::size_t b = 0; b <= max_block + 1; ++b) {
      rgs[i] = b;
      self(self, i + 1, std::max(max_block, b));
    }
  };
  if (n == 0) return out;
  rgs[0] = 0;
  recurse(recurse, 1, 0);
  return out;
}

}  // namespace aisemi

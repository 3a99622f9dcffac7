#include "aisemi/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <thread>

#include "aisemi/family.hpp"

namespace aisemi {

namespace {

void check_order(std::size_t k) {
  if (k < 1 || k > kMaxEnumerationOrder) {
    throw EnumerationError("order must be between 1 and " +
                           std::to_string(kMaxEnumerationOrder));
  }
}

const std::vector<std::vector<Element>>& permutations(std::size_t k) {
  static const auto all = [] {
    std::vector<std::vector<std::vector<Element>>> out(kMaxEnumerationOrder + 1);
    for (std::size_t n = 0; n <= kMaxEnumerationOrder; ++n) {
      std::vector<Element> p(n);
      std::iota(p.begin(), p.end(), 0);
      do out[n].push_back(p);
      while (std::next_permutation(p.begin(), p.end()));
    }
    return out;
  }();
  return all.at(k);
}

// Table of op under the relabeling i -> p[i].
std::vector<Element> relabel(std::size_t k, const std::vector<Element>& op,
                             const std::vector<Element>& p) {
  std::vector<Element> out(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      out[p[i] * k + p[j]] = p[op[i * k + j]];
  return out;
}

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, jobs)));
}

}  // namespace

CanonicalForm canonical_form(std::size_t k, const std::vector<Element>& add,
                             const std::vector<Element>& mul) {
  check_order(k);
  CanonicalForm best{k, add, mul};
  for (const auto& p : permutations(k)) {
    CanonicalForm c{k, relabel(k, add, p), relabel(k, mul, p)};
    if (c < best) best = std::move(c);
  }
  return best;
}

CanonicalForm canonical_form(const FiniteAiSemiring& s) {
  return canonical_form(s.size(), s.add_flat(), s.mul_flat());
}

std::vector<Element> canonical_additive(std::size_t k,
                                        const std::vector<Element>& add) {
  check_order(k);
  auto best = add;
  for (const auto& p : permutations(k)) best = std::min(best, relabel(k, add, p));
  return best;
}

std::vector<std::vector<Element>> enumerate_semilattices(std::size_t k) {
  check_order(k);
  // Commutative and idempotent by construction: fill the cells above the
  // diagonal and mirror them.
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) cells.emplace_back(i, j);
  std::vector<Element> t(k * k);
  for (std::size_t i = 0; i < k; ++i) t[i * k + i] = static_cast<Element>(i);

  std::set<std::vector<Element>> found;
  std::size_t total = 1;
  for (std::size_t c = 0; c < cells.size(); ++c) total *= k;
  for (std::size_t code = 0; code < total; ++code) {
    auto rest = code;
    for (const auto& [i, j] : cells) {
      t[i * k + j] = t[j * k + i] = static_cast<Element>(rest % k);
      rest /= k;
    }
    bool assoc = true;
    for (std::size_t a = 0; a < k && assoc; ++a)
      for (std::size_t b = 0; b < k && assoc; ++b)
        for (std::size_t c = 0; c < k && assoc; ++c)
          assoc = t[t[a * k + b] * k + c] == t[a * k + t[b * k + c]];
    if (assoc) found.insert(canonical_additive(k, t));
  }
  return {found.begin(), found.end()};
}

namespace {

// Row-major backtracking over the multiplication cells for a fixed join
// table. After each assignment every associativity and distributivity
// instance whose cells are all known is checked.
class MulSearch {
 public:
  MulSearch(std::size_t k, std::vector<Element> add)
      : k_(k), add_(std::move(add)), mul_(k * k, kUnset) {}

  template <typename Emit>
  void run(Emit&& emit) { fill(0, emit); }

 private:
  static constexpr Element kUnset = -1;

  Element m(std::size_t a, std::size_t b) const { return mul_[a * k_ + b]; }
  Element a(std::size_t x, std::size_t y) const { return add_[x * k_ + y]; }

  bool consistent_with(std::size_t x, std::size_t y) const {
    const auto k = k_;
    // Associativity instances that read cell (x, y).
    for (std::size_t p = 0; p < k; ++p) {
      for (std::size_t q = 0; q < k; ++q) {
        for (std::size_t r = 0; r < k; ++r) {
          const Element pq = m(p, q), qr = m(q, r);
          if (pq == kUnset || qr == kUnset) continue;
          const bool touches = (p == x && q == y) || (q == x && r == y) ||
                               (static_cast<std::size_t>(pq) == x && r == y) ||
                               (p == x && static_cast<std::size_t>(qr) == y);
          if (!touches) continue;
          const Element lhs = m(pq, r), rhs = m(p, qr);
          if (lhs != kUnset && rhs != kUnset && lhs != rhs) return false;
        }
      }
    }
    // Distributivity instances: x(y+z) = xy + xz and (y+z)x = yx + zx.
    for (std::size_t p = 0; p < k; ++p) {
      for (std::size_t q = 0; q < k; ++q) {
        for (std::size_t r = 0; r < k; ++r) {
          const auto qr = static_cast<std::size_t>(a(q, r));
          const Element l1 = m(p, qr), l2 = m(p, q), l3 = m(p, r);
          if (l1 != kUnset && l2 != kUnset && l3 != kUnset && l1 != a(l2, l3)) {
            return false;
          }
          const Element r1 = m(qr, p), r2 = m(q, p), r3 = m(r, p);
          if (r1 != kUnset && r2 != kUnset && r3 != kUnset && r1 != a(r2, r3)) {
            return false;
          }
        }
      }
    }
    return true;
  }

  template <typename Emit>
  void fill(std::size_t cell, Emit& emit) {
    if (cell == k_ * k_) {
      emit(mul_);
      return;
    }
    for (std::size_t v = 0; v < k_; ++v) {
      mul_[cell] = static_cast<Element>(v);
      if (consistent_with(cell / k_, cell % k_)) fill(cell + 1, emit);
    }
    mul_[cell] = kUnset;
  }

  std::size_t k_;
  std::vector<Element> add_;
  std::vector<Element> mul_;
};

}  // namespace

std::vector<FiniteAiSemiring> enumerate_ai_semirings(
    std::size_t k, const EnumerationOptions& opts) {
  check_order(k);
  const auto lattices = enumerate_semilattices(k);
  std::set<CanonicalForm> classes;
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> overflow{false};

  auto work = [&] {
    std::set<CanonicalForm> local;
    for (std::size_t i; (i = next++) < lattices.size() && !overflow;) {
      MulSearch search(k, lattices[i]);
      search.run([&](const std::vector<Element>& mul) {
        local.insert(canonical_form(k, lattices[i], mul));
        if (opts.max_classes && local.size() > opts.max_classes) overflow = true;
      });
    }
    std::lock_guard lock(mu);
    classes.insert(local.begin(), local.end());
    if (opts.max_classes && classes.size() > opts.max_classes) overflow = true;
  };

  const auto n = worker_count(opts.threads, lattices.size());
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
    work();
  }
  if (overflow) {
    throw EnumerationError("class limit of " + std::to_string(opts.max_classes) +
                           " exceeded");
  }

  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= k; ++i) labels.push_back(std::to_string(i));
  std::vector<FiniteAiSemiring> out;
  std::size_t index = 0;
  for (const auto& c : classes) {
    out.push_back(FiniteAiSemiring::from_flat_unchecked(
        "A" + std::to_string(k) + "_" + std::to_string(++index), labels, c.add,
        c.mul));
  }
  return out;
}

std::vector<AdditiveType> classify_additive_type(
    const std::vector<FiniteAiSemiring>& algebras) {
  std::map<std::vector<Element>, AdditiveType> groups;
  for (const auto& s : algebras) {
    auto key = canonical_additive(s.size(), s.add_flat());
    auto [it, fresh] = groups.try_emplace(key);
    auto& g = it->second;
    if (fresh) {
      const auto profile = natural_order(s);
      g.additive = key;
      g.minimals = profile.minimals.size();
      g.coatoms = profile.coatoms.size();
    }
    ++g.count;
  }
  std::vector<AdditiveType> out;
  for (auto& [key, g] : groups) out.push_back(std::move(g));
  return out;
}

std::vector<FiniteAiSemiring> screen_family(
    const std::vector<FiniteAiSemiring>& algebras, int n_max, unsigned threads) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  std::vector<char> pass(algebras.size(), 0);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < algebras.size();) {
      pass[i] = satisfies_family(algebras[i], n_max);
    }
  };
  const auto n = worker_count(threads, algebras.size());
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
    work();
  }
  std::vector<FiniteAiSemiring> out;
  for (std::size_t i = 0; i < algebras.size(); ++i) {
    if (pass[i]) out.push_back(algebras[i]);
  }
  return out;
}

}  // namespace aisemi

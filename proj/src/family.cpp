#include "aisemi/family.hpp"

#include <stdexcept>
#include <string>

namespace aisemi {

FamilyInstance make_family(int n) {
  if (n < 1) throw std::invalid_argument("family index must be >= 1");
  auto x = [](int i) { return "x" + std::to_string(i); };
  const int m = 2 * n + 1;
  WordSet words;
  for (int i = 1; i < m; ++i) words.insert(Word{x(i), x(i + 1)});
  words.insert(Word{x(m), x(1)});
  words.insert(Word{"y1", "y2"});
  words.insert(Word{"y2", "y1"});
  words.insert(Word{"y1"});
  return {n, Term(std::move(words)), Word{"y2"}};
}

std::vector<FamilyVerdict> in_W(const FiniteAiSemiring& s, int n_max,
                                const SearchOptions& opts) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (n_max > kDefaultFamilyMax && !opts.allow_large) {
    throw GuardError("n_max > " + std::to_string(kDefaultFamilyMax) +
                     " needs the override flag");
  }
  std::vector<FamilyVerdict> out;
  for (int n = 1; n <= n_max; ++n) {
    auto f = make_family(n);
    out.push_back({n, holds_inequality(s, f.q, f.u, opts)});
  }
  return out;
}

bool satisfies_family(const FiniteAiSemiring& s, int n_max,
                      const SearchOptions& opts) {
  for (int n = 1; n <= n_max; ++n) {
    auto f = make_family(n);
    if (!holds_inequality(s, f.q, f.u, opts).holds) return false;
  }
  return true;
}

}  // namespace aisemi

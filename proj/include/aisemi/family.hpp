#pragma once

// The inequalities q(n) <= u(n): an odd cycle x1x2 + ... + x(2n+1)x1 of
// two-letter words plus y1y2 + y2y1 + y1, against the single variable y2.

#include <vector>

#include "aisemi/algebra.hpp"
#include "aisemi/satisfaction.hpp"
#include "aisemi/terms.hpp"

namespace aisemi {

struct FamilyInstance {
  int n;
  Term u;
  Word q;
};

// Throws std::invalid_argument for n < 1.
FamilyInstance make_family(int n);

// n up to this bound runs without SearchOptions::allow_large.
inline constexpr int kDefaultFamilyMax = 3;

struct FamilyVerdict {
  int n;
  SatisfactionVerdict verdict;
};

// Brute-force check of q(n) <= u(n) for n = 1..n_max. Throws GuardError when
// n_max exceeds kDefaultFamilyMax without allow_large.
std::vector<FamilyVerdict> in_W(const FiniteAiSemiring& s, int n_max,
                                const SearchOptions& opts = {});

bool satisfies_family(const FiniteAiSemiring& s, int n_max,
                      const SearchOptions& opts = {});

}  // namespace aisemi

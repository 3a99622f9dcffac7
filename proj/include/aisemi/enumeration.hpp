#pragma once

// Semilattices and ai-semirings of order <= 4 up to isomorphism.

#include <compare>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "aisemi/algebra.hpp"

namespace aisemi {

inline constexpr std::size_t kMaxEnumerationOrder = 4;

class EnumerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Least (add, mul) pair, flattened row-major, over all relabelings of the
// carrier. Equal forms iff isomorphic.
struct CanonicalForm {
  std::size_t k = 0;
  std::vector<Element> add;
  std::vector<Element> mul;

  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

CanonicalForm canonical_form(std::size_t k, const std::vector<Element>& add,
                             const std::vector<Element>& mul);
CanonicalForm canonical_form(const FiniteAiSemiring& s);
// Least add table alone over all relabelings.
std::vector<Element> canonical_additive(std::size_t k,
                                        const std::vector<Element>& add);

// Join tables of all k-element semilattices up to isomorphism, canonical and
// sorted. Throws EnumerationError unless 1 <= k <= 4.
std::vector<std::vector<Element>> enumerate_semilattices(std::size_t k);

struct EnumerationOptions {
  unsigned threads = 1;  // 0 means hardware concurrency
  // Aborts with EnumerationError once more classes than this are held;
  // 0 means no limit.
  std::size_t max_classes = 0;
};

// One algebra per isomorphism class, sorted by canonical form, named
// "A<k>_<i>" with labels 1..k. Throws EnumerationError unless 1 <= k <= 4.
std::vector<FiniteAiSemiring> enumerate_ai_semirings(
    std::size_t k, const EnumerationOptions& opts = {});

struct AdditiveType {
  std::vector<Element> additive;  // canonical join table
  std::size_t minimals = 0;
  std::size_t coatoms = 0;
  std::size_t count = 0;
};

// Groups algebras by canonical additive reduct, in order of the reduct.
std::vector<AdditiveType> classify_additive_type(
    const std::vector<FiniteAiSemiring>& algebras);

// The algebras satisfying q(n) <= u(n) for every n <= n_max.
std::vector<FiniteAiSemiring> screen_family(
    const std::vector<FiniteAiSemiring>& algebras, int n_max,
    unsigned threads = 1);

}  // namespace aisemi

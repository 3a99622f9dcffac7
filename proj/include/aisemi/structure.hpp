#pragma once

// Congruences, quotients, subalgebras, direct products, isomorphism and
// subdirect decompositions of finite ai-semirings.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aisemi/algebra.hpp"

namespace aisemi {

class Partition {
 public:
  // Blocks may omit singletons; they are added. Throws AlgebraError on
  // overlapping blocks or out-of-range elements.
  Partition(std::size_t size, std::vector<std::vector<Element>> blocks);

  static Partition discrete(std::size_t size);
  static Partition total(std::size_t size);
  // "1,2|3|4" over element labels; omitted elements become singletons.
  static Partition parse(const FiniteAiSemiring& s, std::string_view text);

  std::size_t size() const { return block_of_.size(); }
  // Blocks sorted internally and ordered by least element.
  const std::vector<std::vector<Element>>& blocks() const { return blocks_; }
  std::size_t block_of(Element e) const { return block_of_[e]; }
  bool same_block(Element a, Element b) const {
    return block_of_[a] == block_of_[b];
  }
  bool is_discrete() const { return blocks_.size() == size(); }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.blocks_ == b.blocks_;
  }

 private:
  std::vector<std::vector<Element>> blocks_;
  std::vector<std::size_t> block_of_;
};

std::string to_string(const FiniteAiSemiring& s, const Partition& p);

Partition meet(const Partition& a, const Partition& b);

enum class Op { Add, Mul };

// a ~ b but a op c !~ b op c (or c op a !~ c op b).
struct CongruenceFailure {
  Op op;
  Element a, b, c;
  bool left;  // true: c op a vs c op b
};

std::optional<CongruenceFailure> congruence_failure(const FiniteAiSemiring& s,
                                                    const Partition& p);
inline bool is_congruence(const FiniteAiSemiring& s, const Partition& p) {
  return !congruence_failure(s, p);
}

// Carrier is the block list; labels are brace-joined original labels.
// Throws AlgebraError when p is not a congruence.
FiniteAiSemiring quotient(const FiniteAiSemiring& s, const Partition& p);

// Throws AlgebraError (naming the escaping pair) when not closed.
FiniteAiSemiring subalgebra(const FiniteAiSemiring& s,
                            const std::vector<Element>& subset);

struct Homomorphism {
  const FiniteAiSemiring* source;
  const FiniteAiSemiring* target;
  std::vector<Element> map;

  bool preserves_operations() const;
  bool is_bijective() const;
  bool is_surjective() const;
};

// First table-preserving bijection in lexicographic order, if any.
std::optional<std::vector<Element>> find_isomorphism(const FiniteAiSemiring& a,
                                                     const FiniteAiSemiring& b);

FiniteAiSemiring direct_product(const FiniteAiSemiring& a,
                                const FiniteAiSemiring& b);

struct SubdirectReport {
  bool injective = false;
  bool surjective = false;  // both projections onto the factors
  FiniteAiSemiring factor1;
  FiniteAiSemiring factor2;
  // s -> index of ([s]theta1, [s]theta2) in factor1 x factor2
  std::vector<Element> embedding;
};

// Throws AlgebraError when either partition is not a congruence.
SubdirectReport check_subdirect(const FiniteAiSemiring& s,
                                const Partition& theta1,
                                const Partition& theta2);

inline constexpr std::size_t kMaxCongruenceSearch = 8;

// All congruences by filtering set partitions; throws for |S| > 8.
std::vector<Partition> enumerate_congruences(const FiniteAiSemiring& s);

}  // namespace aisemi

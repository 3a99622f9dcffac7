#pragma once

// Evaluation of terms in finite ai-semirings, brute-force satisfaction of
// identities and inequalities, and the syntactic deciders for S2, S7, S53.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "aisemi/algebra.hpp"
#include "aisemi/terms.hpp"

namespace aisemi {

using Assignment = std::map<Variable, Element>;

class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws TermError on an unassigned variable.
Element eval(const Word& w, const FiniteAiSemiring& s, const Assignment& a);
Element eval(const Term& t, const FiniteAiSemiring& s, const Assignment& a);

struct Counterexample {
  Assignment assignment;
  Element lhs;  // value of q (inequality) or u (identity)
  Element rhs;  // value of u (inequality) or v (identity)
};

struct SatisfactionVerdict {
  bool holds = true;
  std::optional<Counterexample> counterexample;
};

struct SearchOptions {
  // 0 means std::thread::hardware_concurrency().
  unsigned threads = 1;
  // Lifts the assignment-count guard.
  bool allow_large = false;
};

// Assignments beyond this count (4^16) need SearchOptions::allow_large.
inline constexpr std::uint64_t kMaxAssignments = std::uint64_t{1} << 32;

// S |= q <= u, i.e. eval(u) + eval(q) = eval(u) for every assignment.
// Assignments are enumerated as mixed-radix counters over the variables in
// name order (last variable fastest); the reported counterexample is the
// least one in that order regardless of thread count.
SatisfactionVerdict holds_inequality(const FiniteAiSemiring& s, const Word& q,
                                     const Term& u,
                                     const SearchOptions& opts = {});
SatisfactionVerdict holds_identity(const FiniteAiSemiring& s, const Term& u,
                                   const Term& v,
                                   const SearchOptions& opts = {});

bool decide_s2(const Word& q, const Term& u);
bool decide_s7(const Word& q, const Term& u);
bool decide_s53(const Word& q, const Term& u);

struct Inequality {
  Word lhs;
  Term rhs;
  friend bool operator==(const Inequality&, const Inequality&) = default;
};

// u = v  ~>  u_i <= v for each summand of u, v_j <= u for each summand of v.
std::vector<Inequality> reduce_identity(const Term& u, const Term& v);

}  // namespace aisemi

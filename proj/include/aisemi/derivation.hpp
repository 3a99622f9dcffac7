#pragma once

// Equational-logic derivations: chains t1, ..., tn where each step rewrites
// t_i = p.phi(s).q + r into p.phi(s').q + r for some s = s' in sigma.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aisemi/terms.hpp"

namespace aisemi {

class DerivationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Identity {
  Term lhs;
  Term rhs;
  friend bool operator==(const Identity&, const Identity&) = default;
};

enum class Orientation { Forward, Backward };

struct DerivationStep {
  Letters left;
  Letters right;
  WordSet remainder;
  Identity rule;  // as it appears in sigma
  Orientation orientation = Orientation::Forward;
  Substitution subst;
};

struct Derivation {
  std::vector<Identity> sigma;
  std::vector<Term> chain;
  std::vector<DerivationStep> steps;
};

struct StepCheck {
  bool ok = false;
  std::string diagnosis;  // empty when ok
};

// The checker never searches: all witnesses come from the step. Throws
// DerivationError when step.rule is not in sigma.
StepCheck check_step(const std::vector<Identity>& sigma, const Term& t,
                     const Term& t_next, const DerivationStep& step);

struct DerivationCheck {
  bool ok = false;
  std::optional<std::size_t> failed_step;  // 0-based; none for chain-level faults
  std::string diagnosis;
};

DerivationCheck check_derivation(const Derivation& d, const Identity& claim);

struct SearchBounds {
  std::size_t max_chain = 4;         // terms in the chain
  std::size_t max_word_len = 4;
  std::size_t max_summands = 4;
  std::size_t max_subst_image = 2;   // total letters per variable image
  std::size_t max_nodes = 20000;     // distinct terms visited
};

struct Successor {
  DerivationStep step;
  Term next;
};

// Every single step out of t whose result stays within the word-length and
// summand bounds. Images of variables are sets of factors of the words of t
// (or of `hints` for variables only on the produced side), capped by
// max_subst_image letters. Deterministic order, duplicates by result removed.
std::vector<Successor> successors(const std::vector<Identity>& sigma,
                                  const Term& t, const SearchBounds& bounds,
                                  const std::vector<Term>& hints = {});

struct SearchResult {
  std::optional<Derivation> derivation;
  std::string reason;  // why the search stopped without a derivation
  std::size_t explored = 0;
};

// Breadth-first; a returned derivation is shortest within bounds and passes
// check_derivation. Failure means nothing was found inside the bounds.
SearchResult search_derivation(const std::vector<Identity>& sigma,
                               const Identity& claim,
                               const SearchBounds& bounds = {});

// Text format, see README.
struct DerivationFile {
  Derivation derivation;
  std::optional<Identity> claim;
};

Identity parse_identity(std::string_view text);  // "u = v"
DerivationFile parse_derivation(std::string_view text);
std::string serialize_derivation(const Derivation& d,
                                 const std::optional<Identity>& claim = {});
std::string to_string(const Identity& e);

}  // namespace aisemi

#pragma once

// Terms of the free ai-semiring: finite nonempty sets of nonempty words.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aisemi {

class TermError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A letter followed by optional digits: x, y2, x13.
using Variable = std::string;
using VariableSet = std::set<Variable>;

bool is_valid_variable(std::string_view name);

// Possibly empty letter sequence; used for contexts p, q in p.u.q.
using Letters = std::vector<Variable>;

class Word {
 public:
  // Throws TermError on an empty sequence or an illegal identifier.
  explicit Word(Letters letters);
  Word(std::initializer_list<Variable> letters);
  static Word of(std::string_view text);  // "x1x2" -> [x1, x2]

  const Letters& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  const Variable& operator[](std::size_t i) const { return letters_[i]; }

  // Shortlex: length first, then lexicographic over variable names.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;

 private:
  Letters letters_;
};

Word concat(const Word& a, const Word& b);
// Wraps with possibly-empty contexts.
Word wrap(const Letters& left, const Word& w, const Letters& right);

using WordSet = std::set<Word>;

class Term {
 public:
  // Throws TermError when empty.
  explicit Term(WordSet summands);
  Term(std::initializer_list<Word> summands);
  explicit Term(Word w);

  const WordSet& summands() const { return summands_; }
  std::size_t size() const { return summands_.size(); }
  bool contains(const Word& w) const { return summands_.count(w) != 0; }

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;

 private:
  WordSet summands_;
};

Term parse_term(std::string_view text);
std::string to_string(const Word& w);
std::string to_string(const Letters& w);
std::string to_string(const Term& t);
std::string to_string(const WordSet& s);  // "" for the empty set

Term add(const Term& s, const Term& t);
Term mul(const Term& s, const Term& t);

VariableSet content(const Word& w);
VariableSet content(const Term& t);
std::size_t occ(const Variable& x, const Word& w);

WordSet factors2(const Word& w);
WordSet factors2(const Term& t);
// Length-2 scattered subwords: w[i]w[j] for i < j.
WordSet subwords2(const Word& w);
WordSet subwords2(const Term& t);
WordSet level(std::size_t k, const Term& u);
WordSet level_geq(std::size_t k, const Term& u);

// All Z subset of c(u) meeting every summand in exactly one variable that
// occurs exactly once in that summand.
std::set<VariableSet> delta(const Term& u);

bool is_linear(const Word& w);

class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const Variable, Term>> images)
      : images_(images) {}

  void set(const Variable& x, Term image);
  // Variables outside the map are fixed.
  Term image(const Variable& x) const;
  const std::map<Variable, Term>& images() const { return images_; }

  Term apply(const Word& w) const;
  Term apply(const Term& t) const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<Variable, Term> images_;
};

std::string to_string(const Substitution& s);

// Witness for v = p1 . u . p2 + p3.
struct SubtermWitness {
  Letters left;
  Letters right;
  WordSet rest;
};

std::optional<SubtermWitness> is_subterm(const Term& u, const Term& v);
// Every (left, right) context placing u inside v, in deterministic order.
std::vector<SubtermWitness> subterm_occurrences(const Term& u, const Term& v);

// Sorts each word's letters by name; merges summands that become equal.
Term commutative_normalize(const Term& t);

// p . t . q + r, where r may be empty.
Term compose(const Letters& left, const Term& t, const Letters& right,
             const WordSet& rest);

}  // namespace aisemi

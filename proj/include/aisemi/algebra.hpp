#pragma once

// Finite additively idempotent semirings given by Cayley tables.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aisemi {

using Element = int;

// Row-major square table; entry [i][j] is i op j.
using Table = std::vector<std::vector<Element>>;

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

enum class Axiom {
  AddCommutative,
  AddIdempotent,
  AddAssociative,
  MulAssociative,
  LeftDistributive,   // a(b+c) = ab + ac
  RightDistributive,  // (a+b)c = ac + bc
};

std::string_view axiom_name(Axiom a);

struct Violation {
  Axiom axiom;
  std::vector<Element> witness;
};

struct ValidationReport {
  // Set when the tables are not well-formed; axioms are not checked then.
  std::optional<std::string> malformed;
  std::vector<Violation> violations;
  bool truncated = false;

  bool ok() const { return !malformed && violations.empty(); }
};

inline constexpr std::size_t kMaxReportedViolations = 32;

// Full diagnostic check; collects up to kMaxReportedViolations witnesses.
ValidationReport validate(const Table& add, const Table& mul);

// Fast-fail variant over flat row-major k*k tables.
bool is_ai_semiring(std::size_t k, const std::vector<Element>& add,
                    const std::vector<Element>& mul);

class FiniteAiSemiring {
 public:
  // Throws AlgebraError if the tables are malformed or violate an axiom.
  FiniteAiSemiring(std::string name, std::vector<std::string> labels,
                   const Table& add, const Table& mul);

  // Skips axiom checking; for callers that already validated flat tables.
  static FiniteAiSemiring from_flat_unchecked(std::string name,
                                              std::vector<std::string> labels,
                                              std::vector<Element> add,
                                              std::vector<Element> mul);

  const std::string& name() const { return name_; }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Element e) const { return labels_[e]; }
  std::optional<Element> find_label(std::string_view label) const;
  Element index_of(std::string_view label) const;  // throws AlgebraError

  Element add(Element a, Element b) const { return add_[a * size() + b]; }
  Element mul(Element a, Element b) const { return mul_[a * size() + b]; }

  const std::vector<Element>& add_flat() const { return add_; }
  const std::vector<Element>& mul_flat() const { return mul_; }
  Table add_table() const;
  Table mul_table() const;

  FiniteAiSemiring renamed(std::string name) const;

  friend bool operator==(const FiniteAiSemiring&,
                         const FiniteAiSemiring&) = default;

 private:
  FiniteAiSemiring() = default;

  std::string name_;
  std::vector<std::string> labels_;
  std::vector<Element> add_;
  std::vector<Element> mul_;
};

struct AdditiveProfile {
  Element top = 0;
  std::vector<Element> minimals;
  std::vector<Element> coatoms;
  std::vector<std::pair<Element, Element>> order_relation;  // (a, b): a <= b

  bool leq(Element a, Element b) const;
};

// a <= b iff a + b = b. For the one-element algebra the single element is
// reported as top, minimal and coatom.
AdditiveProfile natural_order(const FiniteAiSemiring& s);

bool is_commutative_mult(const FiniteAiSemiring& s);

// Named algebras: S2, S7, S53, S4_124, S4_359, R6.
FiniteAiSemiring registry(std::string_view name);
const std::vector<std::string>& registry_names();

// Tables as read from the file format, before axiom checking.
struct RawAlgebra {
  std::string name;
  std::vector<std::string> labels;
  Table add;
  Table mul;
};

// Throws ParseError on syntax errors, including label/table arity mismatch.
RawAlgebra parse_raw_algebra(std::string_view text);
// Additionally throws AlgebraError when the tables fail validation.
FiniteAiSemiring parse_algebra(std::string_view text);
// Records separated by lines consisting of `---`. Throws ParseError on
// input without any record.
std::vector<RawAlgebra> parse_raw_algebras(std::string_view text);
std::vector<FiniteAiSemiring> parse_algebras(std::string_view text);
std::string serialize_algebra(const FiniteAiSemiring& s);

}  // namespace aisemi

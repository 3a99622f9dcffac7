#include "aisemi/algebra.hpp"

#include <algorithm>
#include <random>

#include "doctest.h"

using namespace aisemi;

namespace {

std::vector<std::string> labels_of(const FiniteAiSemiring& s,
                                   const std::vector<Element>& es) {
  std::vector<std::string> out;
  for (auto e : es) out.push_back(s.label(e));
  std::sort(out.begin(), out.end());
  return out;
}

using Strings = std::vector<std::string>;

}  // namespace

TEST_CASE("registry algebras validate") {
  for (const auto& name : registry_names()) {
    auto s = registry(name);
    CHECK(validate(s.add_table(), s.mul_table()).ok());
    CHECK(is_ai_semiring(s.size(), s.add_flat(), s.mul_flat()));
  }
  CHECK_THROWS_AS(registry("S99"), AlgebraError);
}

TEST_CASE("registry entries match the printed tables") {
  auto s7 = registry("S7");
  CHECK(s7.labels() == Strings{"0", "a", "1"});
  auto a = s7.index_of("a");
  auto one = s7.index_of("1");
  CHECK(s7.label(s7.mul(a, one)) == "a");
  CHECK(s7.label(s7.add(a, one)) == "0");

  auto s124 = registry("S4_124");
  CHECK(s124.label(s124.mul(s124.index_of("4"), s124.index_of("4"))) == "2");
  CHECK(s124.label(s124.add(s124.index_of("2"), s124.index_of("3"))) == "2");

  auto s359 = registry("S4_359");
  CHECK(s359.label(s359.mul(s359.index_of("1"), s359.index_of("1"))) == "2");
  CHECK(s359.label(s359.mul(s359.index_of("3"), s359.index_of("4"))) == "4");
}

TEST_CASE("validate reports witnesses") {
  CHECK(validate({{0}}, {{0}}).ok());

  auto s7 = registry("S7");
  auto add = s7.add_table();
  const auto a = s7.index_of("a");
  add[a][a] = s7.index_of("1");
  auto report = validate(add, s7.mul_table());
  REQUIRE_FALSE(report.ok());
  CHECK_FALSE(report.malformed);
  bool idempotency_witness = std::any_of(
      report.violations.begin(), report.violations.end(), [&](const auto& v) {
        return v.axiom == Axiom::AddIdempotent && v.witness == std::vector{a};
      });
  CHECK(idempotency_witness);

  // Malformed tables are reported distinctly from axiom failures.
  auto bad = validate({{0, 1}, {1}}, {{0, 0}, {0, 0}});
  CHECK(bad.malformed);
  CHECK(bad.violations.empty());
  auto range = validate({{0, 2}, {2, 1}}, {{0, 0}, {0, 0}});
  CHECK(range.malformed);
}

TEST_CASE("validation caps the witness list") {
  // Constant-1 multiplication on a 4-chain with a broken addition produces
  // far more than 32 failures.
  Table add(4, std::vector<Element>(4, 3));
  Table mul(4, std::vector<Element>(4, 1));
  auto report = validate(add, mul);
  CHECK(report.violations.size() == kMaxReportedViolations);
  CHECK(report.truncated);
}

TEST_CASE("natural order and additive profile") {
  auto s124 = registry("S4_124");
  auto p = natural_order(s124);
  CHECK(s124.label(p.top) == "1");
  CHECK(labels_of(s124, p.minimals) == Strings{"3", "4"});
  CHECK(labels_of(s124, p.coatoms) == Strings{"2", "4"});

  auto s7 = registry("S7");
  auto p7 = natural_order(s7);
  CHECK(s7.label(p7.top) == "0");
  CHECK(labels_of(s7, p7.minimals) == Strings{"1", "a"});
  CHECK(labels_of(s7, p7.coatoms) == Strings{"1", "a"});

  FiniteAiSemiring trivial("T", {"e"}, {{0}}, {{0}});
  auto p1 = natural_order(trivial);
  CHECK(p1.top == 0);
  CHECK(p1.minimals == std::vector<Element>{0});
  CHECK(p1.coatoms == std::vector<Element>{0});
}

TEST_CASE("natural order is a partial order with addition as join") {
  for (const auto& name : registry_names()) {
    auto s = registry(name);
    auto p = natural_order(s);
    const auto n = static_cast<Element>(s.size());
    for (Element a = 0; a < n; ++a) {
      CHECK(p.leq(a, a));
      CHECK(p.leq(a, p.top));
      for (Element b = 0; b < n; ++b) {
        if (a != b && p.leq(a, b)) CHECK_FALSE(p.leq(b, a));
        for (Element c = 0; c < n; ++c) {
          if (p.leq(a, b) && p.leq(b, c)) CHECK(p.leq(a, c));
        }
        // a + b is the least upper bound.
        const auto j = s.add(a, b);
        CHECK(p.leq(a, j));
        CHECK(p.leq(b, j));
        for (Element c = 0; c < n; ++c) {
          if (p.leq(a, c) && p.leq(b, c)) CHECK(p.leq(j, c));
        }
      }
    }
    // top is independent of fold order.
    std::vector<Element> order(s.size());
    for (Element i = 0; i < n; ++i) order[i] = i;
    std::mt19937 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
      std::shuffle(order.begin(), order.end(), rng);
      Element acc = order[0];
      for (auto e : order) acc = s.add(acc, e);
      CHECK(acc == p.top);
    }
  }
}

TEST_CASE("commutativity of multiplication") {
  CHECK(is_commutative_mult(registry("S4_124")));
  CHECK(is_commutative_mult(FiniteAiSemiring("T", {"e"}, {{0}}, {{0}})));
  // The printed R6 multiplication table is symmetric.
  CHECK(is_commutative_mult(registry("R6")));
  // Left-zero band with + = join on a 2-chain is not commutative.
  FiniteAiSemiring lz("LZ", {"0", "1"}, {{0, 1}, {1, 1}}, {{0, 0}, {1, 1}});
  CHECK_FALSE(is_commutative_mult(lz));
}

TEST_CASE("algebra file format") {
  for (const auto& name : registry_names()) {
    auto s = registry(name);
    CHECK(parse_algebra(serialize_algebra(s)) == s);
  }

  const char* s53_text = R"(# S53 as printed
algebra S53
elements 1 2 3
add
1 1 3
1 2 3
3 3 3

mul
3 1 3
1 2 3
3 3 3
)";
  CHECK(parse_algebra(s53_text) == registry("S53"));

  const char* arity = R"(algebra bad
elements 1 2 3
add
1 1 1 1
1 2 1 1
1 1 3 1
1 1 1 1
mul
1 1 1 1
1 1 1 1
1 1 1 1
1 1 1 1
)";
  try {
    parse_algebra(arity);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("table/label arity mismatch") !=
          std::string::npos);
    CHECK(e.line() == 4);
  }

  CHECK_THROWS_AS(parse_algebra(""), ParseError);
  CHECK_THROWS_AS(parse_algebra("algebra x\nelements 1\nmul\n1\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("algebra x\nelements 1 2\nadd\n1 2\n2 9\nmul\n1 1\n1 1\n"),
                  ParseError);

  // Axiom failure surfaces as AlgebraError, not ParseError.
  CHECK_THROWS_AS(parse_algebra("algebra x\nelements 1 2\nadd\n2 2\n2 2\nmul\n1 1\n1 1\n"),
                  AlgebraError);
}

TEST_CASE("concatenated records") {
  std::string text;
  for (const auto& name : registry_names()) {
    if (!text.empty()) text += "---\n";
    text += serialize_algebra(registry(name));
  }
  auto all = parse_algebras(text);
  REQUIRE(all.size() == registry_names().size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i] == registry(registry_names()[i]));
  }
}

TEST_CASE("raw records keep file line numbers") {
  const char* text =
      "algebra A\nelements 1\nadd\n1\nmul\n1\n---\n"
      "algebra B\nelements 1 2\nadd\n1 1\nmul\n1 1\n1 1\n";
  try {
    parse_raw_algebras(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 12);
  }
  CHECK_THROWS_AS(parse_raw_algebras("# nothing\n"), ParseError);
  auto both = parse_raw_algebras(serialize_algebra(registry("S2")) + "---\n" +
                                 serialize_algebra(registry("S7")));
  REQUIRE(both.size() == 2);
  CHECK(both[1].name == "S7");
}

#include "aisemi/family.hpp"

#include "aisemi/graphs.hpp"
#include "doctest.h"

using namespace aisemi;

TEST_CASE("family construction") {
  auto f = make_family(1);
  CHECK(f.u == parse_term("x1x2 + x2x3 + x3x1 + y1y2 + y2y1 + y1"));
  CHECK(f.q == Word{"y2"});
  CHECK_THROWS_AS(make_family(0), std::invalid_argument);

  for (int n = 1; n <= 10; ++n) {
    auto fn = make_family(n);
    CHECK(fn.u.size() == static_cast<std::size_t>(2 * n + 4));
    CHECK(content(fn.u).size() == static_cast<std::size_t>(2 * n + 3));
    CHECK(level(1, fn.u) == WordSet{Word{"y1"}});
    CHECK(level(2, fn.u).size() == static_cast<std::size_t>(2 * n + 3));
    CHECK(commutative_normalize(fn.u).size() == static_cast<std::size_t>(2 * n + 3));
    for (const auto& w : fn.u.summands()) {
      CHECK(is_linear(w));
      CHECK(w.length() <= 2);
    }
    CHECK(delta(fn.u).empty());
    CHECK(parse_term(to_string(fn.u)) == fn.u);
    CHECK(decide_s2(fn.q, fn.u));
    CHECK(decide_s7(fn.q, fn.u));
    CHECK(decide_s53(fn.q, fn.u));
  }
}

TEST_CASE("family graphs carry an odd cycle of length 2n+1") {
  for (int n = 1; n <= 5; ++n) {
    auto g = graph_of(make_family(n).u);
    auto c = find_odd_cycle(g);
    REQUIRE(c);
    CHECK(c->size() == static_cast<std::size_t>(2 * n + 1));
  }
}

TEST_CASE("W membership by brute force") {
  for (const char* name : {"S2", "S7", "S53", "S4_124"}) {
    auto report = in_W(registry(name), 3);
    REQUIRE(report.size() == 3);
    for (const auto& r : report) {
      INFO(name, " n=", r.n);
      CHECK(r.verdict.holds);
    }
  }
  CHECK_THROWS_AS(in_W(registry("S2"), 4), GuardError);
  CHECK_THROWS_AS(in_W(registry("S2"), 0), std::invalid_argument);
}

TEST_CASE("two-element join algebra") {
  // + = * = join on the 2-chain: eval(u) is the join of all variables, which
  // bounds y2, so every member of the family holds.
  FiniteAiSemiring join("J2", {"0", "1"}, {{0, 1}, {1, 1}}, {{0, 1}, {1, 1}});
  for (const auto& r : in_W(join, 3)) CHECK(r.verdict.holds);
}

TEST_CASE("a failing algebra reports counterexamples") {
  // Zero multiplication on the 2-chain: every product is 0, so
  // u(n) = y1 and y2 = 1, y1 = 0 violates y2 <= u(n).
  FiniteAiSemiring zero("Z2", {"0", "1"}, {{0, 1}, {1, 1}}, {{0, 0}, {0, 0}});
  for (const auto& r : in_W(zero, 2)) {
    REQUIRE_FALSE(r.verdict.holds);
    const auto& ce = *r.verdict.counterexample;
    CHECK(ce.assignment.at("y2") == 1);
    CHECK(ce.assignment.at("y1") == 0);
  }
}

TEST_CASE("parallel and serial verdicts agree") {
  for (const auto& name : registry_names()) {
    auto s = registry(name);
    if (s.size() > 4) continue;
    auto a = in_W(s, 2, {.threads = 1});
    auto b = in_W(s, 2, {.threads = 3});
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].verdict.holds == b[i].verdict.holds);
    }
  }
}

// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "aisemi/algebra.hpp"
#include "aisemi/derivation.hpp"
#include "aisemi/enumeration.hpp"
#include "aisemi/family.hpp"
#include "aisemi/graphs.hpp"
#include "aisemi/satisfaction.hpp"
#include "aisemi/structure.hpp"
#include "aisemi/terms.hpp"
#include "aisemi/verify.hpp"
#include "generators.hpp"

using namespace aisemi;

namespace {

// Pinned expectations.
constexpr std::size_t kOrder3Classes = 61;
constexpr std::size_t kOrder4Classes = 866;
constexpr std::size_t kOrder4Types = 5;
constexpr std::size_t kTwoMinTwoCoatom = 217;
constexpr std::size_t kFamilyLowerBound = 32;
constexpr std::size_t kOracleSamples = 10000;
constexpr std::size_t kDeltaSamples = 2000;
constexpr std::size_t kGraphSamples = 1000;
constexpr std::size_t kDerivationSamples = 1000;
constexpr std::size_t kModelsPerDerivation = 8;

struct Verdict {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Verdict()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v{false, ""};
  try {
    v = f();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s > budget_s) {
    v.pass = false;
    v.detail += " (over budget)";
  }
  if (!v.pass) ++failures;
  std::printf("[%02d] %s %s  %.2fs/%.0fs  %s\n", id, v.pass ? "PASS" : "FAIL", name, s,
              budget_s, v.detail.c_str());
  std::fflush(stdout);
}

// Direct evaluation from the tables, independent of the library's evaluator.
Element eval_direct(const FiniteAiSemiring& s, const Term& t,
                    const std::map<Variable, Element>& a) {
  std::optional<Element> sum;
  for (const auto& w : t.summands()) {
    Element prod = a.at(w[0]);
    for (std::size_t i = 1; i < w.length(); ++i) prod = s.mul_flat()[prod * s.size() + a.at(w[i])];
    sum = sum ? s.add_flat()[*sum * s.size() + prod] : prod;
  }
  return *sum;
}

// Every assignment checked, no early exit.
bool inequality_direct(const FiniteAiSemiring& s, const Word& q, const Term& u) {
  auto c = content(u);
  for (const auto& x : q.letters()) c.insert(x);
  std::vector<Variable> vars(c.begin(), c.end());
  std::vector<Element> digits(vars.size(), 0);
  const Term qt(q);
  bool ok = true;
  while (true) {
    std::map<Variable, Element> a;
    for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = digits[i];
    const Element uv = eval_direct(s, u, a);
    if (s.add(uv, eval_direct(s, qt, a)) != uv) ok = false;
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == static_cast<Element>(s.size())) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return ok;
}

bool iso_verified(const FiniteAiSemiring& a, const FiniteAiSemiring& b) {
  auto m = find_isomorphism(a, b);
  if (!m || a.size() != b.size()) return false;
  std::set<Element> image(m->begin(), m->end());
  if (image.size() != a.size()) return false;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y) {
      const auto X = static_cast<Element>(x), Y = static_cast<Element>(y);
      if ((*m)[a.add(X, Y)] != b.add((*m)[x], (*m)[y])) return false;
      if ((*m)[a.mul(X, Y)] != b.mul((*m)[x], (*m)[y])) return false;
    }
  return true;
}

std::vector<Element> pick(const FiniteAiSemiring& s, std::initializer_list<const char*> ls) {
  std::vector<Element> v;
  for (auto l : ls) v.push_back(s.index_of(l));
  return v;
}

std::set<VariableSet> delta_oracle(const Term& u) {
  auto c = content(u);
  std::vector<Variable> vars(c.begin(), c.end());
  std::set<VariableSet> out;
  for (std::uint32_t mask = 1; mask < (1u << vars.size()); ++mask) {
    VariableSet z;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (mask >> i & 1) z.insert(vars[i]);
    bool good = true;
    for (const auto& w : u.summands()) {
      std::size_t hits = 0;
      for (const auto& x : w.letters()) hits += z.count(x);
      good = good && hits == 1;
    }
    if (good) out.insert(z);
  }
  return out;
}

bool closed_walk_ok(const TermGraph& g, const std::vector<Variable>& c) {
  if (c.empty() || c.size() % 2 == 0) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!g.has_edge(c[i], c[(i + 1) % c.size()])) return false;
  return true;
}

}  // namespace

int main() {
  criterion(1, "registry-valid", 1, [] {
    for (const auto& n : registry_names()) {
      auto s = registry(n);
      if (!validate(s.add_table(), s.mul_table()).ok()) return Verdict{false, n + " invalid"};
    }
    return Verdict{true, std::to_string(registry_names().size()) + " algebras"};
  });

  criterion(2, "additive-profile", 1, [] {
    auto s = registry("S4_124");
    auto p = natural_order(s);
    // Order from the definition a <= b iff a + b = b.
    auto leq = [&](Element a, Element b) { return s.add(a, b) == b; };
    const auto k = static_cast<Element>(s.size());
    std::vector<std::string> mins, coatoms;
    Element top = -1;
    for (Element a = 0; a < k; ++a) {
      bool is_top = true, is_min = true;
      for (Element b = 0; b < k; ++b) {
        is_top = is_top && leq(b, a);
        is_min = is_min && !(b != a && leq(b, a));
      }
      if (is_top) top = a;
      if (is_min) mins.push_back(s.label(a));
    }
    for (Element a = 0; a < k; ++a) {
      if (a == top) continue;
      bool covered_only_by_top = true;
      for (Element b = 0; b < k; ++b)
        if (b != a && b != top && leq(a, b)) covered_only_by_top = false;
      if (covered_only_by_top) coatoms.push_back(s.label(a));
    }
    std::vector<std::string> lib_mins, lib_coatoms;
    for (auto e : p.minimals) lib_mins.push_back(s.label(e));
    for (auto e : p.coatoms) lib_coatoms.push_back(s.label(e));
    const bool ok = s.label(top) == "1" && s.label(p.top) == "1" &&
                    mins == std::vector<std::string>{"3", "4"} && lib_mins == mins &&
                    coatoms == std::vector<std::string>{"2", "4"} && lib_coatoms == coatoms;
    return Verdict{ok, "top=1 minimals={3,4} coatoms={2,4}"};
  });

  criterion(3, "s124-structure", 1, [] {
    auto s = registry("S4_124");
    const bool a = iso_verified(subalgebra(s, pick(s, {"1", "2", "4"})), registry("S2"));
    const bool b = iso_verified(subalgebra(s, pick(s, {"1", "2", "3"})), registry("S53"));
    const bool c = iso_verified(quotient(s, Partition::parse(s, "1,2|3|4")), registry("S7"));
    return Verdict{a && b && c, std::string("S2 ") + (a ? "y" : "n") + ", S53 " + (b ? "y" : "n") +
                                    ", S7 " + (c ? "y" : "n")};
  });

  criterion(4, "subdirect", 1, [] {
    auto r6 = registry("R6");
    auto r = check_subdirect(r6, Partition::parse(r6, "1,2,3,4"), Partition::parse(r6, "1,6|2,5"));
    const bool a = r.injective && r.surjective && iso_verified(r.factor1, registry("S2")) &&
                   iso_verified(r.factor2, registry("S4_359"));
    auto s = registry("S4_359");
    auto t = check_subdirect(s, Partition::parse(s, "1,2"), Partition::parse(s, "1,4"));
    const bool b = t.injective && t.surjective && iso_verified(t.factor1, registry("S7")) &&
                   iso_verified(t.factor2, registry("S53"));
    return Verdict{a && b, std::string("R6 ") + (a ? "ok" : "bad") + ", S4_359 " + (b ? "ok" : "bad")};
  });

  criterion(5, "w-membership", 5, [] {
    std::size_t checked = 0;
    for (const char* n : {"S2", "S7", "S53", "S4_124"}) {
      auto s = registry(n);
      for (const auto& r : in_W(s, 3)) {
        auto f = make_family(r.n);
        if (!r.verdict.holds || !inequality_direct(s, f.q, f.u)) {
          return Verdict{false, std::string(n) + " n=" + std::to_string(r.n)};
        }
        ++checked;
      }
    }
    return Verdict{true, std::to_string(checked) + " (algebra, n) pairs hold"};
  });

  criterion(6, "decider-oracle", 60, [] {
    std::mt19937_64 rng(6);
    const auto s2 = registry("S2"), s7 = registry("S7"), s53 = registry("S53");
    std::size_t bad = 0;
    for (std::size_t i = 0; i < kOracleSamples; ++i) {
      auto q = testing::random_word(rng, 4, 4);
      auto u = testing::random_term(rng, 4, 4, 4);
      bad += decide_s2(q, u) != holds_inequality(s2, q, u).holds;
      bad += decide_s7(q, u) != holds_inequality(s7, q, u).holds;
      bad += decide_s53(q, u) != holds_inequality(s53, q, u).holds;
    }
    return Verdict{bad == 0, std::to_string(bad) + " discrepancies over " +
                                 std::to_string(kOracleSamples) + " inequalities x 3"};
  });

  criterion(7, "delta", 5, [] {
    for (int n = 1; n <= 10; ++n) {
      auto u = make_family(n).u;
      // The subset oracle is exponential in c(u); 2n+3 variables stays small to n=5.
      if (!delta(u).empty() || (n <= 5 && !delta_oracle(u).empty())) {
        return Verdict{false, "delta(u(" + std::to_string(n) + ")) nonempty"};
      }
    }
    std::mt19937_64 rng(7);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < kDeltaSamples; ++i) {
      auto u = testing::random_term(rng, 5, 4, 4);
      bad += delta(u) != delta_oracle(u);
    }
    return Verdict{bad == 0, std::to_string(bad) + " mismatches over " +
                                 std::to_string(kDeltaSamples) + " random terms"};
  });

  criterion(8, "graph-lemma", 30, [] {
    for (int n = 1; n <= 5; ++n) {
      auto g = graph_of(make_family(n).u);
      auto c = find_odd_cycle(g);
      if (is_bipartite(g) || !c || c->size() != static_cast<std::size_t>(2 * n + 1) ||
          !closed_walk_ok(g, *c)) {
        return Verdict{false, "family cycle n=" + std::to_string(n)};
      }
    }
    std::mt19937_64 rng(8);
    std::size_t accepted = 0, cycles = 0, paths = 0;
    for (std::size_t i = 0; i < kGraphSamples; ++i) {
      const int nv = 3 + static_cast<int>(rng() % 10);
      std::vector<Variable> vs;
      std::map<Variable, int> side;
      for (int v = 0; v < nv; ++v) {
        vs.push_back("v" + std::to_string(v));
        side[vs.back()] = v < 2 ? v : static_cast<int>(rng() % 2);
      }
      std::vector<Edge> edges;
      for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b)
          if (side[vs[a]] != side[vs[b]] && rng() % 3 == 0) edges.emplace_back(vs[a], vs[b]);
      VariableSet h;
      for (const auto& v : vs)
        if (side[v] == 0 && rng() % 2) h.insert(v);
      const VariableSet all(vs.begin(), vs.end());

      // Valid instance: H inside one planted side.
      auto r = constrained_bipartition(TermGraph(all, edges), h);
      auto* b = std::get_if<Bipartition>(&r);
      if (!b) return Verdict{false, "valid instance rejected"};
      for (const auto& [x, y] : edges)
        if (b->y.count(x) == b->y.count(y)) return Verdict{false, "improper bipartition"};
      if (!std::includes(b->y.begin(), b->y.end(), h.begin(), h.end()))
        return Verdict{false, "H not inside Y"};
      ++accepted;

      // Planted odd cycle: a triangle on fresh vertices.
      auto with_cycle = edges;
      auto all_c = all;
      for (const char* t : {"t1", "t2", "t3"}) all_c.insert(t);
      with_cycle.insert(with_cycle.end(), {{"t1", "t2"}, {"t2", "t3"}, {"t1", "t3"}});
      const TermGraph gc(all_c, with_cycle);
      auto rc = constrained_bipartition(gc, h);
      auto* oc = std::get_if<OddCycleWitness>(&rc);
      if (!oc || !closed_walk_ok(gc, oc->cycle)) return Verdict{false, "odd cycle missed"};
      ++cycles;

      // Planted odd H-path: v0 (side 0) and v1 (side 1) joined by an edge.
      auto with_path = edges;
      with_path.emplace_back("v0", "v1");
      auto hp = h;
      hp.insert("v0");
      hp.insert("v1");
      const TermGraph gp(all, with_path);
      auto rp = constrained_bipartition(gp, hp);
      auto* op = std::get_if<OddPathWitness>(&rp);
      if (!op) return Verdict{false, "odd H-path missed"};
      const auto& p = op->path;
      bool ok = p.size() >= 2 && p.size() % 2 == 0 && p.front() == op->from &&
                p.back() == op->to && hp.count(op->from) && hp.count(op->to);
      for (std::size_t j = 0; ok && j + 1 < p.size(); ++j) ok = gp.has_edge(p[j], p[j + 1]);
      if (!ok) return Verdict{false, "bad odd-path witness"};
      ++paths;
    }
    return Verdict{true, std::to_string(accepted) + " accepted, " + std::to_string(cycles) +
                             " cycle and " + std::to_string(paths) + " path rejections"};
  });

  std::vector<FiniteAiSemiring> three;
  criterion(9, "census-3", 30, [&] {
    three = enumerate_ai_semirings(3);
    return Verdict{three.size() == kOrder3Classes, std::to_string(three.size()) + " classes"};
  });

  criterion(10, "census-4", 900, [] {
    auto four = enumerate_ai_semirings(4);
    auto types = classify_additive_type(four);
    std::size_t two_two = 0, sum = 0;
    for (const auto& t : types) {
      sum += t.count;
      if (t.minimals == 2 && t.coatoms == 2) two_two += t.count;
    }
    const bool ok = four.size() == kOrder4Classes && types.size() == kOrder4Types &&
                    two_two == kTwoMinTwoCoatom && sum == kOrder4Classes;
    return Verdict{ok, std::to_string(four.size()) + " classes, " + std::to_string(types.size()) +
                           " types, " + std::to_string(two_two) + " two-minimal/two-coatom"};
  });

  criterion(11, "family-screen", 60, [&] {
    if (three.empty()) three = enumerate_ai_semirings(3);
    auto pass = screen_family(three, 2);
    for (const char* n : {"S2", "S7", "S53"}) {
      auto s = registry(n);
      auto hit = std::any_of(pass.begin(), pass.end(),
                             [&](const auto& t) { return iso_verified(s, t); });
      if (!hit) return Verdict{false, std::string(n) + " not among passers"};
    }
    return Verdict{pass.size() >= kFamilyLowerBound,
                   std::to_string(pass.size()) + " of " + std::to_string(three.size()) + " pass"};
  });

  criterion(12, "derivation-soundness", 120, [] {
    std::mt19937_64 rng(12);
    std::vector<FiniteAiSemiring> models;
    for (std::size_t k = 1; k <= 4; ++k) {
      auto v = enumerate_ai_semirings(k);
      models.insert(models.end(), v.begin(), v.end());
    }
    const SearchBounds bounds{.max_chain = 3, .max_word_len = 3, .max_summands = 3,
                              .max_subst_image = 2, .max_nodes = 5000};
    std::size_t found = 0, attempts = 0, model_checks = 0;
    while (found < kDerivationSamples && attempts < 20 * kDerivationSamples) {
      ++attempts;
      std::vector<Identity> sigma;
      for (int i = 1 + static_cast<int>(rng() % 2); i > 0; --i) {
        auto l = testing::random_term(rng, 2, 2, 2), r = testing::random_term(rng, 2, 2, 2);
        if (l != r) sigma.push_back({l, r});
      }
      if (sigma.empty()) continue;
      const auto start = testing::random_term(rng, 3, 2, 3);
      auto end = start;
      for (int i = 1 + static_cast<int>(rng() % 2); i > 0; --i) {
        auto next = successors(sigma, end, bounds);
        if (next.empty()) break;
        end = next[rng() % next.size()].next;
      }
      const Identity claim{start, end};
      auto r = search_derivation(sigma, claim, bounds);
      if (!r.derivation) continue;
      ++found;
      auto c = check_derivation(*r.derivation, claim);
      if (!c.ok) return Verdict{false, "checker rejected: " + c.diagnosis};
      for (std::size_t m = 0; m < kModelsPerDerivation; ++m) {
        const auto& s = models[rng() % models.size()];
        const bool sat = std::all_of(sigma.begin(), sigma.end(), [&](const Identity& e) {
          return holds_identity(s, e.lhs, e.rhs).holds;
        });
        if (!sat) continue;
        ++model_checks;
        if (!holds_identity(s, claim.lhs, claim.rhs).holds) {
          return Verdict{false, "unsound: " + to_string(claim) + " in " + s.name()};
        }
      }
    }
    return Verdict{found >= kDerivationSamples,
                   std::to_string(found) + " derivations, " + std::to_string(model_checks) +
                       " model checks"};
  });

  criterion(13, "out-of-scope-declared", 60, [] {
    VerifyOptions o;
    o.oracle_samples = 100;
    o.delta_samples = 100;
    o.graph_samples = 100;
    o.derivation_samples = 20;
    auto r = paper_verify(o);
    std::size_t declared = 0;
    bool basis_listed = false;
    for (const auto& c : r.claims) {
      if (c.status != ClaimStatus::OutOfScope) continue;
      ++declared;
      if (c.description.find("nonfinitely based") != std::string::npos) basis_listed = true;
    }
    const bool ok = declared >= 1 && basis_listed && r.ok() &&
                    render_text(r).find("out of scope: not machine-checkable") != std::string::npos;
    return Verdict{ok, std::to_string(declared) + " items declared out of scope"};
  });

  std::printf("%s: %d failing\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}

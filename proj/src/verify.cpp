#include "aisemi/verify.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <sstream>

#include "aisemi/derivation.hpp"
#include "aisemi/enumeration.hpp"
#include "aisemi/family.hpp"
#include "aisemi/graphs.hpp"
#include "aisemi/satisfaction.hpp"
#include "aisemi/structure.hpp"

namespace aisemi {

std::string_view status_name(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Pass: return "pass";
    case ClaimStatus::Fail: return "fail";
    case ClaimStatus::Skipped: return "skipped";
    case ClaimStatus::OutOfScope: return "out of scope: not machine-checkable";
  }
  return "?";
}

bool RunReport::ok() const {
  return std::none_of(claims.begin(), claims.end(), [](const ClaimResult& c) {
    return c.status == ClaimStatus::Fail;
  });
}

namespace {

using Lookup = std::function<FiniteAiSemiring(std::string_view)>;

struct Outcome {
  bool pass;
  std::string observed;
};

bool iso(const FiniteAiSemiring& a, const FiniteAiSemiring& b) {
  return find_isomorphism(a, b).has_value();
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

std::string labels_of(const FiniteAiSemiring& s, const std::vector<Element>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + s.label(v[i]);
  return out + "}";
}

Word random_word(std::mt19937_64& rng, int nvars, int max_len) {
  const int len = 1 + static_cast<int>(rng() % max_len);
  Letters l;
  for (int i = 0; i < len; ++i) l.push_back("x" + std::to_string(1 + rng() % nvars));
  return Word(std::move(l));
}

Term random_term(std::mt19937_64& rng, int nvars, int max_summands, int max_len) {
  WordSet s;
  const int n = 1 + static_cast<int>(rng() % max_summands);
  for (int i = 0; i < n; ++i) s.insert(random_word(rng, nvars, max_len));
  return Term(std::move(s));
}

Outcome registry_valid(const Lookup& get) {
  std::vector<std::string> bad;
  for (const auto& name : registry_names()) {
    auto s = get(name);
    if (!validate(s.add_table(), s.mul_table()).ok()) bad.push_back(name);
  }
  return {bad.empty(), bad.empty() ? "all valid" : "invalid: " + join(bad)};
}

Outcome additive_profile(const Lookup& get) {
  auto s = get("S4_124");
  auto p = natural_order(s);
  std::ostringstream o;
  o << "top=" << s.label(p.top) << " minimals=" << labels_of(s, p.minimals)
    << " coatoms=" << labels_of(s, p.coatoms);
  return {o.str() == "top=1 minimals={3,4} coatoms={2,4}", o.str()};
}

Outcome s124_structure(const Lookup& get) {
  auto s = get("S4_124");
  auto pick = [&](std::initializer_list<const char*> ls) {
    std::vector<Element> v;
    for (auto l : ls) v.push_back(s.index_of(l));
    return v;
  };
  std::vector<std::string> obs;
  bool ok = true;
  auto record = [&](const std::string& what, bool r) {
    obs.push_back(what + (r ? " yes" : " no"));
    ok = ok && r;
  };
  auto guarded = [&](const std::string& what, auto&& f) {
    try {
      record(what, f());
    } catch (const AlgebraError& e) {
      obs.push_back(what + " error: " + e.what());
      ok = false;
    }
  };
  guarded("{1,2,4}~S2", [&] { return iso(subalgebra(s, pick({"1", "2", "4"})), get("S2")); });
  guarded("{1,2,3}~S53", [&] { return iso(subalgebra(s, pick({"1", "2", "3"})), get("S53")); });
  guarded("S4_124/{1,2}~S7", [&] {
    return iso(quotient(s, Partition::parse(s, "1,2|3|4")), get("S7"));
  });
  return {ok, join(obs)};
}

Outcome subdirect(const Lookup& get) {
  std::vector<std::string> obs;
  bool ok = true;
  auto one = [&](const char* name, const char* t1, const char* t2, const char* f1,
                 const char* f2) {
    auto s = get(name);
    try {
      auto r = check_subdirect(s, Partition::parse(s, t1), Partition::parse(s, t2));
      const bool good = r.injective && r.surjective && iso(r.factor1, get(f1)) &&
                        iso(r.factor2, get(f2));
      obs.push_back(std::string(name) + (good ? " ok" : " mismatch"));
      ok = ok && good;
    } catch (const AlgebraError& e) {
      obs.push_back(std::string(name) + " error: " + e.what());
      ok = false;
    }
  };
  one("R6", "1,2,3,4", "1,6|2,5", "S2", "S4_359");
  one("S4_359", "1,2", "1,4", "S7", "S53");
  return {ok, join(obs)};
}

Outcome w_membership(const Lookup& get, unsigned threads) {
  std::vector<std::string> failing;
  for (const char* name : {"S2", "S7", "S53", "S4_124"}) {
    for (const auto& r : in_W(get(name), 3, {.threads = threads})) {
      if (!r.verdict.holds) failing.push_back(std::string(name) + " n=" + std::to_string(r.n));
    }
  }
  return {failing.empty(), failing.empty() ? "all hold" : "fails: " + join(failing)};
}

Outcome decider_oracle(const Lookup& get, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto s2 = get("S2"), s7 = get("S7"), s53 = get("S53");
  std::size_t bad = 0;
  std::string first;
  for (std::size_t i = 0; i < samples; ++i) {
    auto q = random_word(rng, 4, 4);
    auto u = random_term(rng, 4, 4, 4);
    const bool m2 = decide_s2(q, u) != holds_inequality(s2, q, u).holds;
    const bool m7 = decide_s7(q, u) != holds_inequality(s7, q, u).holds;
    const bool m53 = decide_s53(q, u) != holds_inequality(s53, q, u).holds;
    if (m2 || m7 || m53) {
      if (!bad) first = to_string(q) + " <= " + to_string(u);
      ++bad;
    }
  }
  return {bad == 0, std::to_string(bad) + " discrepancies in " + std::to_string(samples) +
                        (bad ? ", first " + first : "")};
}

// Z in delta(u) by definition, for every subset of c(u).
std::set<VariableSet> delta_by_subsets(const Term& u) {
  const auto c = content(u);
  std::vector<Variable> vars(c.begin(), c.end());
  std::set<VariableSet> out;
  for (std::uint32_t mask = 1; mask < (1u << vars.size()); ++mask) {
    VariableSet z;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (mask & (1u << i)) z.insert(vars[i]);
    const bool good = std::all_of(u.summands().begin(), u.summands().end(), [&](const Word& w) {
      std::size_t hits = 0;
      for (const auto& x : w.letters()) hits += z.count(x);
      return hits == 1;
    });
    if (good) out.insert(z);
  }
  return out;
}

Outcome delta_claim(std::size_t samples, std::uint64_t seed) {
  std::vector<int> nonempty;
  for (int n = 1; n <= 10; ++n)
    if (!delta(make_family(n).u).empty()) nonempty.push_back(n);
  std::mt19937_64 rng(seed);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    auto u = random_term(rng, 5, 4, 4);
    if (delta(u) != delta_by_subsets(u)) ++bad;
  }
  std::string obs = nonempty.empty() ? "delta(u(n)) empty for n<=10"
                                     : "delta(u(n)) nonempty for " + std::to_string(nonempty.size()) + " n";
  obs += "; " + std::to_string(bad) + " oracle mismatches";
  return {nonempty.empty() && bad == 0, obs};
}

Outcome graph_claim(std::size_t samples, std::uint64_t seed) {
  std::vector<std::string> obs;
  bool ok = true;
  for (int n = 1; n <= 5; ++n) {
    auto c = find_odd_cycle(graph_of(make_family(n).u));
    if (!c || c->size() != static_cast<std::size_t>(2 * n + 1)) {
      ok = false;
      obs.push_back("n=" + std::to_string(n) + " cycle " + (c ? std::to_string(c->size()) : "none"));
    }
  }
  std::mt19937_64 rng(seed);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const int nv = 2 + static_cast<int>(rng() % 9);
    VariableSet vs;
    std::map<Variable, int> side;
    for (int v = 0; v < nv; ++v) {
      auto name = "v" + std::to_string(v);
      vs.insert(name);
      side[name] = static_cast<int>(rng() % 2);
    }
    std::vector<Edge> edges;
    for (const auto& a : vs)
      for (const auto& b : vs)
        if (a < b && side[a] != side[b] && rng() % 3 == 0) edges.emplace_back(a, b);
    TermGraph g(vs, edges);
    VariableSet h;
    for (const auto& v : vs)
      if (side[v] == 0 && rng() % 2) h.insert(v);
    auto r = constrained_bipartition(g, h);
    auto* b = std::get_if<Bipartition>(&r);
    if (!b || !std::includes(b->y.begin(), b->y.end(), h.begin(), h.end())) ++bad;
  }
  if (bad) obs.push_back(std::to_string(bad) + " random instances rejected");
  ok = ok && bad == 0;
  return {ok, obs.empty() ? "cycles of length 2n+1; H inside Y on all instances" : join(obs)};
}

Outcome census3(unsigned threads, std::vector<FiniteAiSemiring>& keep) {
  keep = enumerate_ai_semirings(3, {.threads = threads});
  return {keep.size() == 61, std::to_string(keep.size()) + " classes"};
}

Outcome census4(unsigned threads) {
  auto four = enumerate_ai_semirings(4, {.threads = threads});
  auto types = classify_additive_type(four);
  std::size_t two_two = 0;
  for (const auto& t : types)
    if (t.minimals == 2 && t.coatoms == 2) two_two += t.count;
  std::ostringstream o;
  o << four.size() << " classes, " << types.size() << " additive types, " << two_two
    << " with two minimals and two coatoms";
  return {four.size() == 866 && types.size() == 5 && two_two == 217, o.str()};
}

Outcome screening(const Lookup& get, const std::vector<FiniteAiSemiring>& three,
                  unsigned threads) {
  auto pass = screen_family(three, 2, threads);
  std::set<CanonicalForm> forms;
  for (const auto& s : pass) forms.insert(canonical_form(s));
  std::vector<std::string> missing;
  for (const char* name : {"S2", "S7", "S53"}) {
    auto s = get(name);
    if (s.size() != 3 || !forms.count(canonical_form(s))) missing.push_back(name);
  }
  std::string obs = std::to_string(pass.size()) + " of " + std::to_string(three.size()) + " pass";
  if (!missing.empty()) obs += "; missing " + join(missing);
  return {pass.size() >= 32 && missing.empty(), obs};
}

Outcome derivation_soundness(std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<FiniteAiSemiring> models;
  for (std::size_t k = 2; k <= 4; ++k) {
    auto all = enumerate_ai_semirings(k);
    models.insert(models.end(), all.begin(), all.end());
  }
  const SearchBounds bounds{.max_chain = 3, .max_word_len = 3, .max_summands = 3,
                            .max_subst_image = 2, .max_nodes = 5000};
  std::size_t found = 0, attempts = 0, unsound = 0, rejected = 0;
  while (found < samples && attempts < samples * 20) {
    ++attempts;
    std::vector<Identity> sigma;
    const int rules = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < rules; ++i) {
      auto l = random_term(rng, 2, 2, 2);
      auto r = random_term(rng, 2, 2, 2);
      if (l != r) sigma.push_back({l, r});
    }
    if (sigma.empty()) continue;
    Term start = random_term(rng, 3, 2, 3);
    Term end = start;
    const int walk = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < walk; ++i) {
      auto next = successors(sigma, end, bounds);
      if (next.empty()) break;
      end = next[rng() % next.size()].next;
    }
    const Identity claim{start, end};
    auto r = search_derivation(sigma, claim, bounds);
    if (!r.derivation) continue;
    ++found;
    if (!check_derivation(*r.derivation, claim).ok) ++rejected;
    for (int m = 0; m < 8; ++m) {
      const auto& s = models[rng() % models.size()];
      const bool models_sigma = std::all_of(sigma.begin(), sigma.end(), [&](const Identity& e) {
        return holds_identity(s, e.lhs, e.rhs).holds;
      });
      if (models_sigma && !holds_identity(s, claim.lhs, claim.rhs).holds) ++unsound;
    }
  }
  std::ostringstream o;
  o << found << " derivations found, " << rejected << " rejected by the checker, " << unsound
    << " unsound model checks";
  return {found >= samples && rejected == 0 && unsound == 0, o.str()};
}

}  // namespace

RunReport paper_verify(const VerifyOptions& opts) {
  const Lookup get = opts.lookup ? opts.lookup : Lookup([](std::string_view n) { return registry(n); });
  RunReport report;
  report.command = std::string("paper-verify") + (opts.full ? " --full" : "");
  std::vector<FiniteAiSemiring> three;

  auto run = [&](int id, std::string name, std::string description, std::string expected,
                 auto&& body) {
    ClaimResult c{id, std::move(name), std::move(description), ClaimStatus::Fail,
                  std::move(expected), {}, 0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      Outcome o = body();
      c.status = o.pass ? ClaimStatus::Pass : ClaimStatus::Fail;
      c.observed = std::move(o.observed);
    } catch (const std::exception& e) {
      c.observed = std::string("error: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.claims.push_back(std::move(c));
  };

  run(1, "registry-valid", "the six named algebras satisfy every ai-semiring axiom",
      "all valid", [&] { return registry_valid(get); });
  run(2, "additive-profile", "natural order of S4_124", "top=1 minimals={3,4} coatoms={2,4}",
      [&] { return additive_profile(get); });
  run(3, "s124-structure", "subalgebras and quotient of S4_124",
      "{1,2,4}~S2, {1,2,3}~S53, S4_124/{1,2}~S7", [&] { return s124_structure(get); });
  run(4, "subdirect", "R6 and S4_359 as subdirect products",
      "R6 <= S2 x S4_359, S4_359 <= S7 x S53", [&] { return subdirect(get); });
  run(5, "w-membership", "S2, S7, S53, S4_124 satisfy q(n) <= u(n) for n=1,2,3", "all hold",
      [&] { return w_membership(get, opts.threads); });
  run(6, "decider-oracle", "syntactic deciders agree with brute force on S2, S7, S53",
      "0 discrepancies", [&] { return decider_oracle(get, opts.oracle_samples, opts.seed); });
  run(7, "delta", "delta(u(n)) is empty; delta matches subset enumeration",
      "empty for n<=10, 0 mismatches", [&] { return delta_claim(opts.delta_samples, opts.seed + 1); });
  run(8, "graph-lemma", "odd cycles in graph(u(n)); constrained bipartitions",
      "cycle length 2n+1, H inside Y", [&] { return graph_claim(opts.graph_samples, opts.seed + 2); });
  run(9, "census-3", "ai-semirings of order 3 up to isomorphism", "61 classes",
      [&] { return census3(opts.threads, three); });
  if (opts.full) {
    run(10, "census-4", "ai-semirings of order 4 up to isomorphism",
        "866 classes, 5 additive types, 217 with two minimals and two coatoms",
        [&] { return census4(opts.threads); });
  } else {
    report.claims.push_back({10, "census-4", "ai-semirings of order 4 up to isomorphism",
                             ClaimStatus::Skipped, "866 classes, 5 types, 217",
                             "needs --full", 0});
  }
  run(11, "family-screen", "order-3 classes satisfying q(n) <= u(n) for n=1,2",
      "at least 32, including S2, S7, S53", [&] {
        if (three.empty()) three = enumerate_ai_semirings(3, {.threads = opts.threads});
        return screening(get, three, opts.threads);
      });
  run(12, "derivation-soundness", "found derivations check and hold in small models",
      std::to_string(opts.derivation_samples) + " found, 0 rejected, 0 unsound",
      [&] { return derivation_soundness(opts.derivation_samples, opts.seed + 3); });

  const char* meta[] = {
      "every subvariety of W containing S2, S7 and S53 is nonfinitely based",
      "S4_124 is nonfinitely based",
      "R6 is nonfinitely based",
      "varieties generated by the listed three-element algebras are nonfinitely based",
  };
  for (const char* m : meta) {
    report.claims.push_back({0, "meta", m, ClaimStatus::OutOfScope, "", "", 0});
  }
  return report;
}

std::string render_text(const RunReport& r) {
  std::ostringstream o;
  o << r.command << "\n";
  for (const auto& c : r.claims) {
    if (c.status == ClaimStatus::OutOfScope) {
      o << "  [--] " << c.description << ": " << status_name(c.status) << "\n";
      continue;
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.2fs", c.seconds);
    o << "  [" << (c.id < 10 ? "0" : "") << c.id << "] " << c.name << ": "
      << status_name(c.status) << " (" << buf << ")\n"
      << "       expected: " << c.expected << "\n"
      << "       observed: " << c.observed << "\n";
  }
  o << (r.ok() ? "ok" : "FAILED") << "\n";
  return o.str();
}

}  // namespace aisemi

#include "aisemi/satisfaction.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace aisemi {

Element eval(const Word& w, const FiniteAiSemiring& s, const Assignment& a) {
  auto value_of = [&](const Variable& x) {
    auto it = a.find(x);
    if (it == a.end()) throw TermError("unassigned variable '" + x + "'");
    return it->second;
  };
  Element v = value_of(w[0]);
  for (std::size_t i = 1; i < w.length(); ++i) v = s.mul(v, value_of(w[i]));
  return v;
}

Element eval(const Term& t, const FiniteAiSemiring& s, const Assignment& a) {
  auto it = t.summands().begin();
  Element v = eval(*it, s, a);
  for (++it; it != t.summands().end(); ++it) v = s.add(v, eval(*it, s, a));
  return v;
}

namespace {

// Terms rewritten over variable indices for the enumeration loop.
struct CompiledTerm {
  std::vector<std::vector<int>> words;

  Element eval(const FiniteAiSemiring& s, const std::vector<Element>& values) const {
    Element acc = -1;
    for (const auto& w : words) {
      Element v = values[w[0]];
      for (std::size_t i = 1; i < w.size(); ++i) v = s.mul(v, values[w[i]]);
      acc = acc < 0 ? v : s.add(acc, v);
    }
    return acc;
  }
};

CompiledTerm compile(const Term& t, const std::vector<Variable>& vars) {
  CompiledTerm c;
  for (const auto& w : t.summands()) {
    std::vector<int> idx;
    for (const auto& x : w.letters()) {
      idx.push_back(static_cast<int>(
          std::lower_bound(vars.begin(), vars.end(), x) - vars.begin()));
    }
    c.words.push_back(std::move(idx));
  }
  return c;
}

void decode(std::uint64_t index, std::size_t base, std::vector<Element>& values) {
  for (std::size_t i = values.size(); i-- > 0;) {
    values[i] = static_cast<Element>(index % base);
    index /= base;
  }
}

// Returns the least violating counter index, or total if none.
template <typename Violates>
std::uint64_t least_violation(std::uint64_t total, std::size_t base,
                              std::size_t nvars, unsigned threads,
                              const Violates& violates) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, total / 4096)));

  std::atomic<std::uint64_t> best{total};
  auto scan = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<Element> values(nvars);
    for (std::uint64_t i = begin; i < end; ++i) {
      if ((i & 1023) == 0 && i >= best.load(std::memory_order_relaxed)) return;
      decode(i, base, values);
      if (violates(values)) {
        auto cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
        return;
      }
    }
  };
  if (threads <= 1) {
    scan(0, total);
  } else {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t b = std::min(total, t * chunk);
      const std::uint64_t e = std::min(total, b + chunk);
      pool.emplace_back(scan, b, e);
    }
  }
  return best.load();
}

std::uint64_t assignment_count(std::size_t base, std::size_t nvars,
                               const SearchOptions& opts) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < nvars; ++i) {
    if (total > kMaxAssignments / std::max<std::size_t>(base, 1) &&
        !opts.allow_large) {
      throw GuardError("refusing to enumerate " + std::to_string(base) + "^" +
                       std::to_string(nvars) +
                       " assignments without the override flag");
    }
    total *= base;
  }
  if (total > kMaxAssignments && !opts.allow_large) {
    throw GuardError("refusing to enumerate " + std::to_string(total) +
                     " assignments without the override flag");
  }
  return total;
}

template <typename Lhs, typename Rhs, typename Bad>
SatisfactionVerdict brute_force(const FiniteAiSemiring& s,
                                const std::vector<Variable>& vars,
                                const Lhs& lhs, const Rhs& rhs, const Bad& bad,
                                const SearchOptions& opts) {
  const std::size_t base = s.size();
  const std::uint64_t total = assignment_count(base, vars.size(), opts);
  auto violates = [&](const std::vector<Element>& values) {
    return bad(lhs.eval(s, values), rhs.eval(s, values));
  };
  const auto idx = least_violation(total, base, vars.size(), opts.threads, violates);
  SatisfactionVerdict verdict;
  if (idx == total) return verdict;
  std::vector<Element> values(vars.size());
  decode(idx, base, values);
  Counterexample ce;
  for (std::size_t i = 0; i < vars.size(); ++i) ce.assignment[vars[i]] = values[i];
  ce.lhs = lhs.eval(s, values);
  ce.rhs = rhs.eval(s, values);
  verdict.holds = false;
  verdict.counterexample = std::move(ce);
  return verdict;
}

std::vector<Variable> sorted_vars(const VariableSet& a, const VariableSet& b) {
  VariableSet all = a;
  all.insert(b.begin(), b.end());
  return {all.begin(), all.end()};
}

}  // namespace

SatisfactionVerdict holds_inequality(const FiniteAiSemiring& s, const Word& q,
                                     const Term& u, const SearchOptions& opts) {
  const auto vars = sorted_vars(content(q), content(u));
  const auto cq = compile(Term(q), vars);
  const auto cu = compile(u, vars);
  return brute_force(
      s, vars, cq, cu,
      [&](Element qv, Element uv) { return s.add(uv, qv) != uv; }, opts);
}

SatisfactionVerdict holds_identity(const FiniteAiSemiring& s, const Term& u,
                                   const Term& v, const SearchOptions& opts) {
  const auto vars = sorted_vars(content(u), content(v));
  const auto cu = compile(u, vars);
  const auto cv = compile(v, vars);
  return brute_force(
      s, vars, cu, cv, [](Element a, Element b) { return a != b; }, opts);
}

// ---------------------------------------------------------------------------
// Syntactic deciders

namespace {

VariableSet content(const WordSet& words) {
  VariableSet out;
  for (const auto& w : words) out.insert(w.letters().begin(), w.letters().end());
  return out;
}

bool intersects(const VariableSet& a, const VariableSet& b) {
  return std::any_of(a.begin(), a.end(),
                     [&](const Variable& x) { return b.count(x) != 0; });
}

bool subset(const VariableSet& a, const VariableSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

bool decide_s2(const Word& q, const Term& u) {
  if (!level_geq(3, u).empty()) return true;
  const auto c1 = content(level(1, u));
  const auto c2 = content(level(2, u));
  if (intersects(c1, c2)) return true;
  // All summands have length <= 2 and L1, L2 share no variable.
  if (q.length() == 1) return u.contains(q);
  if (q.length() == 2) return subset(content(q), c2);
  return false;
}

bool decide_s7(const Word& q, const Term& u) {
  if (!subset(content(q), aisemi::content(u))) return false;
  const auto du = delta(u);
  const auto duq = delta(add(u, Term(q)));
  return std::includes(duq.begin(), duq.end(), du.begin(), du.end());
}

bool decide_s53(const Word& q, const Term& u) {
  if (!subset(content(q), aisemi::content(u))) return false;
  if (level_geq(2, u).empty()) return u.contains(q);
  // Scattered subwords: the brute-force oracle on S53 rejects the
  // contiguous-factor reading (e.g. x1x3 <= x1x4x3 holds).
  const auto fu = subwords2(u);
  for (const auto& w : subwords2(q)) {
    const auto cw = content(w);
    bool found = std::any_of(fu.begin(), fu.end(), [&](const Word& w2) {
      return subset(content(w2), cw);
    });
    if (!found) return false;
  }
  return true;
}

std::vector<Inequality> reduce_identity(const Term& u, const Term& v) {
  std::vector<Inequality> out;
  for (const auto& w : u.summands()) out.push_back({w, v});
  for (const auto& w : v.summands()) out.push_back({w, u});
  return out;
}

}  // namespace aisemi

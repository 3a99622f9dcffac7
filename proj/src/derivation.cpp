#include "aisemi/derivation.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "aisemi/algebra.hpp"

namespace aisemi {

namespace {

const Term& source_side(const DerivationStep& s) {
  return s.orientation == Orientation::Forward ? s.rule.lhs : s.rule.rhs;
}

const Term& target_side(const DerivationStep& s) {
  return s.orientation == Orientation::Forward ? s.rule.rhs : s.rule.lhs;
}

bool in_sigma(const std::vector<Identity>& sigma, const Identity& rule) {
  return std::find(sigma.begin(), sigma.end(), rule) != sigma.end();
}

}  // namespace

std::string to_string(const Identity& e) {
  return to_string(e.lhs) + " = " + to_string(e.rhs);
}

StepCheck check_step(const std::vector<Identity>& sigma, const Term& t,
                     const Term& t_next, const DerivationStep& step) {
  if (!in_sigma(sigma, step.rule)) {
    throw DerivationError("rule not in sigma: " + to_string(step.rule));
  }
  const auto before = compose(step.left, step.subst.apply(source_side(step)),
                              step.right, step.remainder);
  if (before != t) {
    return {false, "left side mismatch: witnesses give " + to_string(before) +
                       ", chain has " + to_string(t)};
  }
  const auto after = compose(step.left, step.subst.apply(target_side(step)),
                             step.right, step.remainder);
  if (after != t_next) {
    return {false, "right side mismatch: witnesses give " + to_string(after) +
                       ", chain has " + to_string(t_next)};
  }
  return {true, {}};
}

DerivationCheck check_derivation(const Derivation& d, const Identity& claim) {
  if (d.chain.empty()) return {false, std::nullopt, "empty chain"};
  if (d.steps.size() + 1 != d.chain.size()) {
    return {false, std::nullopt, "step count does not match chain length"};
  }
  if (d.chain.front() != claim.lhs) {
    return {false, std::nullopt, "chain does not start at the claim's left side"};
  }
  if (d.chain.back() != claim.rhs) {
    return {false, std::nullopt, "chain does not end at the claim's right side"};
  }
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    StepCheck c;
    try {
      c = check_step(d.sigma, d.chain[i], d.chain[i + 1], d.steps[i]);
    } catch (const DerivationError& e) {
      return {false, i, e.what()};
    }
    if (!c.ok) return {false, i, c.diagnosis};
  }
  return {true, std::nullopt, {}};
}

// ---------------------------------------------------------------------------
// Search

namespace {

WordSet factors_of(const std::vector<Term>& terms, std::size_t max_len) {
  WordSet out;
  for (const auto& t : terms) {
    for (const auto& w : t.summands()) {
      const auto& l = w.letters();
      for (std::size_t i = 0; i < l.size(); ++i) {
        for (std::size_t j = i + 1; j <= l.size() && j - i <= max_len; ++j) {
          out.insert(Word(Letters(l.begin() + static_cast<long>(i),
                                  l.begin() + static_cast<long>(j))));
        }
      }
    }
  }
  return out;
}

// Nonempty sets of the given words with total length <= cap.
std::vector<Term> image_candidates(const WordSet& words, std::size_t cap) {
  std::vector<Word> pool(words.begin(), words.end());
  std::vector<Term> out;
  WordSet current;
  auto rec = [&](auto&& self, std::size_t from, std::size_t used) -> void {
    if (!current.empty()) out.emplace_back(current);
    for (std::size_t i = from; i < pool.size(); ++i) {
      if (used + pool[i].length() > cap) continue;
      current.insert(pool[i]);
      self(self, i + 1, used + pool[i].length());
      current.erase(pool[i]);
    }
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

bool within(const Term& t, const SearchBounds& b) {
  if (t.size() > b.max_summands) return false;
  for (const auto& w : t.summands()) {
    if (w.length() > b.max_word_len) return false;
  }
  return true;
}

// Assigns images to `vars` one at a time; prunes as soon as a fully
// assigned word of s maps outside the factors of t.
void match_source(const Term& s, const std::vector<Variable>& vars,
                  const std::vector<Term>& cands, const WordSet& t_factors,
                  Substitution& phi, std::size_t k,
                  const std::function<void(const Substitution&)>& emit) {
  if (k == vars.size()) {
    emit(phi);
    return;
  }
  for (const auto& img : cands) {
    phi.set(vars[k], img);
    bool ok = true;
    for (const auto& w : s.summands()) {
      const auto c = content(w);
      if (!c.count(vars[k])) continue;
      if (!std::all_of(c.begin(), c.end(), [&](const Variable& x) {
            return phi.images().count(x);
          })) {
        continue;
      }
      const auto image = phi.apply(w);
      for (const auto& pw : image.summands()) {
        if (!t_factors.count(pw)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) match_source(s, vars, cands, t_factors, phi, k + 1, emit);
  }
  Substitution without;
  for (const auto& [x, img] : phi.images()) {
    if (x != vars[k]) without.set(x, img);
  }
  phi = without;
}

// Drops x -> x entries, which the substitution already implies.
Substitution trimmed(const Substitution& phi) {
  Substitution out;
  for (const auto& [x, img] : phi.images()) {
    if (!(img.size() == 1 && img.summands().begin()->letters() == Letters{x})) {
      out.set(x, img);
    }
  }
  return out;
}

}  // namespace

std::vector<Successor> successors(const std::vector<Identity>& sigma,
                                  const Term& t, const SearchBounds& bounds,
                                  const std::vector<Term>& hints) {
  std::vector<Successor> out;
  std::set<Term> produced;
  const auto t_factors = factors_of({t}, bounds.max_word_len);
  const auto source_cands = image_candidates(t_factors, bounds.max_subst_image);
  std::vector<Term> hint_terms = hints;
  hint_terms.push_back(t);
  const auto free_cands = image_candidates(
      factors_of(hint_terms, bounds.max_subst_image), bounds.max_subst_image);

  for (const auto& rule : sigma) {
    for (auto orient : {Orientation::Forward, Orientation::Backward}) {
      const Term& s = orient == Orientation::Forward ? rule.lhs : rule.rhs;
      const Term& s2 = orient == Orientation::Forward ? rule.rhs : rule.lhs;
      const auto cs = content(s);
      std::vector<Variable> vars(cs.begin(), cs.end());
      std::vector<Variable> extra;
      for (const auto& x : content(s2)) {
        if (!cs.count(x)) extra.push_back(x);
      }

      auto place = [&](const Substitution& phi) {
        const Term image = phi.apply(s);
        for (const auto& occ : subterm_occurrences(image, t)) {
          // r = (t minus the placed words) plus any subset of the placed words.
          std::vector<Word> placed;
          for (const auto& w : image.summands()) {
            placed.push_back(wrap(occ.left, w, occ.right));
          }
          std::sort(placed.begin(), placed.end());
          placed.erase(std::unique(placed.begin(), placed.end()), placed.end());
          if (placed.size() >= 20) continue;
          for (std::uint32_t mask = 0; mask < (1u << placed.size()); ++mask) {
            WordSet rest = occ.rest;
            for (std::size_t i = 0; i < placed.size(); ++i) {
              if (mask & (1u << i)) rest.insert(placed[i]);
            }
            Term next = compose(occ.left, phi.apply(s2), occ.right, rest);
            if (!within(next, bounds) || next == t) continue;
            if (!produced.insert(next).second) continue;
            out.push_back({DerivationStep{occ.left, occ.right, rest, rule,
                                          orient, trimmed(phi)},
                           std::move(next)});
          }
        }
      };

      auto with_extras = [&](const Substitution& base) {
        Substitution phi = base;
        auto rec = [&](auto&& self, std::size_t k) -> void {
          if (k == extra.size()) {
            place(phi);
            return;
          }
          for (const auto& img : free_cands) {
            phi.set(extra[k], img);
            self(self, k + 1);
          }
        };
        rec(rec, 0);
      };

      Substitution phi;
      match_source(s, vars, source_cands, t_factors, phi, 0, with_extras);
    }
  }
  return out;
}

SearchResult search_derivation(const std::vector<Identity>& sigma,
                               const Identity& claim,
                               const SearchBounds& bounds) {
  if (bounds.max_chain == 0 || bounds.max_word_len == 0 ||
      bounds.max_summands == 0 || bounds.max_subst_image == 0 ||
      bounds.max_nodes == 0) {
    throw std::invalid_argument("search bounds must be positive");
  }
  SearchResult result;
  if (!within(claim.lhs, bounds) || !within(claim.rhs, bounds)) {
    result.reason = "claim exceeds the term bounds";
    return result;
  }

  struct Node {
    Term term;
    std::size_t parent;
    std::optional<DerivationStep> step;
    std::size_t depth;
  };
  std::vector<Node> nodes{{claim.lhs, 0, std::nullopt, 1}};
  std::set<Term> seen{claim.lhs};
  std::deque<std::size_t> queue{0};
  bool truncated = false;

  auto build = [&](std::size_t i) {
    Derivation d;
    d.sigma = sigma;
    for (; nodes[i].step; i = nodes[i].parent) {
      d.chain.push_back(nodes[i].term);
      d.steps.push_back(*nodes[i].step);
    }
    d.chain.push_back(nodes[i].term);
    std::reverse(d.chain.begin(), d.chain.end());
    std::reverse(d.steps.begin(), d.steps.end());
    return d;
  };

  while (!queue.empty()) {
    const auto i = queue.front();
    queue.pop_front();
    ++result.explored;
    if (nodes[i].term == claim.rhs) {
      result.derivation = build(i);
      return result;
    }
    if (nodes[i].depth >= bounds.max_chain) continue;
    for (auto& [step, next] : successors(sigma, nodes[i].term, bounds, {claim.rhs})) {
      if (!seen.insert(next).second) continue;
      if (nodes.size() >= bounds.max_nodes) {
        truncated = true;
        break;
      }
      nodes.push_back({next, i, std::move(step), nodes[i].depth + 1});
      queue.push_back(nodes.size() - 1);
    }
    if (truncated) break;
  }
  // Targets already queued may still be reachable when the node cap hit.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].term == claim.rhs) {
      result.derivation = build(i);
      return result;
    }
  }
  result.reason = truncated ? "node limit reached"
                            : "no derivation within bounds";
  return result;
}

// ---------------------------------------------------------------------------
// File format

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

Letters parse_letters(const std::string& text) {
  if (text.empty()) return {};
  auto t = parse_term(text);
  if (t.size() != 1) throw TermError("context must be a single word: " + text);
  return t.summands().begin()->letters();
}

Substitution parse_subst(const std::string& text) {
  Substitution phi;
  if (text.empty()) return phi;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto arrow = item.find("->");
    if (arrow == std::string::npos) throw TermError("expected x->term: " + item);
    auto x = trim(std::string_view(item).substr(0, arrow));
    if (!is_valid_variable(x)) throw TermError("bad variable: " + x);
    phi.set(x, parse_term(item.substr(arrow + 2)));
  }
  return phi;
}

}  // namespace

Identity parse_identity(std::string_view text) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos || text.find('=', eq + 1) != std::string_view::npos) {
    throw TermError("identity must have exactly one '='");
  }
  return {parse_term(text.substr(0, eq)), parse_term(text.substr(eq + 1))};
}

DerivationFile parse_derivation(std::string_view text) {
  DerivationFile out;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    auto colon = body.find(':');
    if (colon == std::string::npos) throw ParseError(lineno, "expected 'key: value'");
    auto key = trim(std::string_view(body).substr(0, colon));
    auto value = trim(std::string_view(body).substr(colon + 1));
    try {
      if (key == "sigma") {
        out.derivation.sigma.push_back(parse_identity(value));
      } else if (key == "claim") {
        if (out.claim) throw ParseError(lineno, "duplicate claim");
        out.claim = parse_identity(value);
      } else if (key == "chain") {
        out.derivation.chain.push_back(parse_term(value));
      } else if (key == "step") {
        Letters left, right;
        WordSet rest;
        Orientation orientation = Orientation::Forward;
        Substitution subst;
        std::optional<std::size_t> rule;
        std::stringstream fields(value);
        std::string field;
        while (std::getline(fields, field, ';')) {
          auto f = trim(field);
          if (f.empty()) continue;
          auto eq = f.find('=');
          if (eq == std::string::npos) throw ParseError(lineno, "expected name=value: " + f);
          auto name = trim(std::string_view(f).substr(0, eq));
          auto v = trim(std::string_view(f).substr(eq + 1));
          if (name == "rule") {
            std::size_t pos = 0;
            std::size_t r = 0;
            try {
              r = std::stoul(v, &pos);
            } catch (const std::exception&) {
              pos = 0;
            }
            if (pos != v.size() || r == 0 || r > out.derivation.sigma.size()) {
              throw ParseError(lineno, "rule must index a preceding sigma line: " + v);
            }
            rule = r;
          } else if (name == "dir") {
            if (v == "forward") orientation = Orientation::Forward;
            else if (v == "backward") orientation = Orientation::Backward;
            else throw ParseError(lineno, "dir must be forward or backward");
          } else if (name == "left") {
            left = parse_letters(v);
          } else if (name == "right") {
            right = parse_letters(v);
          } else if (name == "rest") {
            if (!v.empty()) rest = parse_term(v).summands();
          } else if (name == "subst") {
            subst = parse_subst(v);
          } else {
            throw ParseError(lineno, "unknown step field: " + name);
          }
        }
        if (!rule) throw ParseError(lineno, "step needs rule=");
        out.derivation.steps.push_back({std::move(left), std::move(right),
                                        std::move(rest),
                                        out.derivation.sigma[*rule - 1],
                                        orientation, std::move(subst)});
      } else {
        throw ParseError(lineno, "unknown key: " + key);
      }
    } catch (const TermError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (out.derivation.chain.empty()) throw ParseError(lineno, "no chain lines");
  return out;
}

std::string serialize_derivation(const Derivation& d,
                                 const std::optional<Identity>& claim) {
  std::ostringstream out;
  for (const auto& e : d.sigma) out << "sigma: " << to_string(e) << "\n";
  if (claim) out << "claim: " << to_string(*claim) << "\n";
  for (std::size_t i = 0; i < d.chain.size(); ++i) {
    out << "chain: " << to_string(d.chain[i]) << "\n";
    if (i >= d.steps.size()) continue;
    const auto& s = d.steps[i];
    auto it = std::find(d.sigma.begin(), d.sigma.end(), s.rule);
    if (it == d.sigma.end()) throw DerivationError("rule not in sigma");
    out << "step: rule=" << (it - d.sigma.begin()) + 1
        << "; dir=" << (s.orientation == Orientation::Forward ? "forward" : "backward")
        << "; left=" << to_string(s.left) << "; right=" << to_string(s.right)
        << "; rest=" << to_string(s.remainder)
        << "; subst=" << to_string(s.subst) << "\n";
  }
  return out.str();
}

}  // namespace aisemi

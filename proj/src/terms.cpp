#include "aisemi/terms.hpp"

#include <algorithm>
#include <cctype>

namespace aisemi {

bool is_valid_variable(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) {
    return false;
  }
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

Word::Word(Letters letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw TermError("empty word");
  for (const auto& x : letters_) {
    if (!is_valid_variable(x)) {
      throw TermError("illegal identifier '" + x + "'");
    }
  }
}

Word::Word(std::initializer_list<Variable> letters)
    : Word(Letters(letters)) {}

Word Word::of(std::string_view text) {
  return *parse_term(text).summands().begin();
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  return a.letters_ <=> b.letters_;
}

Word concat(const Word& a, const Word& b) {
  Letters out = a.letters();
  out.insert(out.end(), b.letters().begin(), b.letters().end());
  return Word(std::move(out));
}

Word wrap(const Letters& left, const Word& w, const Letters& right) {
  Letters out = left;
  out.insert(out.end(), w.letters().begin(), w.letters().end());
  out.insert(out.end(), right.begin(), right.end());
  return Word(std::move(out));
}

Term::Term(WordSet summands) : summands_(std::move(summands)) {
  if (summands_.empty()) throw TermError("empty term");
}

Term::Term(std::initializer_list<Word> summands)
    : Term(WordSet(summands)) {}

Term::Term(Word w) : summands_{std::move(w)} {}

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

Word parse_summand(std::string_view text) {
  Letters letters;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*') {
      ++i;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw TermError("illegal identifier at '" + std::string(text.substr(i)) +
                      "'");
    }
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
      ++j;
    letters.emplace_back(text.substr(i, j - i));
    i = j;
  }
  if (letters.empty()) throw TermError("empty summand");
  return Word(std::move(letters));
}

}  // namespace

Term parse_term(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw TermError("empty term");
  }
  WordSet words;
  std::size_t start = 0;
  while (true) {
    auto plus = text.find('+', start);
    auto piece = text.substr(start, plus == std::string_view::npos
                                        ? std::string_view::npos
                                        : plus - start);
    words.insert(parse_summand(piece));
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return Term(std::move(words));
}

std::string to_string(const Letters& w) {
  std::string out;
  for (const auto& x : w) out += x;
  return out;
}

std::string to_string(const Word& w) { return to_string(w.letters()); }

std::string to_string(const WordSet& s) {
  std::string out;
  for (const auto& w : s) {
    if (!out.empty()) out += " + ";
    out += to_string(w);
  }
  return out;
}

std::string to_string(const Term& t) { return to_string(t.summands()); }

// ---------------------------------------------------------------------------
// Operations

Term add(const Term& s, const Term& t) {
  WordSet out = s.summands();
  out.insert(t.summands().begin(), t.summands().end());
  return Term(std::move(out));
}

Term mul(const Term& s, const Term& t) {
  WordSet out;
  for (const auto& a : s.summands())
    for (const auto& b : t.summands()) out.insert(concat(a, b));
  return Term(std::move(out));
}

VariableSet content(const Word& w) {
  return VariableSet(w.letters().begin(), w.letters().end());
}

VariableSet content(const Term& t) {
  VariableSet out;
  for (const auto& w : t.summands())
    out.insert(w.letters().begin(), w.letters().end());
  return out;
}

std::size_t occ(const Variable& x, const Word& w) {
  return static_cast<std::size_t>(
      std::count(w.letters().begin(), w.letters().end(), x));
}

WordSet factors2(const Word& w) {
  WordSet out;
  for (std::size_t i = 0; i + 1 < w.length(); ++i) out.insert(Word{w[i], w[i + 1]});
  return out;
}

WordSet factors2(const Term& t) {
  WordSet out;
  for (const auto& w : t.summands()) out.merge(factors2(w));
  return out;
}

WordSet subwords2(const Word& w) {
  WordSet out;
  for (std::size_t i = 0; i < w.length(); ++i)
    for (std::size_t j = i + 1; j < w.length(); ++j) out.insert(Word{w[i], w[j]});
  return out;
}

WordSet subwords2(const Term& t) {
  WordSet out;
  for (const auto& w : t.summands()) out.merge(subwords2(w));
  return out;
}

WordSet level(std::size_t k, const Term& u) {
  WordSet out;
  for (const auto& w : u.summands())
    if (w.length() == k) out.insert(w);
  return out;
}

WordSet level_geq(std::size_t k, const Term& u) {
  WordSet out;
  for (const auto& w : u.summands())
    if (w.length() >= k) out.insert(w);
  return out;
}

std::set<VariableSet> delta(const Term& u) {
  // Exact-cover style backtracking over the variables of u: each summand
  // must be hit exactly once, by a variable occurring once in it.
  const auto all_vars = content(u);
  const std::vector<Variable> vars(all_vars.begin(), all_vars.end());
  const std::vector<Word> words(u.summands().begin(), u.summands().end());
  const std::size_t nv = vars.size();
  const std::size_t nw = words.size();

  std::vector<std::vector<std::size_t>> summands_of(nv);
  std::vector<bool> eligible(nv, true);
  std::vector<std::size_t> undecided(nw, 0);
  for (std::size_t w = 0; w < nw; ++w) {
    for (std::size_t v = 0; v < nv; ++v) {
      auto count = occ(vars[v], words[w]);
      if (count == 0) continue;
      summands_of[v].push_back(w);
      ++undecided[w];
      if (count > 1) eligible[v] = false;
    }
  }

  std::set<VariableSet> result;
  std::vector<std::size_t> hits(nw, 0);
  std::vector<bool> chosen(nv, false);

  auto recurse = [&](auto&& self, std::size_t v) -> void {
    if (v == nv) {
      VariableSet z;
      for (std::size_t i = 0; i < nv; ++i)
        if (chosen[i]) z.insert(vars[i]);
      result.insert(std::move(z));
      return;
    }
    for (bool take : {false, true}) {
      if (take && !eligible[v]) continue;
      bool ok = true;
      for (auto w : summands_of[v]) {
        --undecided[w];
        if (take) ++hits[w];
        if (hits[w] > 1 || (undecided[w] == 0 && hits[w] == 0)) ok = false;
      }
      chosen[v] = take;
      if (ok) self(self, v + 1);
      for (auto w : summands_of[v]) {
        ++undecided[w];
        if (take) --hits[w];
      }
      chosen[v] = false;
    }
  };
  recurse(recurse, 0);
  return result;
}

bool is_linear(const Word& w) {
  auto sorted = w.letters();
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

void Substitution::set(const Variable& x, Term image) {
  images_.insert_or_assign(x, std::move(image));
}

Term Substitution::image(const Variable& x) const {
  if (auto it = images_.find(x); it != images_.end()) return it->second;
  return Term(Word{x});
}

Term Substitution::apply(const Word& w) const {
  Term out = image(w[0]);
  for (std::size_t i = 1; i < w.length(); ++i) out = mul(out, image(w[i]));
  return out;
}

Term Substitution::apply(const Term& t) const {
  WordSet out;
  for (const auto& w : t.summands()) {
    auto img = apply(w);
    out.insert(img.summands().begin(), img.summands().end());
  }
  return Term(std::move(out));
}

std::string to_string(const Substitution& s) {
  std::string out;
  for (const auto& [x, t] : s.images()) {
    if (!out.empty()) out += ", ";
    out += x + "->" + to_string(t);
  }
  return out;
}

Term compose(const Letters& left, const Term& t, const Letters& right,
             const WordSet& rest) {
  WordSet out = rest;
  for (const auto& w : t.summands()) out.insert(wrap(left, w, right));
  return Term(std::move(out));
}

std::vector<SubtermWitness> subterm_occurrences(const Term& u, const Term& v) {
  // Every word of u must embed into a word of v with the same contexts, so
  // the contexts are fixed by any single occurrence of u's first word.
  std::vector<SubtermWitness> out;
  const Word& first = *u.summands().begin();
  std::set<std::pair<Letters, Letters>> seen;
  for (const auto& host : v.summands()) {
    if (host.length() < first.length()) continue;
    for (std::size_t pos = 0; pos + first.length() <= host.length(); ++pos) {
      if (!std::equal(first.letters().begin(), first.letters().end(),
                      host.letters().begin() + static_cast<long>(pos))) {
        continue;
      }
      Letters left(host.letters().begin(),
                   host.letters().begin() + static_cast<long>(pos));
      Letters right(host.letters().begin() +
                        static_cast<long>(pos + first.length()),
                    host.letters().end());
      if (!seen.insert({left, right}).second) continue;
      WordSet rest = v.summands();
      bool fits = true;
      for (const auto& w : u.summands()) {
        auto placed = wrap(left, w, right);
        if (!v.contains(placed)) {
          fits = false;
          break;
        }
        rest.erase(placed);
      }
      if (fits) out.push_back({std::move(left), std::move(right), std::move(rest)});
    }
  }
  return out;
}

std::optional<SubtermWitness> is_subterm(const Term& u, const Term& v) {
  auto all = subterm_occurrences(u, v);
  if (all.empty()) return std::nullopt;
  return all.front();
}

Term commutative_normalize(const Term& t) {
  WordSet out;
  for (const auto& w : t.summands()) {
    auto letters = w.letters();
    std::sort(letters.begin(), letters.end());
    out.insert(Word(std::move(letters)));
  }
  return Term(std::move(out));
}

}  // namespace aisemi

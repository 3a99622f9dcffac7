#include "aisemi/algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace aisemi {

std::string_view axiom_name(Axiom a) {
  switch (a) {
    case Axiom::AddCommutative:
      return "additive commutativity";
    case Axiom::AddIdempotent:
      return "additive idempotency";
    case Axiom::AddAssociative:
      return "additive associativity";
    case Axiom::MulAssociative:
      return "multiplicative associativity";
    case Axiom::LeftDistributive:
      return "left distributivity";
    case Axiom::RightDistributive:
      return "right distributivity";
  }
  return "unknown axiom";
}

namespace {

std::optional<std::string> check_shape(const Table& t, std::size_t k,
                                       std::string_view which) {
  if (t.size() != k) {
    return std::string(which) + " table has " + std::to_string(t.size()) +
           " rows, expected " + std::to_string(k);
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (t[i].size() != k) {
      return std::string(which) + " table row " + std::to_string(i) +
             " has " + std::to_string(t[i].size()) + " entries, expected " +
             std::to_string(k);
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (t[i][j] < 0 || static_cast<std::size_t>(t[i][j]) >= k) {
        return std::string(which) + " entry (" + std::to_string(i) + "," +
               std::to_string(j) + ") out of range: " +
               std::to_string(t[i][j]);
      }
    }
  }
  return std::nullopt;
}

std::vector<Element> flatten(const Table& t) {
  std::vector<Element> out;
  for (const auto& row : t) out.insert(out.end(), row.begin(), row.end());
  return out;
}

}  // namespace

ValidationReport validate(const Table& add, const Table& mul) {
  ValidationReport report;
  const std::size_t k = add.size();
  if (k == 0) {
    report.malformed = "empty carrier";
    return report;
  }
  if (auto err = check_shape(add, k, "add")) {
    report.malformed = err;
    return report;
  }
  if (auto err = check_shape(mul, k, "mul")) {
    report.malformed = err;
    return report;
  }

  auto record = [&](Axiom ax, std::vector<Element> w) {
    if (report.violations.size() >= kMaxReportedViolations) {
      report.truncated = true;
      return;
    }
    report.violations.push_back({ax, std::move(w)});
  };
  const auto n = static_cast<Element>(k);
  for (Element a = 0; a < n; ++a) {
    if (add[a][a] != a) record(Axiom::AddIdempotent, {a});
    for (Element b = a + 1; b < n; ++b) {
      if (add[a][b] != add[b][a]) record(Axiom::AddCommutative, {a, b});
    }
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      for (Element c = 0; c < n; ++c) {
        if (add[add[a][b]][c] != add[a][add[b][c]]) {
          record(Axiom::AddAssociative, {a, b, c});
        }
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]]) {
          record(Axiom::MulAssociative, {a, b, c});
        }
        if (mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]) {
          record(Axiom::LeftDistributive, {a, b, c});
        }
        if (mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]]) {
          record(Axiom::RightDistributive, {a, b, c});
        }
      }
    }
  }
  return report;
}

bool is_ai_semiring(std::size_t k, const std::vector<Element>& add,
                    const std::vector<Element>& mul) {
  auto A = [&](Element a, Element b) { return add[a * k + b]; };
  auto M = [&](Element a, Element b) { return mul[a * k + b]; };
  const auto n = static_cast<Element>(k);
  for (Element a = 0; a < n; ++a) {
    if (A(a, a) != a) return false;
    for (Element b = 0; b < n; ++b) {
      if (A(a, b) != A(b, a)) return false;
      for (Element c = 0; c < n; ++c) {
        if (A(A(a, b), c) != A(a, A(b, c))) return false;
        if (M(M(a, b), c) != M(a, M(b, c))) return false;
        if (M(a, A(b, c)) != A(M(a, b), M(a, c))) return false;
        if (M(A(a, b), c) != A(M(a, c), M(b, c))) return false;
      }
    }
  }
  return true;
}

FiniteAiSemiring::FiniteAiSemiring(std::string name,
                                   std::vector<std::string> labels,
                                   const Table& add, const Table& mul)
    : name_(std::move(name)), labels_(std::move(labels)) {
  if (labels_.size() != add.size()) {
    throw AlgebraError("table/label arity mismatch: " +
                       std::to_string(labels_.size()) + " labels, " +
                       std::to_string(add.size()) + " rows");
  }
  {
    auto sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw AlgebraError("duplicate element label");
    }
  }
  auto report = validate(add, mul);
  if (report.malformed) throw AlgebraError(*report.malformed);
  if (!report.violations.empty()) {
    const auto& v = report.violations.front();
    std::string msg = name_ + ": " + std::string(axiom_name(v.axiom)) +
                      " fails at (";
    for (std::size_t i = 0; i < v.witness.size(); ++i) {
      if (i) msg += ",";
      msg += labels_[v.witness[i]];
    }
    throw AlgebraError(msg + ")");
  }
  add_ = flatten(add);
  mul_ = flatten(mul);
}

FiniteAiSemiring FiniteAiSemiring::from_flat_unchecked(
    std::string name, std::vector<std::string> labels, std::vector<Element> add,
    std::vector<Element> mul) {
  FiniteAiSemiring s;
  s.name_ = std::move(name);
  s.labels_ = std::move(labels);
  s.add_ = std::move(add);
  s.mul_ = std::move(mul);
  return s;
}

std::optional<Element> FiniteAiSemiring::find_label(
    std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<Element>(i);
  }
  return std::nullopt;
}

Element FiniteAiSemiring::index_of(std::string_view label) const {
  if (auto e = find_label(label)) return *e;
  throw AlgebraError("unknown element '" + std::string(label) + "' in " +
                     name_);
}

Table FiniteAiSemiring::add_table() const {
  Table t(size(), std::vector<Element>(size()));
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) t[i][j] = add_[i * size() + j];
  return t;
}

Table FiniteAiSemiring::mul_table() const {
  Table t(size(), std::vector<Element>(size()));
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) t[i][j] = mul_[i * size() + j];
  return t;
}

FiniteAiSemiring FiniteAiSemiring::renamed(std::string name) const {
  auto copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool AdditiveProfile::leq(Element a, Element b) const {
  return std::find(order_relation.begin(), order_relation.end(),
                   std::pair{a, b}) != order_relation.end();
}

AdditiveProfile natural_order(const FiniteAiSemiring& s) {
  AdditiveProfile p;
  const auto n = static_cast<Element>(s.size());
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (s.add(a, b) == b) p.order_relation.emplace_back(a, b);

  p.top = 0;
  for (Element a = 1; a < n; ++a) p.top = s.add(p.top, a);

  auto below = [&](Element a, Element b) {  // a < b
    return a != b && s.add(a, b) == b;
  };
  for (Element a = 0; a < n; ++a) {
    bool minimal = true;
    for (Element b = 0; b < n; ++b)
      if (below(b, a)) minimal = false;
    if (minimal) p.minimals.push_back(a);
  }
  if (n == 1) {
    p.coatoms = {0};
    return p;
  }
  // Coatoms are the maximal elements of the carrier minus top.
  for (Element a = 0; a < n; ++a) {
    if (a == p.top) continue;
    bool maximal = true;
    for (Element b = 0; b < n; ++b)
      if (b != p.top && below(a, b)) maximal = false;
    if (maximal) p.coatoms.push_back(a);
  }
  return p;
}

bool is_commutative_mult(const FiniteAiSemiring& s) {
  const auto n = static_cast<Element>(s.size());
  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b)
      if (s.mul(a, b) != s.mul(b, a)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// File format

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> significant_lines(std::string_view text,
                                    std::size_t first_line = 1) {
  std::vector<Line> out;
  std::size_t number = first_line;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    std::istringstream in(line);
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    if (!tokens.empty() && tokens.front()[0] != '#') {
      out.push_back({number, std::move(tokens)});
    }
    ++number;
    pos = end + 1;
  }
  return out;
}

RawAlgebra parse_lines(const std::vector<Line>& lines,
                       std::size_t end_line) {
  std::size_t i = 0;
  auto expect_keyword = [&](std::string_view kw) -> const Line& {
    if (i >= lines.size()) {
      throw ParseError(end_line, "expected '" + std::string(kw) +
                                     "', found end of input");
    }
    const auto& l = lines[i];
    if (l.tokens.front() != kw) {
      throw ParseError(l.number, "expected '" + std::string(kw) +
                                     "', found '" + l.tokens.front() + "'");
    }
    ++i;
    return l;
  };

  RawAlgebra raw;
  {
    const auto& l = expect_keyword("algebra");
    if (l.tokens.size() != 2) {
      throw ParseError(l.number, "expected 'algebra <name>'");
    }
    raw.name = l.tokens[1];
  }
  {
    const auto& l = expect_keyword("elements");
    if (l.tokens.size() < 2) throw ParseError(l.number, "no elements listed");
    raw.labels.assign(l.tokens.begin() + 1, l.tokens.end());
    auto sorted = raw.labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParseError(l.number, "duplicate element label");
    }
  }
  std::map<std::string, Element, std::less<>> index;
  for (std::size_t e = 0; e < raw.labels.size(); ++e) {
    index[raw.labels[e]] = static_cast<Element>(e);
  }
  const std::size_t k = raw.labels.size();

  auto read_table = [&](std::string_view kw) {
    const auto& header = expect_keyword(kw);
    if (header.tokens.size() != 1) {
      throw ParseError(header.number,
                       "unexpected tokens after '" + std::string(kw) + "'");
    }
    Table t;
    while (i < lines.size() && lines[i].tokens.front() != "mul" &&
           lines[i].tokens.front() != "add") {
      const auto& row = lines[i++];
      if (row.tokens.size() != k || t.size() == k) {
        throw ParseError(row.number, "table/label arity mismatch");
      }
      std::vector<Element> values;
      for (const auto& tok : row.tokens) {
        auto it = index.find(tok);
        if (it == index.end()) {
          throw ParseError(row.number, "unknown element '" + tok + "'");
        }
        values.push_back(it->second);
      }
      t.push_back(std::move(values));
    }
    if (t.size() != k) {
      throw ParseError(i < lines.size() ? lines[i].number : end_line,
                       "table/label arity mismatch");
    }
    return t;
  };
  raw.add = read_table("add");
  raw.mul = read_table("mul");
  if (i != lines.size()) {
    throw ParseError(lines[i].number,
                     "unexpected content '" + lines[i].tokens.front() + "'");
  }
  return raw;
}

std::size_t count_lines(std::string_view text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) +
         1;
}

}  // namespace

RawAlgebra parse_raw_algebra(std::string_view text) {
  auto lines = significant_lines(text);
  if (lines.empty()) throw ParseError(1, "empty input");
  return parse_lines(lines, count_lines(text));
}

FiniteAiSemiring parse_algebra(std::string_view text) {
  auto raw = parse_raw_algebra(text);
  return FiniteAiSemiring(std::move(raw.name), std::move(raw.labels), raw.add,
                          raw.mul);
}

std::vector<RawAlgebra> parse_raw_algebras(std::string_view text) {
  std::vector<RawAlgebra> out;
  std::size_t line = 1;
  std::size_t pos = 0;
  std::size_t chunk_start_line = 1;
  std::size_t chunk_start = 0;
  auto flush = [&](std::size_t end) {
    auto chunk = text.substr(chunk_start, end - chunk_start);
    auto lines = significant_lines(chunk, chunk_start_line);
    if (lines.empty()) return;
    out.push_back(parse_lines(lines, line));
  };
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto content = text.substr(pos, end - pos);
    while (!content.empty() && (content.back() == '\r' || content.back() == ' '))
      content.remove_suffix(1);
    if (content == "---") {
      flush(pos);
      chunk_start = end + 1;
      chunk_start_line = line + 1;
    }
    ++line;
    pos = end + 1;
  }
  flush(text.size());
  if (out.empty()) throw ParseError(1, "empty input");
  return out;
}

std::vector<FiniteAiSemiring> parse_algebras(std::string_view text) {
  std::vector<FiniteAiSemiring> out;
  for (auto& raw : parse_raw_algebras(text)) {
    out.emplace_back(std::move(raw.name), std::move(raw.labels), raw.add,
                     raw.mul);
  }
  return out;
}

std::string serialize_algebra(const FiniteAiSemiring& s) {
  std::ostringstream out;
  out << "algebra " << s.name() << "\n";
  out << "elements";
  for (const auto& l : s.labels()) out << ' ' << l;
  out << "\n";
  auto dump = [&](std::string_view kw, auto op) {
    out << kw << "\n";
    const auto n = static_cast<Element>(s.size());
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        out << (b ? " " : "") << s.label(op(a, b));
      }
      out << "\n";
    }
  };
  dump("add", [&](Element a, Element b) { return s.add(a, b); });
  dump("mul", [&](Element a, Element b) { return s.mul(a, b); });
  return out.str();
}

// ---------------------------------------------------------------------------
// Registry

namespace {

struct RegistryEntry {
  std::string_view name;
  std::string_view text;
};

// Tables transcribed from the source publication.
constexpr RegistryEntry kRegistry[] = {
    {"S2", R"(algebra S2
elements 1 2 3
add
1 1 1
1 2 1
1 1 3
mul
1 1 1
1 1 1
1 1 2
)"},
    {"S7", R"(algebra S7
elements 0 a 1
add
0 0 0
0 a 0
0 0 1
mul
0 0 0
0 0 a
0 a 1
)"},
    {"S53", R"(algebra S53
elements 1 2 3
add
1 1 3
1 2 3
3 3 3
mul
3 1 3
1 2 3
3 3 3
)"},
    {"S4_124", R"(algebra S4_124
elements 1 2 3 4
add
1 1 1 1
1 2 2 1
1 2 3 1
1 1 1 4
mul
1 1 1 1
1 1 2 1
1 2 3 4
1 1 4 2
)"},
    {"S4_359", R"(algebra S4_359
elements 1 2 3 4
add
1 2 1 1
2 2 2 2
1 2 3 1
1 2 1 4
mul
2 2 1 2
2 2 2 2
1 2 3 4
2 2 4 2
)"},
    {"R6", R"(algebra R6
elements 1 2 3 4 5 6
add
1 2 1 1 2 1
2 2 2 2 2 2
1 2 3 1 2 1
1 2 1 4 2 1
2 2 2 2 5 2
1 2 1 1 2 6
mul
2 2 1 2 2 2
2 2 2 2 2 2
1 2 3 4 2 1
2 2 4 2 2 2
2 2 2 2 2 2
2 2 1 2 2 5
)"},
};

}  // namespace

FiniteAiSemiring registry(std::string_view name) {
  for (const auto& entry : kRegistry) {
    if (entry.name == name) return parse_algebra(entry.text);
  }
  throw AlgebraError("unknown registry algebra '" + std::string(name) + "'");
}

const std::vector<std::string>& registry_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& entry : kRegistry) v.emplace_back(entry.name);
    return v;
  }();
  return names;
}

}  // namespace aisemi

// Command-line front end. Exit codes: 0 success, 1 semantic failure,
// 2 usage or parse error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "aisemi/algebra.hpp"
#include "aisemi/derivation.hpp"
#include "aisemi/enumeration.hpp"
#include "aisemi/family.hpp"
#include "aisemi/satisfaction.hpp"
#include "aisemi/structure.hpp"
#include "aisemi/terms.hpp"
#include "aisemi/verify.hpp"

using namespace aisemi;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse/usage faults propagate as UsageError or ParseError (exit 2);
// algebra faults on user input as AlgebraError (exit 1).
struct Context {
  bool json_out = false;
  unsigned threads = 0;

  void emit(const json& j, const std::string& text) const {
    if (json_out) std::cout << j.dump(2) << "\n";
    else std::cout << text;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_registry_name(const std::string& name) {
  const auto& names = registry_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

// A registry name, else a path to an algebra file.
FiniteAiSemiring load_algebra(const std::string& arg) {
  if (is_registry_name(arg)) return registry(arg);
  if (!std::filesystem::exists(arg)) {
    throw UsageError("'" + arg + "' is neither a registry name nor a file");
  }
  return parse_algebra(read_file(arg));
}

std::pair<Term, Term> split(const std::string& text, const std::string& sep) {
  auto pos = text.find(sep);
  if (pos == std::string::npos || text.find(sep, pos + sep.size()) != std::string::npos) {
    throw UsageError("expected exactly one '" + sep + "' in \"" + text + "\"");
  }
  try {
    return {parse_term(text.substr(0, pos)), parse_term(text.substr(pos + sep.size()))};
  } catch (const TermError& e) {
    throw UsageError(e.what());
  }
}

Word single_word(const Term& t) {
  if (t.size() != 1) throw UsageError("left side must be a single word");
  return *t.summands().begin();
}

json algebra_json(const FiniteAiSemiring& s) {
  return {{"name", s.name()}, {"labels", s.labels()}, {"add", s.add_table()},
          {"mul", s.mul_table()}};
}

json assignment_json(const FiniteAiSemiring& s, const Assignment& a) {
  json j = json::object();
  for (const auto& [x, e] : a) j[x] = s.label(e);
  return j;
}

std::string assignment_text(const FiniteAiSemiring& s, const Assignment& a) {
  std::string out;
  for (const auto& [x, e] : a) out += (out.empty() ? "" : ", ") + x + "=" + s.label(e);
  return out;
}

json verdict_json(const FiniteAiSemiring& s, const SatisfactionVerdict& v) {
  json j{{"holds", v.holds}};
  if (v.counterexample) {
    j["counterexample"] = {{"assignment", assignment_json(s, v.counterexample->assignment)},
                           {"lhs", s.label(v.counterexample->lhs)},
                           {"rhs", s.label(v.counterexample->rhs)}};
  }
  return j;
}

std::string verdict_text(const FiniteAiSemiring& s, const SatisfactionVerdict& v) {
  if (v.holds) return "holds\n";
  const auto& c = *v.counterexample;
  return "fails at " + assignment_text(s, c.assignment) + " (lhs " + s.label(c.lhs) +
         ", rhs " + s.label(c.rhs) + ")\n";
}

std::vector<Element> parse_subset(const FiniteAiSemiring& s, const std::string& text) {
  std::vector<Element> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(s.index_of(item));
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_validate(const Context& ctx, const std::string& path) {
  const auto text = read_file(path);
  const auto raws = parse_raw_algebras(text);

  json out = json::array();
  std::string text_out;
  bool ok = true;
  for (const auto& raw : raws) {
    auto rep = validate(raw.add, raw.mul);
    json j{{"name", raw.name}, {"ok", rep.ok()}};
    text_out += raw.name + ": ";
    if (rep.malformed) {
      j["malformed"] = *rep.malformed;
      text_out += "malformed: " + *rep.malformed + "\n";
    } else if (rep.ok()) {
      text_out += "ok\n";
    } else {
      json vs = json::array();
      text_out += "violations\n";
      for (const auto& v : rep.violations) {
        std::vector<std::string> w;
        for (auto e : v.witness) {
          w.push_back(e >= 0 && static_cast<std::size_t>(e) < raw.labels.size()
                          ? raw.labels[e] : std::to_string(e));
        }
        vs.push_back({{"axiom", std::string(axiom_name(v.axiom))}, {"witness", w}});
        std::string ws;
        for (const auto& x : w) ws += (ws.empty() ? "" : ",") + x;
        text_out += "  " + std::string(axiom_name(v.axiom)) + " at (" + ws + ")\n";
      }
      if (rep.truncated) text_out += "  ...\n";
      j["violations"] = vs;
      j["truncated"] = rep.truncated;
    }
    ok = ok && rep.ok();
    out.push_back(j);
  }
  ctx.emit(out, text_out);
  return ok ? 0 : 1;
}

int cmd_registry(const Context& ctx, const std::string& name) {
  std::vector<std::string> names = name.empty() ? registry_names() : std::vector{name};
  json out = json::array();
  std::string text;
  for (const auto& n : names) {
    if (!is_registry_name(n)) throw UsageError("unknown registry algebra " + n);
    auto s = registry(n);
    out.push_back(algebra_json(s));
    if (!text.empty()) text += "---\n";
    text += serialize_algebra(s);
  }
  ctx.emit(out, text);
  return 0;
}

int cmd_holds(const Context& ctx, const std::string& alg, const std::string& ineq,
              const std::string& id, bool allow_large) {
  if (ineq.empty() == id.empty()) throw UsageError("give exactly one of --ineq and --id");
  const auto s = load_algebra(alg);
  const SearchOptions opts{ctx.threads, allow_large};
  SatisfactionVerdict v;
  json j{{"algebra", s.name()}};
  if (!ineq.empty()) {
    auto [q, u] = split(ineq, "<=");
    v = q.size() == 1 ? holds_inequality(s, *q.summands().begin(), u, opts)
                      : holds_identity(s, add(u, q), u, opts);
    j["inequality"] = to_string(q) + " <= " + to_string(u);
  } else {
    auto [u, w] = split(id, "=");
    v = holds_identity(s, u, w, opts);
    j["identity"] = to_string(u) + " = " + to_string(w);
  }
  j.update(verdict_json(s, v));
  ctx.emit(j, verdict_text(s, v));
  return v.holds ? 0 : 1;
}

int cmd_decide(const Context& ctx, const std::string& which, const std::string& ineq,
               bool oracle) {
  auto [qt, u] = split(ineq, "<=");
  const Word q = single_word(qt);
  bool verdict;
  std::string name;
  if (which == "s2") verdict = decide_s2(q, u), name = "S2";
  else if (which == "s7") verdict = decide_s7(q, u), name = "S7";
  else if (which == "s53") verdict = decide_s53(q, u), name = "S53";
  else throw UsageError("decider must be s2, s7 or s53");
  json j{{"algebra", name}, {"inequality", to_string(q) + " <= " + to_string(u)},
         {"holds", verdict}};
  std::string text = verdict ? "holds\n" : "fails\n";
  bool agree = true;
  if (oracle) {
    const auto s = registry(name);
    auto v = holds_inequality(s, q, u, {ctx.threads, false});
    agree = v.holds == verdict;
    j["oracle"] = verdict_json(s, v);
    j["agree"] = agree;
    text += "oracle: " + verdict_text(s, v);
    if (!agree) text += "DISAGREE\n";
  }
  ctx.emit(j, text);
  return verdict && agree ? 0 : 1;
}

int cmd_family(const Context& ctx, const std::string& alg, int nmax, bool allow_large) {
  const auto s = load_algebra(alg);
  auto report = in_W(s, nmax, {ctx.threads, allow_large});
  json rows = json::array();
  std::string text;
  bool all = true;
  for (const auto& r : report) {
    json row = verdict_json(s, r.verdict);
    row["n"] = r.n;
    rows.push_back(row);
    text += "n=" + std::to_string(r.n) + ": " + verdict_text(s, r.verdict);
    all = all && r.verdict.holds;
  }
  ctx.emit({{"algebra", s.name()}, {"results", rows}, {"holds", all}}, text);
  return all ? 0 : 1;
}

int cmd_quotient(const Context& ctx, const std::string& alg, const std::string& blocks) {
  const auto s = load_algebra(alg);
  const auto p = Partition::parse(s, blocks);
  if (auto f = congruence_failure(s, p)) {
    const std::string op = f->op == Op::Add ? "+" : "*";
    const auto a = s.label(f->a), b = s.label(f->b), c = s.label(f->c);
    const std::string where = f->left ? c + op + a + " vs " + c + op + b
                                      : a + op + c + " vs " + b + op + c;
    ctx.emit({{"congruence", false}, {"witness", where}},
             "not a congruence: " + a + " ~ " + b + " but " + where + " are split\n");
    return 1;
  }
  auto q = quotient(s, p);
  ctx.emit({{"congruence", true}, {"quotient", algebra_json(q)}}, serialize_algebra(q));
  return 0;
}

int cmd_subalgebra(const Context& ctx, const std::string& alg, const std::string& subset) {
  const auto s = load_algebra(alg);
  try {
    auto sub = subalgebra(s, parse_subset(s, subset));
    ctx.emit({{"closed", true}, {"subalgebra", algebra_json(sub)}}, serialize_algebra(sub));
    return 0;
  } catch (const AlgebraError& e) {
    ctx.emit({{"closed", false}, {"error", e.what()}}, std::string(e.what()) + "\n");
    return 1;
  }
}

int cmd_iso(const Context& ctx, const std::string& a_name, const std::string& b_name) {
  const auto a = load_algebra(a_name), b = load_algebra(b_name);
  auto m = find_isomorphism(a, b);
  if (!m) {
    ctx.emit({{"isomorphic", false}}, "not isomorphic\n");
    return 1;
  }
  json map = json::object();
  std::string text = "isomorphic:";
  for (std::size_t i = 0; i < m->size(); ++i) {
    map[a.label(static_cast<Element>(i))] = b.label((*m)[i]);
    text += " " + a.label(static_cast<Element>(i)) + "->" + b.label((*m)[i]);
  }
  ctx.emit({{"isomorphic", true}, {"map", map}}, text + "\n");
  return 0;
}

int cmd_subdirect(const Context& ctx, const std::string& alg, const std::string& t1,
                  const std::string& t2) {
  const auto s = load_algebra(alg);
  auto r = check_subdirect(s, Partition::parse(s, t1), Partition::parse(s, t2));
  std::string text = std::string("injective: ") + (r.injective ? "yes" : "no") +
                     "\nsurjective projections: " + (r.surjective ? "yes" : "no") + "\n";
  json names = json::array();
  for (const auto* f : {&r.factor1, &r.factor2}) {
    std::string match;
    for (const auto& n : registry_names()) {
      if (find_isomorphism(*f, registry(n))) match = n;
    }
    names.push_back(match.empty() ? json(nullptr) : json(match));
    text += "factor " + f->name() + (match.empty() ? "" : " ~ " + match) + "\n";
  }
  ctx.emit({{"injective", r.injective},
            {"surjective", r.surjective},
            {"factors", {algebra_json(r.factor1), algebra_json(r.factor2)}},
            {"registry_matches", names}},
           text);
  return r.injective && r.surjective ? 0 : 1;
}

int cmd_enumerate(const Context& ctx, std::size_t order, bool classify, int screen,
                  const std::string& output) {
  EnumerationOptions opts{ctx.threads, 0};
  if (const char* cap = std::getenv("AISEMI_CENSUS_MAX_CLASSES")) {
    try {
      opts.max_classes = std::stoul(cap);
    } catch (const std::exception&) {
      throw UsageError("AISEMI_CENSUS_MAX_CLASSES must be a number");
    }
  }
  if (order < 1 || order > kMaxEnumerationOrder) throw UsageError("--order must be 1..4");
  auto all = enumerate_ai_semirings(order, opts);

  std::string records;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i) records += "---\n";
    records += serialize_algebra(all[i]);
  }
  json j{{"order", order}, {"classes", all.size()}};
  std::string summary = "# order " + std::to_string(order) + ": " +
                        std::to_string(all.size()) + " classes\n";
  if (classify) {
    json types = json::array();
    for (const auto& t : classify_additive_type(all)) {
      types.push_back({{"minimals", t.minimals}, {"coatoms", t.coatoms}, {"count", t.count},
                       {"additive", t.additive}});
      summary += "# type minimals=" + std::to_string(t.minimals) +
                 " coatoms=" + std::to_string(t.coatoms) + ": " + std::to_string(t.count) + "\n";
    }
    j["types"] = types;
  }
  if (screen > 0) {
    auto pass = screen_family(all, screen, ctx.threads);
    json names = json::array();
    for (const auto& s : pass) names.push_back(s.name());
    j["family_screen"] = {{"n_max", screen}, {"passing", names}};
    summary += "# family n<=" + std::to_string(screen) + ": " + std::to_string(pass.size()) +
               " pass\n";
  }
  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) throw UsageError("cannot write " + output);
    out << records << summary;
    j["output"] = output;
    ctx.emit(j, summary);
  } else {
    j["algebras"] = json::array();
    for (const auto& s : all) j["algebras"].push_back(algebra_json(s));
    ctx.emit(j, records + summary);
  }
  return 0;
}

int cmd_derive_check(const Context& ctx, const std::string& path) {
  auto f = parse_derivation(read_file(path));
  const auto& d = f.derivation;
  const Identity claim = f.claim ? *f.claim : Identity{d.chain.front(), d.chain.back()};
  auto r = check_derivation(d, claim);
  json j{{"claim", to_string(claim)}, {"ok", r.ok}, {"steps", d.steps.size()}};
  std::string text;
  if (r.ok) {
    text = "valid derivation of " + to_string(claim) + " in " + std::to_string(d.steps.size()) +
           " steps\n";
  } else {
    j["diagnosis"] = r.diagnosis;
    if (r.failed_step) j["failed_step"] = *r.failed_step + 1;
    text = "invalid" + (r.failed_step ? " at step " + std::to_string(*r.failed_step + 1) : "") +
           ": " + r.diagnosis + "\n";
  }
  ctx.emit(j, text);
  return r.ok ? 0 : 1;
}

int cmd_derive_search(const Context& ctx, const std::vector<std::string>& sigma_text,
                      const std::string& claim_text, const SearchBounds& bounds) {
  std::vector<Identity> sigma;
  Identity claim{Term(Word{"x"}), Term(Word{"x"})};
  try {
    for (const auto& s : sigma_text) sigma.push_back(parse_identity(s));
    claim = parse_identity(claim_text);
  } catch (const TermError& e) {
    throw UsageError(e.what());
  }
  auto r = search_derivation(sigma, claim, bounds);
  json j{{"claim", to_string(claim)}, {"found", r.derivation.has_value()},
         {"explored", r.explored}};
  if (!r.derivation) {
    j["reason"] = r.reason;
    ctx.emit(j, "exhausted: " + r.reason + "\n");
    return 1;
  }
  auto text = serialize_derivation(*r.derivation, claim);
  j["derivation"] = text;
  ctx.emit(j, text);
  return 0;
}

// Overrides named algebras with raw tables; invalid tables are kept so the
// claim suite can reject them.
std::function<FiniteAiSemiring(std::string_view)> override_lookup(const std::string& path) {
  std::map<std::string, FiniteAiSemiring, std::less<>> table;
  for (const auto& raw : parse_raw_algebras(read_file(path))) {
    std::vector<Element> add, mul;
    for (const auto& row : raw.add) add.insert(add.end(), row.begin(), row.end());
    for (const auto& row : raw.mul) mul.insert(mul.end(), row.begin(), row.end());
    table.insert_or_assign(raw.name, FiniteAiSemiring::from_flat_unchecked(
                                         raw.name, raw.labels, add, mul));
  }
  return [table](std::string_view name) {
    if (auto it = table.find(name); it != table.end()) return it->second;
    return registry(name);
  };
}

int cmd_paper_verify(const Context& ctx, bool full, const std::string& registry_file) {
  VerifyOptions opts;
  opts.full = full;
  opts.threads = ctx.threads;
  if (!registry_file.empty()) opts.lookup = override_lookup(registry_file);
  auto r = paper_verify(opts);
  json claims = json::array();
  for (const auto& c : r.claims) {
    claims.push_back({{"id", c.id}, {"name", c.name}, {"description", c.description},
                      {"status", std::string(status_name(c.status))},
                      {"expected", c.expected}, {"observed", c.observed},
                      {"seconds", c.seconds}});
  }
  ctx.emit({{"command", r.command}, {"claims", claims}, {"ok", r.ok()}}, render_text(r));
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite additively idempotent semirings: tables, terms, satisfaction"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  app.add_flag("--json", ctx.json_out, "machine-readable output");
  app.add_option("--threads", ctx.threads, "worker threads (0 = all cores)");

  std::string path, alg, alg2, ineq, id, blocks, subset, theta1, theta2, which, output,
      registry_file, claim;
  std::vector<std::string> sigma;
  int nmax = kDefaultFamilyMax, screen = 0;
  std::size_t order = 3;
  bool allow_large = false, oracle = false, classify = false, full = false;
  SearchBounds bounds;
  std::function<int()> action;

  auto* validate_cmd = app.add_subcommand("validate", "parse and axiom-check an algebra file");
  validate_cmd->add_option("file", path)->required();
  validate_cmd->callback([&] { action = [&] { return cmd_validate(ctx, path); }; });

  auto* registry_cmd = app.add_subcommand("registry", "print the named algebras");
  registry_cmd->add_option("name", alg);
  registry_cmd->callback([&] { action = [&] { return cmd_registry(ctx, alg); }; });

  auto* holds_cmd = app.add_subcommand("holds", "brute-force satisfaction");
  holds_cmd->add_option("algebra", alg, "registry name or algebra file")->required();
  holds_cmd->add_option("--ineq", ineq, "\"q <= u\"");
  holds_cmd->add_option("--id", id, "\"u = v\"");
  holds_cmd->add_flag("--allow-large", allow_large, "lift the assignment guard");
  holds_cmd->callback([&] { action = [&] { return cmd_holds(ctx, alg, ineq, id, allow_large); }; });

  auto* decide_cmd = app.add_subcommand("decide", "syntactic decider for S2, S7 or S53");
  decide_cmd->add_option("which", which)->required()->check(CLI::IsMember({"s2", "s7", "s53"}));
  decide_cmd->add_option("--ineq", ineq, "\"q <= u\"")->required();
  decide_cmd->add_flag("--oracle", oracle, "cross-check by brute force");
  decide_cmd->callback([&] { action = [&] { return cmd_decide(ctx, which, ineq, oracle); }; });

  auto* family_cmd = app.add_subcommand("family", "check q(n) <= u(n) for n = 1..nmax");
  family_cmd->add_option("--algebra", alg, "registry name or algebra file")->required();
  family_cmd->add_option("--nmax", nmax)->check(CLI::PositiveNumber);
  family_cmd->add_flag("--allow-large", allow_large, "lift the assignment guard");
  family_cmd->callback([&] { action = [&] { return cmd_family(ctx, alg, nmax, allow_large); }; });

  auto* quotient_cmd = app.add_subcommand("quotient", "quotient by a partition");
  quotient_cmd->add_option("algebra", alg)->required();
  quotient_cmd->add_option("--blocks", blocks, "\"1,2|3|4\"")->required();
  quotient_cmd->callback([&] { action = [&] { return cmd_quotient(ctx, alg, blocks); }; });

  auto* sub_cmd = app.add_subcommand("subalgebra", "subalgebra on a subset");
  sub_cmd->add_option("algebra", alg)->required();
  sub_cmd->add_option("--subset", subset, "\"1,2,4\"")->required();
  sub_cmd->callback([&] { action = [&] { return cmd_subalgebra(ctx, alg, subset); }; });

  auto* iso_cmd = app.add_subcommand("iso", "find an isomorphism");
  iso_cmd->add_option("a", alg)->required();
  iso_cmd->add_option("b", alg2)->required();
  iso_cmd->callback([&] { action = [&] { return cmd_iso(ctx, alg, alg2); }; });

  auto* subdirect_cmd = app.add_subcommand("subdirect", "subdirect decomposition by two congruences");
  subdirect_cmd->add_option("algebra", alg)->required();
  subdirect_cmd->add_option("--theta1", theta1)->required();
  subdirect_cmd->add_option("--theta2", theta2)->required();
  subdirect_cmd->callback([&] { action = [&] { return cmd_subdirect(ctx, alg, theta1, theta2); }; });

  auto* enum_cmd = app.add_subcommand("enumerate", "ai-semirings of a given order up to isomorphism");
  enum_cmd->add_option("--order", order)->required();
  enum_cmd->add_flag("--classify", classify, "group by additive reduct");
  enum_cmd->add_option("--screen-family", screen, "keep classes satisfying q(n) <= u(n), n <= N");
  enum_cmd->add_option("--output", output, "write the census to a file");
  enum_cmd->callback([&] { action = [&] { return cmd_enumerate(ctx, order, classify, screen, output); }; });

  auto* derive_cmd = app.add_subcommand("derive", "equational derivations");
  derive_cmd->require_subcommand(1);
  auto* check_cmd = derive_cmd->add_subcommand("check", "check a derivation file");
  check_cmd->add_option("file", path)->required();
  check_cmd->callback([&] { action = [&] { return cmd_derive_check(ctx, path); }; });
  auto* search_cmd = derive_cmd->add_subcommand("search", "bounded breadth-first search");
  search_cmd->add_option("--sigma", sigma, "identity \"u = v\" (repeatable)");
  search_cmd->add_option("--claim", claim, "\"u = v\"")->required();
  search_cmd->add_option("--max-chain", bounds.max_chain)->check(CLI::PositiveNumber);
  search_cmd->add_option("--max-word-len", bounds.max_word_len)->check(CLI::PositiveNumber);
  search_cmd->add_option("--max-summands", bounds.max_summands)->check(CLI::PositiveNumber);
  search_cmd->add_option("--max-subst-image", bounds.max_subst_image)->check(CLI::PositiveNumber);
  search_cmd->add_option("--max-nodes", bounds.max_nodes)->check(CLI::PositiveNumber);
  search_cmd->callback([&] { action = [&] { return cmd_derive_search(ctx, sigma, claim, bounds); }; });

  auto* verify_cmd = app.add_subcommand("paper-verify", "run the full claim suite");
  verify_cmd->add_flag("--full", full, "include the order-4 census");
  verify_cmd->add_option("--registry-file", registry_file, "override named algebras");
  verify_cmd->callback([&] { action = [&] { return cmd_paper_verify(ctx, full, registry_file); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const TermError& e) {
    std::cerr << "term error: " << e.what() << "\n";
    return 2;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

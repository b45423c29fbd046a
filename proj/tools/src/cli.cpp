#include "rsol_cli/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

#include "rsol/boolean.hpp"
#include "rsol/calculus.hpp"
#include "rsol/definability.hpp"
#include "rsol/error.hpp"
#include "rsol/evaluation.hpp"
#include "rsol/leibniz.hpp"
#include "rsol/parser.hpp"
#include "rsol/proof_io.hpp"
#include "rsol/theta.hpp"
#include "rsol/truth_algebra.hpp"
#include "rsol_cli/suites.hpp"

namespace rsol::cli {

namespace {

using json = nlohmann::json;

struct RunConfig {
  std::string format = "human";
  bool ascii = false;
  std::string signature;
  std::string formula;
  bool normalized = false;
  std::string structure;
  std::string theta = "dsl";
  std::uint64_t bound = 8;
  std::string oracle = "exact";
  std::uint32_t rank = 0;
  std::uint32_t arity = 1;
  bool with_parameters = false;
  std::vector<std::string> sentences;
  std::string sentence_file;
  std::string expect;
  std::string var;
  std::string item = "all";
  std::uint32_t vars = 2;
  std::uint32_t depth = 16;
  std::string proof;
  std::string sigma;
  std::uint64_t spot = 0;
  std::size_t deduce = 0;
  bool print = false;
  std::string algebra = "powerset:3";
  std::string family = "complete";
  std::string avoid = "0";
  std::uint64_t steps = 1000;
  std::uint64_t budget = 0;
  std::string suite;
  std::uint64_t seed = 1;
};

// One record per check: a line of text, or a JSON object per line.
class Emitter {
 public:
  Emitter(std::ostream& out, const RunConfig& cfg, std::string command)
      : out_(out), jsonl_(cfg.format == "jsonl"), ascii_(cfg.ascii), command_(std::move(command)) {}

  void record(json j, const std::string& human) {
    if (jsonl_) {
      json full = {{"command", command_}};
      full.update(j);
      out_ << full.dump() << '\n';
    } else {
      out_ << human << '\n';
    }
  }
  // Human-only lines.
  void note(const std::string& text) {
    if (!jsonl_) out_ << text << '\n';
  }
  std::string show(const Formula& f) const {
    PrintOptions po;
    po.ascii = ascii_;
    po.resugar = true;
    return print(f, po);
  }
  bool jsonl() const { return jsonl_; }

 private:
  std::ostream& out_;
  bool jsonl_;
  bool ascii_;
  std::string command_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

FiniteStructure structure_of(const RunConfig& cfg) {
  if (cfg.structure.empty()) throw PreconditionError("--structure is required");
  return load_structure(cfg.structure);
}

Formula sentence_of(const std::string& text, const Signature& sig) {
  Formula f = parse_formula(text, sig);
  if (!is_sentence(f)) throw PreconditionError("'" + text + "' has free variables");
  return f;
}

KProviderPtr oracle_of(const RunConfig& cfg, const FiniteStructure& s, const ThetaFamilyPtr& fam) {
  if (cfg.oracle == "exact") return exact_provider(s, *fam);
  if (cfg.oracle == "orbits") return orbit_provider(s, cfg.with_parameters);
  if (cfg.oracle == "bounded") return bounded_provider(s, fam, cfg.bound);
  if (cfg.oracle == "rank") return rank_provider(s, cfg.rank ? cfg.rank : s.domain_size + 1);
  throw PreconditionError("unknown oracle '" + cfg.oracle + "'");
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

// --- subcommands -----------------------------------------------------------

int cmd_parse(const RunConfig& cfg, std::ostream& out) {
  Emitter em(out, cfg, "parse");
  Signature sig = parse_signature(cfg.signature);
  Formula f = parse_formula(cfg.formula, sig);
  if (cfg.normalized) f = normalize(f);
  PrintOptions po;
  po.ascii = cfg.ascii;
  po.resugar = !cfg.normalized;
  std::string text = print(f, po);
  FreeVariables fv = free_variables(f);
  json free = json::array();
  for (const auto* set : {&fv.individuals, &fv.relations, &fv.blocks}) {
    for (const auto& v : *set) free.push_back(to_string(v));
  }
  em.record({{"formula", text}, {"sentence", is_sentence(f)}, {"first_order", is_first_order(f)}, {"free", free}},
            text);
  return status_ok;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  Emitter em(out, cfg, "eval");
  FiniteStructure s = structure_of(cfg);
  if (cfg.sentences.empty()) throw PreconditionError("--sentence is required");
  if (!cfg.expect.empty() && cfg.expect != "true" && cfg.expect != "false") {
    throw PreconditionError("--expect takes true or false");
  }
  int status = status_ok;
  std::optional<StandardModel> model;
  std::string oracle = cfg.oracle;
  if (cfg.oracle != "full") {
    auto fam = parse_theta_spec(cfg.theta, s.sig);
    model = make_model(s, oracle_of(cfg, s, fam));
    oracle = model->k->describe();
  }
  for (const auto& text : cfg.sentences) {
    Formula f = sentence_of(text, s.sig);
    bool value = model ? eval_so(*model, f) : eval_full_so(s, f);
    bool pass = cfg.expect.empty() || yes_no(value) == cfg.expect;
    if (!pass) status = status_check_failed;
    json j = {{"sentence", em.show(f)}, {"oracle", oracle}, {"value", value}};
    if (!cfg.expect.empty()) j["pass"] = pass;
    em.record(j, yes_no(value) + (pass ? "" : " (expected " + cfg.expect + ")"));
  }
  return status;
}

int cmd_ktheta(const RunConfig& cfg, std::ostream& out) {
  Emitter em(out, cfg, "ktheta");
  FiniteStructure s = structure_of(cfg);
  auto fam = parse_theta_spec(cfg.theta, s.sig);
  DefinableFamily k = materialize_k(s, *fam, cfg.bound, cfg.arity);
  em.note(fam->name() + ", members 0.." + std::to_string(cfg.bound) + ", arity " + std::to_string(cfg.arity) + ": " +
          std::to_string(k.size(cfg.arity)) + " relations");
  auto it = k.by_arity.find(cfg.arity);
  if (it != k.by_arity.end()) {
    for (const auto& d : it->second) {
      em.record({{"relation", to_string(d.relation)}, {"provenance", to_string(d.provenance)}},
                "  " + to_string(d.relation) + "  " + to_string(d.provenance));
    }
  }
  em.record({{"theta", fam->name()}, {"bound", cfg.bound}, {"arity", cfg.arity}, {"count", k.size(cfg.arity)}},
            "count " + std::to_string(k.size(cfg.arity)));
  return status_ok;
}

int cmd_orbits(const RunConfig& cfg, std::ostream& out) {
  Emitter em(out, cfg, "orbits");
  FiniteStructure s = structure_of(cfg);
  auto autos = automorphisms(s);
  auto blocks = orbits(s, cfg.arity);
  em.note(std::to_string(autos.size()) + " automorphisms, " + std::to_string(blocks.size()) + " orbits on A^" +
          std::to_string(cfg.arity));
  for (const auto& b : blocks) em.record({{"orbit", to_string(b)}}, "  " + to_string(b));
  DefinableFamily k = k_exact_orbits(s, cfg.with_parameters, cfg.arity);
  em.record({{"automorphisms", autos.size()},
             {"orbits", blocks.size()},
             {"with_parameters", cfg.with_parameters},
             {"definable", k.size(cfg.arity)}},
            std::to_string(k.size(cfg.arity)) + " definable relations" +
                (cfg.with_parameters ? " with parameters" : " without parameters"));
  return status_ok;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  Emitter em(out, cfg, "compare-so");
  FiniteStructure s = structure_of(cfg);
  auto fam = parse_theta_spec(cfg.theta, s.sig);
  StandardModel m = make_model(s, oracle_of(cfg, s, fam));
  std::vector<Formula> fs;
  for (const auto& t : cfg.sentences) fs.push_back(sentence_of(t, s.sig));
  if (!cfg.sentence_file.empty()) {
    for (auto& f : parse_sentences(read_file(cfg.sentence_file), s.sig)) fs.push_back(std::move(f));
  }
  if (fs.empty()) throw PreconditionError("give --sentence or --sentences");
  std::size_t mismatches = 0;
  for (const auto& f : fs) {
    bool restricted = eval_so(m, f);
    bool full = eval_full_so(s, f);
    if (restricted != full) ++mismatches;
    em.record({{"sentence", em.show(f)}, {"restricted", restricted}, {"full", full}, {"pass", restricted == full}},
              (restricted == full ? "agree " : "DIFFER ") + yes_no(restricted) + "/" + yes_no(full) + "  " +
                  em.show(f));
  }
  em.note(std::to_string(fs.size() - mismatches) + "/" + std::to_string(fs.size()) + " agree under " +
          m.k->describe());
  return mismatches ? status_check_failed : status_ok;
}

int cmd_lemma(const RunConfig& cfg, std::ostream& out) {
  Emitter em(out, cfg, "lemma-check");
  FiniteStructure s = structure_of(cfg);
  auto fam = parse_theta_spec(cfg.theta, s.sig);
  Formula phi = parse_formula(cfg.formula, s.sig);
  Variable v = parse_variable(cfg.var);
  std::vector<LemmaItem> items;
  if (cfg.item == "all") {
    items = v.is_relation() ? std::vector<LemmaItem>{LemmaItem::iii, LemmaItem::iv, LemmaItem::v, LemmaItem::vi}
                            : std::vector<LemmaItem>{LemmaItem::i, LemmaItem::ii};
  } else {
    items = {parse_lemma_item(cfg.item)};
  }
  int status = status_ok;
  for (LemmaItem item : items) {
    LemmaCheck c = lemma_reg_check(s, cfg.vars, phi, v, item, fam, cfg.bound);
    if (!c.holds) status = status_check_failed;
    em.record({{"item", to_string(item)},
               {"pass", c.holds},
               {"lhs", c.lhs},
               {"rhs", c.rhs},
               {"instances", c.instances}},
              "(" + to_string(item) + ") " + (c.holds ? "holds" : "FAILS") + ": " + c.lhs + " vs " + c.rhs + " over " +
                  std::to_string(c.instances) + " instances");
  }
  return status;
}

int cmd_reduce(const RunConfig& cfg, std::ostream& out) {
  Emitter em(out, cfg, "reduce");
  FiniteStructure s = structure_of(cfg);
  LeibnizResult r = leibniz_reduce(s, cfg.depth);
  std::string blocks;
  for (std::size_t a = 0; a < r.block_of.size(); ++a) {
    blocks += (a ? " " : "") + std::to_string(a) + "->" + std::to_string(r.block_of[a]);
  }
  json quotient = json::parse(structure_to_json(r.quotient));
  em.record({{"block_of", r.block_of}, {"rounds", r.rounds}, {"stabilized", r.stabilized}, {"quotient", quotient}},
            "blocks: " + blocks + "\nrounds: " + std::to_string(r.rounds) + (r.stabilized ? "" : " (not stabilized)") +
                "\n" + quotient.dump(2));
  return status_ok;
}

int cmd_prove(const RunConfig& cfg, std::ostream& out) {
  Emitter em(out, cfg, "prove-check");
  if (cfg.proof.empty()) throw PreconditionError("--proof is required");
  ProofReadOptions opt;
  Proof p = load_proof(cfg.proof, opt);
  if (cfg.theta != "proof") p.theta = parse_theta_spec(cfg.theta, p.sig);
  if (!cfg.sigma.empty()) p.sigma = parse_sentences(read_file(cfg.sigma), p.sig);
  CheckResult r = check_proof(p);
  int status = r.accepted ? status_ok : status_check_failed;
  std::string where;
  if (!r.accepted) {
    if (!r.template_id.empty()) where = "template " + r.template_id + " ";
    if (r.line) where += "line " + std::to_string(*r.line + 1);
  }
  json j = {{"proof", std::filesystem::path(cfg.proof).filename().string()},
            {"theta", p.theta->name()},
            {"lines", p.lines.size()},
            {"templates", p.templates.size()},
            {"accepted", r.accepted}};
  if (!r.accepted) {
    j["reason"] = r.reason;
    if (r.line) j["line"] = *r.line + 1;
    if (!r.template_id.empty()) j["template"] = r.template_id;
  }
  em.record(j, r.accepted ? "accepted: " + em.show(p.lines.back().formula)
                          : "rejected at " + where + ": " + r.reason);
  if (cfg.spot > 0) {
    for (const auto& t : p.templates) {
      SpotCheck sc = spot_check_template(t, context_of(p), cfg.spot);
      if (!sc.passed) status = status_check_failed;
      json sj = {{"template", t.id}, {"pass", sc.passed}, {"result", sc.reason}};
      if (sc.failing_n) sj["failing_n"] = *sc.failing_n;
      em.record(sj, "template " + t.id + ": " + sc.reason);
    }
  }
  if (cfg.deduce > 0) {
    if (!r.accepted) throw PreconditionError("deduction needs an accepted proof");
    Proof d = apply_deduction(p, cfg.deduce - 1);
    CheckResult dr = check_proof(d);
    if (!dr.accepted) status = status_check_failed;
    em.record({{"deduction", cfg.deduce}, {"accepted", dr.accepted}, {"lines", d.lines.size()},
               {"goal", em.show(d.lines.back().formula)}},
              "deduction on premise " + std::to_string(cfg.deduce) + ": " + (dr.accepted ? "accepted" : dr.reason) +
                  ", " + std::to_string(d.lines.size()) + " lines, " + em.show(d.lines.back().formula));
    if (cfg.print) em.note(print_proof(d));
  } else if (cfg.print) {
    em.note(print_proof(p));
  }
  return status;
}

std::string family_text(const std::string& arg) {
  if (arg == "atoms") return "join : 1 : atoms\n";
  if (arg == "complete") return "complete\n";
  if (std::filesystem::exists(arg)) return read_file(arg);
  return arg;
}

template <BooleanAlgebra A>
int run_rs(const A& alg, const RunConfig& cfg, std::ostream& out) {
  Emitter em(out, cfg, "rs");
  auto entries = parse_family(alg, family_text(cfg.family));
  std::uint64_t budget = cfg.budget ? cfg.budget : budget_from_env(10000);
  RsOptions opt;
  opt.steps = cfg.steps;
  opt.witness_budget = budget;
  auto avoid = alg.parse(cfg.avoid);
  auto u = rs_construct(alg, entries, avoid, opt);
  auto m = membership_of(alg, u);

  json chain = json::array();
  for (const auto& b : u.chain) chain.push_back(alg.format(b));
  // Human mode lists only the strict descents.
  std::string shown;
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < u.chain.size() && distinct < 12; ++i) {
    if (i && alg.equal(u.chain[i], u.chain[i - 1])) continue;
    shown += (distinct++ ? " > " : "") + alg.format(u.chain[i]);
  }
  shown += " (" + std::to_string(u.chain.size()) + " stages)";
  em.record({{"chain", chain}, {"decisions", u.decisions.size()}}, "chain: " + shown);

  int status = status_ok;
  bool avoided = !m.contains(avoid);
  if (!avoided) status = status_check_failed;
  json summary = {{"generator", alg.format(u.last())}, {"avoided", alg.format(avoid)}, {"excluded", avoided}};
  std::string human = "U = {e : " + alg.format(u.last()) + " <= e}, avoids " + alg.format(avoid) + ": " +
                      (avoided ? "yes" : "NO");
  if (alg.size() && *alg.size() <= (std::uint64_t{1} << 12)) {
    bool ultra = is_ultrafilter(alg, m.contains);
    if (!ultra) status = status_check_failed;
    summary["ultrafilter"] = ultra;
    human += ", ultrafilter: " + std::string(ultra ? "yes" : "NO");
  }
  if constexpr (std::is_same_v<typename A::Element, FinCofElement>) {
    const auto& last = u.last();
    bool principal = !last.cofinite && last.set.size() == 1;
    summary["principal"] = principal;
    if (principal) {
      summary["principal_at"] = last.set.front();
      human += ", principal at " + std::to_string(last.set.front());
    }
  }
  em.record(summary, human);

  std::size_t yes = 0;
  std::size_t no = 0;
  std::size_t open = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CompatibilityReport c = check_f_compatible(alg, m, entries[i], budget);
    c.verdict == Verdict::yes ? ++yes : c.verdict == Verdict::no ? ++no : ++open;
    std::string label = entries[i].label.empty() ? "#" + std::to_string(i) : entries[i].label;
    json j = {{"entry", label}, {"verdict", to_string(c.verdict)}, {"inspected", c.inspected}, {"reason", c.reason}};
    if (c.witness) j["witness"] = *c.witness;
    if (em.jsonl() || entries.size() <= 20) em.record(j, "  " + label + ": " + to_string(c.verdict) + " (" + c.reason + ")");
  }
  if (no) status = status_check_failed;
  em.record({{"entries", entries.size()}, {"yes", yes}, {"no", no}, {"inconclusive", open}},
            std::to_string(yes) + "/" + std::to_string(entries.size()) + " entries compatible" +
                (no ? ", " + std::to_string(no) + " incompatible" : "") +
                (open ? ", " + std::to_string(open) + " inconclusive" : ""));
  return status;
}

int cmd_rs(const RunConfig& cfg, std::ostream& out) {
  AlgebraSpec spec = parse_algebra_spec(cfg.algebra);
  switch (spec.kind) {
    case AlgebraKind::powerset: return run_rs(PowersetAlgebra(spec.size), cfg, out);
    case AlgebraKind::free: return run_rs(FreeAlgebra(spec.size), cfg, out);
    case AlgebraKind::fincof: return run_rs(FiniteCofiniteAlgebra(), cfg, out);
  }
  return status_precondition;
}

int cmd_suite(const RunConfig& cfg, std::ostream& out) {
  Emitter em(out, cfg, "suite");
  std::vector<std::string> names;
  if (cfg.suite == "all") {
    names = suite_names();
  } else {
    names = {cfg.suite};
  }
  int status = status_ok;
  for (const auto& name : names) {
    SuiteOptions opt;
    opt.seed = cfg.seed;
    SuiteResult r = run_suite(name, opt);
    for (const auto& rec : r.records) {
      em.record({{"suite", name}, {"seed", cfg.seed}, {"check", rec.check}, {"pass", rec.pass},
                 {"detail", rec.detail}},
                std::string(rec.pass ? "  pass " : "  FAIL ") + rec.check + ": " + rec.detail);
    }
    std::ostringstream secs;
    secs << std::fixed << std::setprecision(2) << r.seconds;
    em.record({{"suite", name}, {"seed", cfg.seed}, {"summary", r.summary}, {"passed", r.passed()},
               {"failed", r.failed()}, {"pass", r.ok()}},
              std::string(r.ok() ? "pass " : "FAIL ") + name + " (seed " + std::to_string(cfg.seed) + ", " +
                  secs.str() + " s): " + r.summary);
    if (!r.ok()) status = status_check_failed;
  }
  return status;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Second-order logic with definable relation ranges: evaluation, proof checking, ultrafilters",
               "rsol"};
  app.require_subcommand(1);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"human", "jsonl"}));
  app.add_flag("--ascii", cfg.ascii, "Print formulas in ASCII");

  auto add_structure = [&](CLI::App* sub) {
    sub->add_option("--structure", cfg.structure, "Structure JSON file")->required();
  };
  auto add_theta = [&](CLI::App* sub) {
    sub->add_option("--theta", cfg.theta, "weak-so[:k], dsl, all-fo, exists-n:L, forall-n:L or custom:<file>");
  };

  auto* parse = app.add_subcommand("parse", "Parse and print a formula");
  parse->add_option("formula", cfg.formula, "Formula text")->required();
  parse->add_option("--signature", cfg.signature, "Signature, e.g. 'P0/1 P1/2 c1'");
  parse->add_flag("--normalize", cfg.normalized, "Print the normalized form");

  auto* eval = app.add_subcommand("eval", "Evaluate sentences in a standard structure");
  add_structure(eval);
  add_theta(eval);
  eval->add_option("--sentence", cfg.sentences, "Sentence (repeatable)")->required();
  eval->add_option("--oracle", cfg.oracle, "exact, orbits, bounded, rank or full")
      ->check(CLI::IsMember({"exact", "orbits", "bounded", "rank", "full"}));
  eval->add_option("--bound", cfg.bound, "Last family member for --oracle bounded");
  eval->add_option("--rank", cfg.rank, "Quantifier rank for --oracle rank (default |A|+1)");
  eval->add_flag("--with-parameters", cfg.with_parameters, "Orbit oracle with parameters");
  eval->add_option("--expect", cfg.expect, "Fail unless the value is this (true/false)");

  auto* ktheta = app.add_subcommand("ktheta", "Materialize the relations defined by family members 0..N");
  add_structure(ktheta);
  add_theta(ktheta);
  ktheta->add_option("--bound", cfg.bound, "Last member N");
  ktheta->add_option("--arity", cfg.arity, "Relation arity");

  auto* orb = app.add_subcommand("orbits", "Automorphism orbits and exactly definable relations");
  add_structure(orb);
  orb->add_option("--arity", cfg.arity, "Tuple length");
  orb->add_flag("--with-parameters", cfg.with_parameters, "Allow parameters");

  auto* compare = app.add_subcommand("compare-so", "Compare restricted and full second-order truth");
  add_structure(compare);
  add_theta(compare);
  compare->add_option("--sentence", cfg.sentences, "Sentence (repeatable)");
  compare->add_option("--sentences", cfg.sentence_file, "File with one sentence per line");
  compare->add_option("--oracle", cfg.oracle, "exact, orbits, bounded or rank")
      ->check(CLI::IsMember({"exact", "orbits", "bounded", "rank"}));
  compare->add_option("--bound", cfg.bound, "Last member for --oracle bounded");

  auto* lemma = app.add_subcommand("lemma-check", "Check quantifier meet/join identities in the truth algebra");
  add_structure(lemma);
  add_theta(lemma);
  lemma->add_option("--formula", cfg.formula, "Formula")->required();
  lemma->add_option("--var", cfg.var, "Quantified variable, e.g. x1 or X0")->required();
  lemma->add_option("--item", cfg.item, "i, ii, iii, iv, v, vi or all");
  lemma->add_option("--bound", cfg.bound, "K = members 0..N");
  lemma->add_option("--vars", cfg.vars, "Individual variables of the truth algebra");

  auto* reduce = app.add_subcommand("reduce", "Leibniz reduction of a structure");
  add_structure(reduce);
  reduce->add_option("--depth", cfg.depth, "Refinement rounds through functions");

  auto* prove = app.add_subcommand("prove-check", "Check a proof file");
  prove->add_option("--proof", cfg.proof, "Proof file")->required();
  prove->add_option("--sigma", cfg.sigma, "Premise file, one sentence per line (replaces the proof's sigma)");
  prove->add_option("--theta", cfg.theta, "Override the proof's family");
  prove->add_option("--spot", cfg.spot, "Spot-check templates at n = 0..N-1");
  prove->add_option("--deduce", cfg.deduce, "Discharge premise k (1-based) and check the result");
  prove->add_flag("--print", cfg.print, "Print the (transformed) proof");

  auto* rs = app.add_subcommand("rs", "Rasiowa-Sikorski ultrafilter construction");
  rs->add_option("--algebra", cfg.algebra, "powerset:n, free:g or fincof");
  rs->add_option("--family", cfg.family, "Family file, inline entries, 'atoms' or 'complete'");
  rs->add_option("--avoid", cfg.avoid, "Non-unit element to avoid");
  rs->add_option("--steps", cfg.steps, "Element decisions");
  rs->add_option("--budget", cfg.budget, "Inspections per entry (default RSOL_BUDGET or 10000)");

  auto* suite = app.add_subcommand("suite", "Run an acceptance suite");
  suite->add_option("name", cfg.suite, "soundness, rules, collapse, weakso, dsl-orbits, lemma-reg, rs, kernel or all")
      ->required();
  suite->add_option("--seed", cfg.seed, "Random seed");

  // prove-check keeps the proof's own family unless --theta is given.
  prove->preparse_callback([&](std::size_t) { cfg.theta = "proof"; });

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? status_ok : status_precondition;
  }

  try {
    if (parse->parsed()) return cmd_parse(cfg, out);
    if (eval->parsed()) return cmd_eval(cfg, out);
    if (ktheta->parsed()) return cmd_ktheta(cfg, out);
    if (orb->parsed()) return cmd_orbits(cfg, out);
    if (compare->parsed()) return cmd_compare(cfg, out);
    if (lemma->parsed()) return cmd_lemma(cfg, out);
    if (reduce->parsed()) return cmd_reduce(cfg, out);
    if (prove->parsed()) return cmd_prove(cfg, out);
    if (rs->parsed()) return cmd_rs(cfg, out);
    if (suite->parsed()) return cmd_suite(cfg, out);
  } catch (const ParseError& e) {
    err << "parse error (" << to_string(e.kind()) << ")";
    if (e.line()) err << " at line " << e.line();
    err << ": " << e.what() << '\n';
    return status_parse_error;
  } catch (const ArityError& e) {
    err << "parse error (arity): " << e.what() << '\n';
    return status_parse_error;
  } catch (const FeasibilityError& e) {
    err << "infeasible: " << e.what() << '\n';
    return status_feasibility;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return status_precondition;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return status_precondition;
  }
  return status_precondition;
}

}  // namespace rsol::cli

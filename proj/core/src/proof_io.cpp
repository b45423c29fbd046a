#include "rsol/proof_io.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rsol/error.hpp"
#include "rsol/parser.hpp"

namespace rsol {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool starts_with(const std::string& s, const std::string& p) { return s.compare(0, p.size(), p) == 0; }

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::size_t number(const std::string& w, std::size_t line) {
  if (w.empty() || !std::all_of(w.begin(), w.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw ParseError(ParseErrorKind::syntax, 0, "expected a number, got '" + w + "'", line);
  }
  return std::stoull(w);
}

class ProofReader {
 public:
  ProofReader(const std::string& text, const ProofReadOptions& opt) : text_(text), opt_(opt) {
    names_.reserve(text);
  }

  Proof run() {
    std::istringstream in(text_);
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no_;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      std::string line = trim(raw);
      if (line.empty()) continue;
      if (current_) {
        if (line == "}") {
          proof_.templates.push_back(std::move(*current_));
          current_.reset();
          continue;
        }
        current_->lines.push_back(step(line, current_->lines.size(), current_arity_));
        continue;
      }
      if (starts_with(line, "signature:")) {
        proof_.sig = parse_signature(trim(line.substr(10)));
        proof_.sig.validate();
      } else if (starts_with(line, "theta:")) {
        proof_.theta = opt_.theta ? opt_.theta : parse_theta_spec(resolve(trim(line.substr(6))), proof_.sig);
      } else if (starts_with(line, "sigma:")) {
        proof_.sigma.push_back(formula(trim(line.substr(6)), 0));
      } else if (starts_with(line, "goal:")) {
        proof_.goal = formula(trim(line.substr(5)), 0);
      } else if (starts_with(line, "template ")) {
        open_template(line);
      } else {
        proof_.lines.push_back(step(line, proof_.lines.size(), 0));
      }
    }
    if (current_) fail("unterminated template " + current_->id);
    if (!proof_.theta && opt_.theta) proof_.theta = opt_.theta;
    return std::move(proof_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(ParseErrorKind::syntax, 0, what, line_no_);
  }

  std::string resolve(const std::string& spec) const {
    if (opt_.base_dir.empty() || !starts_with(spec, "custom:")) return spec;
    std::filesystem::path file = spec.substr(7);
    if (file.is_absolute()) return spec;
    return "custom:" + (std::filesystem::path(opt_.base_dir) / file).string();
  }

  Formula formula(const std::string& text, std::uint32_t theta_arity) {
    ParseOptions po;
    po.names = &names_;
    po.allow_theta = theta_arity > 0;
    po.theta_arity = theta_arity;
    try {
      return parse_formula(text, proof_.sig, po);
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), e.position(), e.what(), line_no_);
    }
  }

  void open_template(const std::string& line) {
    // template <id> over n : <target> {
    if (line.back() != '{') fail("template header must end with '{'");
    std::string body = trim(line.substr(9, line.size() - 10));
    auto colon = body.find(':');
    if (colon == std::string::npos) fail("template header needs ': <target>'");
    auto head = words(body.substr(0, colon));
    if (head.size() != 3 || head[1] != "over" || head[2] != "n") fail("expected 'template <id> over n : <target> {'");
    OmegaTemplate t;
    t.id = head[0];
    t.target = formula(trim(body.substr(colon + 1)), 0);
    auto split = split_target(t.target);
    current_arity_ = split ? split->rel.arity : 1;
    current_ = std::move(t);
  }

  ProofLine step(const std::string& line, std::size_t expected, std::uint32_t theta_arity) {
    auto dot = line.find('.');
    if (dot == std::string::npos) fail("expected '<index>. <formula> ; <justification>'");
    std::size_t idx = number(trim(line.substr(0, dot)), line_no_);
    if (idx != expected + 1) fail("line index " + std::to_string(idx) + " out of sequence");
    auto semi = line.rfind(';');
    if (semi == std::string::npos || semi < dot) fail("missing justification");
    ProofLine out;
    out.formula = formula(trim(line.substr(dot + 1, semi - dot - 1)), theta_arity);
    out.just = justification(trim(line.substr(semi + 1)), out.formula, theta_arity > 0);
    return out;
  }

  Justification justification(const std::string& text, const Formula& f, bool in_template) {
    auto w = words(text);
    if (w.empty()) fail("empty justification");
    std::string head = w[0];
    std::optional<std::string> arg;
    auto paren = head.find('(');
    if (paren != std::string::npos && head.back() == ')') {
      arg = head.substr(paren + 1, head.size() - paren - 2);
      head = head.substr(0, paren);
    } else if (w.size() > 1) {
      arg = w[1];
    }
    if (head == "premise") {
      if (w.size() != 2) fail("expected 'premise <k>'");
      std::size_t k = number(w[1], line_no_);
      if (k == 0) fail("premises are numbered from 1");
      return Justification::premise_of(k - 1);
    }
    if (head == "MP" || head == "mp") {
      if (w.size() != 3) fail("expected 'MP <i> <j>'");
      return Justification::mp(number(w[1], line_no_) - 1, number(w[2], line_no_) - 1);
    }
    if (head == "gen" || head == "Gen") {
      if (w.size() != 2) fail("expected 'gen <i>'");
      Formula n = normalize(f);
      Variable v = n.kind() == FormulaKind::forall ? n.var() : Variable{};
      return Justification::gen(number(w[1], line_no_) - 1, v);
    }
    if (head == "R3") {
      if (w.size() != 2) fail("expected 'R3 <template>'");
      return Justification::r3(w[1]);
    }
    auto schema = parse_schema(head);
    if (!schema) fail("unknown justification '" + head + "'");
    bool schematic = false;
    std::optional<std::uint64_t> index;
    if (arg) {
      if (*arg == "n") {
        if (!in_template) fail("meta index n outside a template");
        schematic = true;
      } else {
        index = number(*arg, line_no_);
      }
    }
    KernelContext ctx = context_of(proof_);
    auto inst = match_schema(*schema, f, ctx, index, schematic);
    Instantiation data = inst.value_or(Instantiation{});
    if (!inst) {
      // Keep what the file claimed so the checker can say what is wrong.
      data.schematic = schematic;
      data.theta_index = index.value_or(0);
    }
    return Justification::axiom(*schema, std::move(data));
  }

  const std::string& text_;
  ProofReadOptions opt_;
  NameTable names_;
  Proof proof_;
  std::optional<OmegaTemplate> current_;
  std::uint32_t current_arity_ = 1;
  std::size_t line_no_ = 0;
};

std::string show(const Formula& f) {
  PrintOptions po;
  po.ascii = true;
  po.resugar = true;
  return print(f, po);
}

void print_lines(std::ostringstream& out, const std::vector<ProofLine>& lines, const std::string& indent) {
  for (std::size_t k = 0; k < lines.size(); ++k) {
    out << indent << (k + 1) << ". " << show(lines[k].formula) << " ; " << describe(lines[k].just) << "\n";
  }
}

}  // namespace

Proof parse_proof(const std::string& text, const ProofReadOptions& options) {
  return ProofReader(text, options).run();
}

Proof load_proof(const std::string& path, const ProofReadOptions& options) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open proof file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  ProofReadOptions opt = options;
  if (opt.base_dir.empty()) opt.base_dir = std::filesystem::path(path).parent_path().string();
  return parse_proof(ss.str(), opt);
}

std::string describe(const Justification& j) {
  switch (j.rule) {
    case RuleKind::premise: return "premise " + std::to_string(j.premise + 1);
    case RuleKind::mp: return "MP " + std::to_string(j.minor + 1) + " " + std::to_string(j.major + 1);
    case RuleKind::gen: return "gen " + std::to_string(j.from + 1);
    case RuleKind::r3: return "R3 " + j.templ;
    case RuleKind::axiom: {
      std::string s = to_string(j.schema);
      if (j.schema == Schema::A1 || j.schema == Schema::A6) {
        s += j.inst.schematic ? "(n)" : " " + std::to_string(j.inst.theta_index);
      }
      return s;
    }
  }
  return "?";
}

std::string print_proof(const Proof& p) {
  std::ostringstream out;
  out << "signature: " << to_string(p.sig) << "\n";
  if (p.theta) out << "theta: " << p.theta->name() << "\n";
  for (const auto& s : p.sigma) out << "sigma: " << show(s) << "\n";
  if (p.goal) out << "goal: " << show(*p.goal) << "\n";
  for (const auto& t : p.templates) {
    out << "template " << t.id << " over n : " << show(t.target) << " {\n";
    print_lines(out, t.lines, "  ");
    out << "}\n";
  }
  print_lines(out, p.lines, "");
  return out.str();
}

std::vector<Formula> parse_sentences(const std::string& text, const Signature& sig) {
  std::istringstream in(text);
  std::string raw;
  std::vector<Formula> out;
  NameTable names;
  names.reserve(text);
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string t = trim(raw);
    if (t.empty()) continue;
    ParseOptions po;
    po.names = &names;
    Formula f;
    try {
      f = parse_formula(t, sig, po);
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), e.position(), e.what(), line);
    }
    if (!is_sentence(f)) throw PreconditionError("line " + std::to_string(line) + " is not a sentence");
    out.push_back(f);
  }
  return out;
}

}  // namespace rsol

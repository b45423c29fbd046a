#include <sstream>

#include "rsol/parser.hpp"

namespace rsol {

namespace {

struct Symbols {
  const char* forall;
  const char* exists;
  const char* neg;
  const char* conj;
  const char* disj;
  const char* implies;
  const char* iff;
  const char* theta;
};

constexpr Symbols kUnicode{"\xE2\x88\x80", "\xE2\x88\x83", "\xC2\xAC", " \xE2\x88\xA7 ", " \xE2\x88\xA8 ",
                           " \xE2\x86\x92 ", " \xE2\x86\x94 ", "\xCE\xB8"};
constexpr Symbols kAscii{"forall ", "exists ", "~", " & ", " | ", " -> ", " <-> ", "theta"};

int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::biconditional: return 1;
    case FormulaKind::implication: return 2;
    case FormulaKind::disjunction: return 3;
    case FormulaKind::conjunction: return 4;
    case FormulaKind::negation:
    case FormulaKind::forall:
    case FormulaKind::exists:
      return 5;
    default:
      return 6;
  }
}

void print_term(std::ostream& out, const Term& t) {
  switch (t.kind) {
    case TermKind::variable: out << to_string(t.var); break;
    case TermKind::constant: out << 'c' << t.symbol; break;
    case TermKind::apply: {
      out << 'f' << t.symbol << '(';
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out << ", ";
        print_term(out, t.args[i]);
      }
      out << ')';
      break;
    }
  }
}

void print_args(std::ostream& out, const std::vector<Term>& ts) {
  out << '(';
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out << ", ";
    print_term(out, ts[i]);
  }
  out << ')';
}

class Printer {
 public:
  explicit Printer(const Symbols& sym) : sym_(sym) {}

  void run(std::ostream& out, const Formula& f) {
    using K = FormulaKind;
    switch (f.kind()) {
      case K::predicate:
        out << 'P' << f.symbol();
        print_args(out, f.terms());
        break;
      case K::equal:
        print_term(out, f.terms()[0]);
        out << " = ";
        print_term(out, f.terms()[1]);
        break;
      case K::relation_apply:
        out << to_string(f.var());
        print_args(out, f.terms());
        break;
      case K::relation_equal:
        out << to_string(f.var()) << " = " << to_string(f.var2());
        break;
      case K::theta_apply: {
        out << sym_.theta << "[n](";
        for (std::size_t i = 0; i < f.terms().size(); ++i) {
          if (i) out << ", ";
          print_term(out, f.terms()[i]);
        }
        out << "; " << to_string(f.var()) << ')';
        break;
      }
      case K::negation:
        out << sym_.neg;
        child(out, f.left(), precedence(f.left().kind()) < 5);
        break;
      case K::forall:
      case K::exists:
        out << (f.kind() == K::forall ? sym_.forall : sym_.exists) << to_string(f.var()) << ' ';
        child(out, f.left(), precedence(f.left().kind()) < 5);
        break;
      case K::conjunction:
      case K::disjunction: {
        int p = precedence(f.kind());
        child(out, f.left(), precedence(f.left().kind()) < p);
        out << (f.kind() == K::conjunction ? sym_.conj : sym_.disj);
        child(out, f.right(), precedence(f.right().kind()) <= p);
        break;
      }
      case K::implication:
        child(out, f.left(), precedence(f.left().kind()) <= 2);
        out << sym_.implies;
        child(out, f.right(), precedence(f.right().kind()) < 2);
        break;
      case K::biconditional:
        child(out, f.left(), precedence(f.left().kind()) < 1);
        out << sym_.iff;
        child(out, f.right(), precedence(f.right().kind()) <= 1);
        break;
    }
  }

 private:
  void child(std::ostream& out, const Formula& f, bool parens) {
    if (parens) out << '(';
    run(out, f);
    if (parens) out << ')';
  }

  const Symbols& sym_;
};

}  // namespace

Formula resugar(const Formula& f) {
  using K = FormulaKind;
  switch (f.kind()) {
    case K::negation: {
      BinaryView bv;
      if (match_implication(f, bv)) return Formula::implication(resugar(bv.lhs), resugar(bv.rhs));
      Variable v;
      Formula body;
      if (match_exists(f, v, body)) return Formula::exists(v, resugar(body));
      return Formula::negation(resugar(f.left()));
    }
    case K::conjunction: {
      BinaryView bv;
      if (match_biconditional(f, bv)) return Formula::biconditional(resugar(bv.lhs), resugar(bv.rhs));
      return Formula::conjunction(resugar(f.left()), resugar(f.right()));
    }
    case K::disjunction: return Formula::disjunction(resugar(f.left()), resugar(f.right()));
    case K::implication: return Formula::implication(resugar(f.left()), resugar(f.right()));
    case K::biconditional: return Formula::biconditional(resugar(f.left()), resugar(f.right()));
    case K::forall: return Formula::forall(f.var(), resugar(f.left()));
    case K::exists: return Formula::exists(f.var(), resugar(f.left()));
    default: return f;
  }
}

std::string print(const Formula& f, const PrintOptions& options) {
  std::ostringstream out;
  Printer p(options.ascii ? kAscii : kUnicode);
  p.run(out, options.resugar ? resugar(f) : f);
  return out.str();
}

std::string print(const Term& t) {
  std::ostringstream out;
  print_term(out, t);
  return out.str();
}

}  // namespace rsol

#include "dz/smtlib.hpp"

#include <cctype>
#include <memory>
#include <set>
#include <sstream>
#include <vector>

namespace dz {

namespace {

void emit_int(std::ostream& os, Int v) {
  if (v < 0)
    os << "(- " << -(v + 1) + 1 << ")";  // avoid negating INT64_MIN directly
  else
    os << v;
}

void emit_term(std::ostream& os, const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Const: emit_int(os, t->value); return;
    case Term::Kind::Var: os << t->var; return;
    case Term::Kind::Add:
      os << "(+ ";
      emit_term(os, t->a);
      os << " ";
      emit_term(os, t->b);
      os << ")";
      return;
    case Term::Kind::Mul:
      os << "(* ";
      emit_int(os, t->value);
      os << " ";
      emit_term(os, t->a);
      os << ")";
      return;
    default:
      throw Error("internal: pair construct in SMT-LIB emission");
  }
}

void emit_formula(std::ostream& os, const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True: os << "true"; return;
    case Formula::Kind::Le:
      os << "(<= ";
      emit_term(os, f->lhs);
      os << " ";
      emit_term(os, f->rhs);
      os << ")";
      return;
    case Formula::Kind::Not:
      os << "(not ";
      emit_formula(os, f->f);
      os << ")";
      return;
    case Formula::Kind::Or:
      os << "(or ";
      emit_formula(os, f->f);
      os << " ";
      emit_formula(os, f->g);
      os << ")";
      return;
    case Formula::Kind::Exists:
      throw Error("internal: table construct in SMT-LIB emission");
  }
}

}  // namespace

std::string emit_smtlib(const FormulaPtr& f, const VarRegistry& vars,
                        bool get_model) {
  std::ostringstream os;
  os << "(set-logic QF_LIA)\n";
  for (size_t v = 0; v < vars.size(); v++) {
    const VarInfo& vi = vars[static_cast<VarId>(v)];
    os << "(declare-const " << vi.name << " Int)\n";
    if (vi.lb) {
      os << "(assert (<= ";
      emit_int(os, *vi.lb);
      os << " " << vi.name << "))\n";
    }
    if (vi.ub) {
      os << "(assert (<= " << vi.name << " ";
      emit_int(os, *vi.ub);
      os << "))\n";
    }
  }
  os << "(assert ";
  emit_formula(os, f);
  os << ")\n(check-sat)\n";
  if (get_model) os << "(get-model)\n";
  return os.str();
}

// ---- independent re-parse ---------------------------------------------------

namespace {

struct Sexp {
  bool atom = false;
  std::string sym;
  std::vector<Sexp> items;
};

struct Reader {
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        i++;
      } else if (s[i] == ';') {
        while (i < s.size() && s[i] != '\n') i++;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip();
    return i >= s.size();
  }

  Sexp next() {
    skip();
    if (i >= s.size()) throw Error("smtlib reader: unexpected end of script");
    if (s[i] == '(') {
      i++;
      Sexp e;
      while (true) {
        skip();
        if (i >= s.size()) throw Error("smtlib reader: unbalanced '('");
        if (s[i] == ')') {
          i++;
          return e;
        }
        e.items.push_back(next());
      }
    }
    if (s[i] == ')') throw Error("smtlib reader: stray ')'");
    Sexp e;
    e.atom = true;
    size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
           s[j] != '(' && s[j] != ')' && s[j] != ';')
      j++;
    e.sym = s.substr(i, j - i);
    i = j;
    return e;
  }
};

bool is_numeral(const std::string& t) {
  if (t.empty()) return false;
  for (char c : t)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

const std::set<std::string> kOps = {"<=", "<",  ">",   ">=",    "=",
                                    "+",  "-",  "*",   "not",   "or",
                                    "and", "=>", "ite", "true", "false"};

void check_expr(const Sexp& e, const std::set<std::string>& declared) {
  if (e.atom) {
    if (is_numeral(e.sym) || kOps.count(e.sym) || declared.count(e.sym)) return;
    throw Error("smtlib reader: undeclared symbol '" + e.sym + "'");
  }
  if (e.items.empty()) throw Error("smtlib reader: empty application");
  const Sexp& head = e.items[0];
  if (!head.atom || !kOps.count(head.sym))
    throw Error("smtlib reader: unknown operator");
  for (size_t k = 1; k < e.items.size(); k++) check_expr(e.items[k], declared);
  if (e.items.size() < 2) throw Error("smtlib reader: operator with no arguments");
}

}  // namespace

void check_smtlib_grammar(const std::string& script) {
  Reader r{script};
  std::set<std::string> declared;
  bool logic_seen = false, checked = false;
  while (!r.at_end()) {
    Sexp cmd = r.next();
    if (cmd.atom || cmd.items.empty() || !cmd.items[0].atom)
      throw Error("smtlib reader: malformed command");
    const std::string& head = cmd.items[0].sym;
    if (head == "set-logic") {
      if (cmd.items.size() != 2 || !cmd.items[1].atom)
        throw Error("smtlib reader: malformed set-logic");
      logic_seen = true;
    } else if (head == "declare-const") {
      if (cmd.items.size() != 3 || !cmd.items[1].atom || !cmd.items[2].atom ||
          cmd.items[2].sym != "Int")
        throw Error("smtlib reader: malformed declare-const");
      if (!declared.insert(cmd.items[1].sym).second)
        throw Error("smtlib reader: duplicate declaration '" +
                    cmd.items[1].sym + "'");
    } else if (head == "assert") {
      if (cmd.items.size() != 2)
        throw Error("smtlib reader: malformed assert");
      check_expr(cmd.items[1], declared);
    } else if (head == "check-sat") {
      if (cmd.items.size() != 1)
        throw Error("smtlib reader: malformed check-sat");
      checked = true;
    } else if (head == "get-model") {
      if (cmd.items.size() != 1)
        throw Error("smtlib reader: malformed get-model");
    } else {
      throw Error("smtlib reader: unknown command '" + head + "'");
    }
  }
  if (!logic_seen) throw Error("smtlib reader: missing set-logic");
  if (!checked) throw Error("smtlib reader: missing check-sat");
}

}  // namespace dz

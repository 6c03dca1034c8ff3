#include "dz/parser.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace dz {

namespace {

struct Sx {
  bool is_atom = false;
  std::string atom;       // token text (strings keep surrounding quotes off)
  bool is_string = false;
  std::vector<Sx> list;
  SrcPos pos;
};

struct Lexer {
  const std::string& s;
  size_t i = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& text) : s(text) {}

  [[noreturn]] void fail(const std::string& msg, SrcPos pos) {
    std::ostringstream os;
    os << pos.line << ":" << pos.col << ": " << msg;
    throw Error(os.str(), pos);
  }

  void advance() {
    if (s[i] == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
    i++;
  }

  void skip_ws() {
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        advance();
      } else if (s[i] == ';') {
        while (i < s.size() && s[i] != '\n') advance();
      } else {
        break;
      }
    }
  }

  bool atom_char(char c) const {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           c == '+' || c == '.' || c == '?' || c == '*' || c == '<' ||
           c == '>' || c == '=' || c == '!' || c == '/';
  }

  Sx read() {
    skip_ws();
    SrcPos pos{line, col};
    if (i >= s.size()) fail("unexpected end of input", pos);
    if (s[i] == '(') {
      advance();
      Sx sx;
      sx.pos = pos;
      while (true) {
        skip_ws();
        if (i >= s.size()) fail("unbalanced '(': unexpected end of input", pos);
        if (s[i] == ')') {
          advance();
          return sx;
        }
        sx.list.push_back(read());
      }
    }
    if (s[i] == ')') fail("unexpected ')'", pos);
    if (s[i] == '"') {
      advance();
      Sx sx;
      sx.is_atom = true;
      sx.is_string = true;
      sx.pos = pos;
      while (i < s.size() && s[i] != '"') {
        sx.atom += s[i];
        advance();
      }
      if (i >= s.size()) fail("unterminated string", pos);
      advance();
      return sx;
    }
    Sx sx;
    sx.is_atom = true;
    sx.pos = pos;
    while (i < s.size() && atom_char(s[i])) {
      sx.atom += s[i];
      advance();
    }
    if (sx.atom.empty()) fail(std::string("unexpected character '") + s[i] + "'", pos);
    return sx;
  }

  std::vector<Sx> read_all() {
    std::vector<Sx> out;
    while (true) {
      skip_ws();
      if (i >= s.size()) return out;
      out.push_back(read());
    }
  }
};

[[noreturn]] void fail_at(const std::string& msg, SrcPos pos) {
  std::ostringstream os;
  os << pos.line << ":" << pos.col << ": " << msg;
  throw Error(os.str(), pos);
}

bool is_int_literal(const std::string& a) {
  if (a.empty()) return false;
  size_t k = (a[0] == '-') ? 1 : 0;
  if (k == a.size()) return false;
  for (size_t j = k; j < a.size(); j++)
    if (!std::isdigit(static_cast<unsigned char>(a[j]))) return false;
  return true;
}

Int parse_int(const std::string& a, SrcPos pos) {
  try {
    size_t used = 0;
    long long v = std::stoll(a, &used);
    if (used != a.size()) fail_at("malformed integer '" + a + "'", pos);
    return v;
  } catch (const std::out_of_range&) {
    fail_at("integer literal out of 64-bit range: " + a, pos);
  } catch (const std::invalid_argument&) {
    fail_at("malformed integer '" + a + "'", pos);
  }
}

bool is_identifier(const std::string& a) {
  if (a.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(a[0])) && a[0] != '_') return false;
  for (char c : a)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' &&
        c != '.')
      return false;
  return true;
}

/// `?v`, `?v+3`, `?v-2`, or an integer literal.
TermPtr parse_cell(const std::string& tok, SrcPos pos) {
  if (is_int_literal(tok)) return t_const(parse_int(tok, pos), pos);
  if (tok.size() >= 2 && tok[0] == '?') {
    std::string rest = tok.substr(1);
    size_t op = rest.find_first_of("+-");
    if (op == std::string::npos) {
      if (!is_identifier(rest)) fail_at("malformed cell token '" + tok + "'", pos);
      return t_var(rest, pos);
    }
    std::string v = rest.substr(0, op);
    std::string off = rest.substr(op);  // keeps the sign
    bool off_ok = off[0] == '+' ? is_int_literal(off.substr(1))
                                : is_int_literal(off);
    if (!is_identifier(v) || !off_ok)
      fail_at("malformed cell token '" + tok + "'", pos);
    Int c = (off[0] == '+') ? parse_int(off.substr(1), pos) : parse_int(off, pos);
    return t_add(t_var(v, pos), t_const(c, pos), pos);
  }
  fail_at("unparsable cell token '" + tok + "'", pos);
}

TermPtr row_from_cells(std::vector<TermPtr> cells, SrcPos pos) {
  TermPtr row = cells.back();
  for (size_t i = cells.size() - 1; i-- > 0;) row = t_pair(cells[i], row, pos);
  return row;
}

struct Builder {
  SourceProblem prob;
  std::string base_dir;

  TablePtr lookup_table(const std::string& name, SrcPos pos) {
    auto t = prob.find_table(name);
    if (!t) fail_at("undeclared table '" + name + "'", pos);
    return t;
  }

  TermPtr term(const Sx& sx) {
    if (sx.is_atom) {
      if (is_int_literal(sx.atom)) return t_const(parse_int(sx.atom, sx.pos), sx.pos);
      if (is_identifier(sx.atom)) return t_var(sx.atom, sx.pos);
      fail_at("malformed term '" + sx.atom + "'", sx.pos);
    }
    if (sx.list.empty() || !sx.list[0].is_atom)
      fail_at("malformed term", sx.pos);
    const std::string& h = sx.list[0].atom;
    auto need = [&](size_t n) {
      if (sx.list.size() != n + 1)
        fail_at("'" + h + "' expects " + std::to_string(n) + " arguments", sx.pos);
    };
    if (h == "+") {
      if (sx.list.size() < 3) fail_at("'+' expects at least 2 arguments", sx.pos);
      TermPtr t = term(sx.list[1]);
      for (size_t i = 2; i < sx.list.size(); i++)
        t = t_add(t, term(sx.list[i]), sx.pos);
      return t;
    }
    if (h == "*") {
      need(2);
      if (!sx.list[1].is_atom || !is_int_literal(sx.list[1].atom))
        fail_at("'*' expects an integer coefficient first", sx.pos);
      return t_mul(parse_int(sx.list[1].atom, sx.list[1].pos), term(sx.list[2]),
                   sx.pos);
    }
    if (h == "pair") {
      need(2);
      return t_pair(term(sx.list[1]), term(sx.list[2]), sx.pos);
    }
    if (h == "fst") {
      need(1);
      return t_fst(term(sx.list[1]), sx.pos);
    }
    if (h == "snd") {
      need(1);
      return t_snd(term(sx.list[1]), sx.pos);
    }
    fail_at("unknown term operator '" + h + "'", sx.pos);
  }

  TablePtr table(const Sx& sx) {
    if (sx.is_atom) {
      if (!is_identifier(sx.atom)) fail_at("malformed table '" + sx.atom + "'", sx.pos);
      return lookup_table(sx.atom, sx.pos);
    }
    if (sx.list.empty() || !sx.list[0].is_atom)
      fail_at("malformed table expression", sx.pos);
    const std::string& h = sx.list[0].atom;
    if (h == "sel") {
      if (sx.list.size() != 4) fail_at("'sel' expects (sel x F D)", sx.pos);
      if (!sx.list[1].is_atom || !is_identifier(sx.list[1].atom))
        fail_at("'sel' binder must be an identifier", sx.list[1].pos);
      return tb_sel(sx.list[1].atom, formula(sx.list[2]), table(sx.list[3]), sx.pos);
    }
    if (h == "prod" || h == "union") {
      if (sx.list.size() < 3)
        fail_at("'" + h + "' expects at least 2 tables", sx.pos);
      TablePtr t = table(sx.list[1]);
      for (size_t i = 2; i < sx.list.size(); i++) {
        t = (h == "prod") ? tb_prod(t, table(sx.list[i]), sx.pos)
                          : tb_union(t, table(sx.list[i]), sx.pos);
      }
      return t;
    }
    fail_at("unknown table operator '" + h + "'", sx.pos);
  }

  FormulaPtr formula(const Sx& sx) {
    if (sx.is_atom) {
      if (sx.atom == "true") return f_true();
      fail_at("malformed formula '" + sx.atom + "'", sx.pos);
    }
    if (sx.list.empty() || !sx.list[0].is_atom)
      fail_at("malformed formula", sx.pos);
    const std::string& h = sx.list[0].atom;
    auto need = [&](size_t n) {
      if (sx.list.size() != n + 1)
        fail_at("'" + h + "' expects " + std::to_string(n) + " arguments", sx.pos);
    };
    if (h == "<=") {
      need(2);
      return f_le(term(sx.list[1]), term(sx.list[2]), sx.pos);
    }
    if (h == ">=") {
      need(2);
      return f_le(term(sx.list[2]), term(sx.list[1]), sx.pos);
    }
    if (h == "<") {
      need(2);
      return f_not(f_le(term(sx.list[2]), term(sx.list[1]), sx.pos), sx.pos);
    }
    if (h == ">") {
      need(2);
      return f_not(f_le(term(sx.list[1]), term(sx.list[2]), sx.pos), sx.pos);
    }
    if (h == "=") {
      need(2);
      return f_eq(term(sx.list[1]), term(sx.list[2]), sx.pos);
    }
    if (h == "not") {
      need(1);
      return f_not(formula(sx.list[1]), sx.pos);
    }
    if (h == "or" || h == "and") {
      if (sx.list.size() < 3)
        fail_at("'" + h + "' expects at least 2 arguments", sx.pos);
      FormulaPtr f = formula(sx.list[1]);
      for (size_t i = 2; i < sx.list.size(); i++) {
        f = (h == "or") ? f_or(f, formula(sx.list[i]), sx.pos)
                        : f_and(f, formula(sx.list[i]), sx.pos);
      }
      return f;
    }
    if (h == "exists") {
      need(1);
      return f_exists(table(sx.list[1]), sx.pos);
    }
    fail_at("unknown formula operator '" + h + "'", sx.pos);
  }

  void top(const Sx& sx) {
    if (sx.is_atom || sx.list.empty() || !sx.list[0].is_atom)
      fail_at("expected a top-level form", sx.pos);
    const std::string& h = sx.list[0].atom;
    if (h == "declare-int") {
      if (sx.list.size() != 2 && sx.list.size() != 4)
        fail_at("'declare-int' expects (declare-int x) or (declare-int x lo hi)",
                sx.pos);
      if (!sx.list[1].is_atom || !is_identifier(sx.list[1].atom))
        fail_at("variable name must be an identifier", sx.list[1].pos);
      VarDecl d;
      d.name = sx.list[1].atom;
      d.pos = sx.list[1].pos;
      if (prob.find_decl(d.name))
        fail_at("duplicate declaration of '" + d.name + "'", sx.list[1].pos);
      if (sx.list.size() == 4) {
        d.lo = parse_int(sx.list[2].atom, sx.list[2].pos);
        d.hi = parse_int(sx.list[3].atom, sx.list[3].pos);
        if (*d.lo > *d.hi) fail_at("empty bounds for '" + d.name + "'", sx.pos);
      }
      prob.decls.push_back(std::move(d));
      return;
    }
    if (h == "table") {
      if (sx.list.size() < 3 || !sx.list[1].is_atom ||
          !is_identifier(sx.list[1].atom))
        fail_at("'table' expects (table T csv \"path\") or (table T (rows...))",
                sx.pos);
      std::string name = sx.list[1].atom;
      if (prob.find_table(name))
        fail_at("duplicate table '" + name + "'", sx.list[1].pos);
      TablePtr t;
      if (sx.list[2].is_atom && sx.list[2].atom == "csv") {
        if (sx.list.size() != 4 || !sx.list[3].is_string)
          fail_at("'table ... csv' expects a quoted path", sx.pos);
        std::string path = sx.list[3].atom;
        if (!path.empty() && path[0] != '/') path = base_dir + "/" + path;
        t = ingest_csv(path, name);
      } else if (!sx.list[2].is_atom && sx.list.size() == 3) {
        std::vector<TermPtr> rows;
        for (const Sx& rsx : sx.list[2].list) {
          std::vector<TermPtr> cells;
          if (rsx.is_atom) {
            cells.push_back(parse_cell(rsx.atom, rsx.pos));
          } else {
            for (const Sx& csx : rsx.list) {
              if (!csx.is_atom) fail_at("table cell must be atomic", csx.pos);
              cells.push_back(parse_cell(csx.atom, csx.pos));
            }
          }
          if (cells.empty()) fail_at("empty table row", rsx.pos);
          rows.push_back(row_from_cells(std::move(cells), rsx.pos));
        }
        if (rows.empty()) fail_at("input table '" + name + "' has no rows", sx.pos);
        t = tb_input(name, std::move(rows), sx.pos);
      } else {
        fail_at("malformed 'table' form", sx.pos);
      }
      prob.tables.emplace_back(name, t);
      return;
    }
    if (h == "assert") {
      if (sx.list.size() != 2) fail_at("'assert' expects one formula", sx.pos);
      FormulaPtr f = formula(sx.list[1]);
      prob.assertion = (prob.assertion->kind == Formula::Kind::True)
                           ? f
                           : f_and(prob.assertion, f, sx.pos);
      return;
    }
    if (h == "minimize" || h == "maximize") {
      if (sx.list.size() != 2) fail_at("'" + h + "' expects one term", sx.pos);
      if (prob.objective) fail_at("objective already set", sx.pos);
      prob.objective = Objective{h == "maximize", term(sx.list[1])};
      return;
    }
    fail_at("unknown top-level form '" + h + "'", sx.pos);
  }
};

// ---- reference validation ---------------------------------------------------

void check_term_refs(const SourceProblem& p, const TermPtr& t,
                     std::set<std::string>& bound);
void check_table_refs(const SourceProblem& p, const TablePtr& d,
                      std::set<std::string>& bound);

void check_formula_refs(const SourceProblem& p, const FormulaPtr& f,
                        std::set<std::string>& bound) {
  switch (f->kind) {
    case Formula::Kind::True: return;
    case Formula::Kind::Le:
      check_term_refs(p, f->lhs, bound);
      check_term_refs(p, f->rhs, bound);
      return;
    case Formula::Kind::Not: check_formula_refs(p, f->f, bound); return;
    case Formula::Kind::Or:
      check_formula_refs(p, f->f, bound);
      check_formula_refs(p, f->g, bound);
      return;
    case Formula::Kind::Exists: check_table_refs(p, f->table, bound); return;
  }
}

void check_term_refs(const SourceProblem& p, const TermPtr& t,
                     std::set<std::string>& bound) {
  switch (t->kind) {
    case Term::Kind::Const: return;
    case Term::Kind::Var:
      if (!bound.count(t->var) && !p.find_decl(t->var))
        fail_at("undeclared identifier '" + t->var + "'", t->pos);
      return;
    case Term::Kind::Add:
    case Term::Kind::Pair:
      check_term_refs(p, t->a, bound);
      check_term_refs(p, t->b, bound);
      return;
    case Term::Kind::Mul:
    case Term::Kind::Fst:
    case Term::Kind::Snd: check_term_refs(p, t->a, bound); return;
  }
}

void check_table_refs(const SourceProblem& p, const TablePtr& d,
                      std::set<std::string>& bound) {
  switch (d->kind) {
    case Table::Kind::Input:
      for (auto& r : d->rows) check_term_refs(p, r, bound);
      return;
    case Table::Kind::Sel: {
      check_table_refs(p, d->left, bound);
      bool fresh = bound.insert(d->binder).second;
      check_formula_refs(p, d->cond, bound);
      if (fresh) bound.erase(d->binder);
      return;
    }
    case Table::Kind::Prod:
    case Table::Kind::Union:
      check_table_refs(p, d->left, bound);
      check_table_refs(p, d->right, bound);
      return;
  }
}

// ---- cell decomposition (for printing) --------------------------------------

bool cell_token(const TermPtr& t, std::string& out) {
  if (t->kind == Term::Kind::Const) {
    out = std::to_string(t->value);
    return true;
  }
  if (t->kind == Term::Kind::Var) {
    out = "?" + t->var;
    return true;
  }
  if (t->kind == Term::Kind::Add && t->a->kind == Term::Kind::Var &&
      t->b->kind == Term::Kind::Const) {
    Int c = t->b->value;
    out = "?" + t->a->var + (c >= 0 ? "+" : "") + std::to_string(c);
    return true;
  }
  return false;
}

void flatten_row(const TermPtr& t, std::vector<TermPtr>& out) {
  if (t->kind == Term::Kind::Pair) {
    out.push_back(t->a);
    flatten_row(t->b, out);
  } else {
    out.push_back(t);
  }
}

}  // namespace

SourceProblem parse(const std::string& text, const std::string& base_dir) {
  Lexer lx(text);
  Builder b;
  b.base_dir = base_dir;
  b.prob.assertion = f_true();
  for (const Sx& sx : lx.read_all()) b.top(sx);
  std::set<std::string> bound;
  check_formula_refs(b.prob, b.prob.assertion, bound);
  for (auto& [name, t] : b.prob.tables) check_table_refs(b.prob, t, bound);
  if (b.prob.objective) check_term_refs(b.prob, b.prob.objective->term, bound);
  return std::move(b.prob);
}

static TablePtr csv_from_stream(std::istream& in, const std::string& name,
                                const std::string& what) {
  std::vector<TermPtr> rows;
  std::string line;
  int lineno = 0;
  size_t arity = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string stripped;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) stripped += c;
    if (stripped.empty() || stripped[0] == '#') continue;
    std::vector<TermPtr> cells;
    std::stringstream ss(stripped);
    std::string tok;
    while (std::getline(ss, tok, ','))
      cells.push_back(parse_cell(tok, SrcPos{lineno, 1}));
    if (stripped.back() == ',' || cells.empty())
      throw Error(what + ":" + std::to_string(lineno) + ": empty cell");
    if (arity == 0) arity = cells.size();
    if (cells.size() != arity)
      throw Error(what + ":" + std::to_string(lineno) + ": ragged row (arity " +
                  std::to_string(cells.size()) + ", expected " +
                  std::to_string(arity) + ")");
    rows.push_back(row_from_cells(std::move(cells), SrcPos{lineno, 1}));
  }
  if (rows.empty()) throw Error(what + ": table has no rows");
  return tb_input(name, std::move(rows), {});
}

TablePtr ingest_csv(const std::string& path, const std::string& name) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return csv_from_stream(in, name, path);
}

TablePtr ingest_csv_text(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  return csv_from_stream(in, name, "<csv>");
}

std::string print_problem(const SourceProblem& p) {
  std::ostringstream os;
  for (auto& d : p.decls) {
    os << "(declare-int " << d.name;
    if (d.lo) os << " " << *d.lo << " " << *d.hi;
    os << ")\n";
  }
  for (auto& [name, t] : p.tables) {
    os << "(table " << name << " (";
    for (size_t i = 0; i < t->rows.size(); i++) {
      if (i) os << " ";
      std::vector<TermPtr> cells;
      flatten_row(t->rows[i], cells);
      os << "(";
      for (size_t j = 0; j < cells.size(); j++) {
        std::string tok;
        if (!cell_token(cells[j], tok))
          throw Error("table row is not in cell-literal form");
        os << (j ? " " : "") << tok;
      }
      os << ")";
    }
    os << "))\n";
  }
  if (p.assertion->kind != Formula::Kind::True)
    os << "(assert " << to_string(p.assertion) << ")\n";
  if (p.objective)
    os << (p.objective->maximize ? "(maximize " : "(minimize ")
       << to_string(p.objective->term) << ")\n";
  return os.str();
}

}  // namespace dz

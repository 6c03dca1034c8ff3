#include "dz/ast.hpp"

#include <sstream>

namespace dz {

DType DType::pair(DType l, DType r) {
  DType t;
  t.node_ = std::make_shared<Node>(Node{std::move(l), std::move(r)});
  return t;
}

const DType& DType::left() const {
  if (!node_) throw Error("left() on int type");
  return node_->l;
}

const DType& DType::right() const {
  if (!node_) throw Error("right() on int type");
  return node_->r;
}

int DType::width() const {
  if (is_int()) return 1;
  return node_->l.width() + node_->r.width();
}

bool DType::operator==(const DType& o) const {
  if (is_int() || o.is_int()) return is_int() == o.is_int();
  return node_->l == o.node_->l && node_->r == o.node_->r;
}

std::string DType::str() const {
  if (is_int()) return "int";
  return "(" + node_->l.str() + " * " + node_->r.str() + ")";
}

// ---- constructors ----------------------------------------------------------

TermPtr t_const(Int v, SrcPos pos) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Const;
  t->value = v;
  t->pos = pos;
  return t;
}

TermPtr t_var(std::string name, SrcPos pos) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Var;
  t->var = std::move(name);
  t->pos = pos;
  return t;
}

static TermPtr t_node(Term::Kind k, TermPtr a, TermPtr b, SrcPos pos) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->a = std::move(a);
  t->b = std::move(b);
  t->pos = pos;
  return t;
}

TermPtr t_add(TermPtr a, TermPtr b, SrcPos pos) {
  return t_node(Term::Kind::Add, std::move(a), std::move(b), pos);
}

TermPtr t_mul(Int k, TermPtr t, SrcPos pos) {
  auto n = t_node(Term::Kind::Mul, std::move(t), nullptr, pos);
  const_cast<Term*>(n.get())->value = k;
  return n;
}

TermPtr t_pair(TermPtr a, TermPtr b, SrcPos pos) {
  return t_node(Term::Kind::Pair, std::move(a), std::move(b), pos);
}

TermPtr t_fst(TermPtr t, SrcPos pos) {
  return t_node(Term::Kind::Fst, std::move(t), nullptr, pos);
}

TermPtr t_snd(TermPtr t, SrcPos pos) {
  return t_node(Term::Kind::Snd, std::move(t), nullptr, pos);
}

FormulaPtr f_true() {
  static FormulaPtr t = [] {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::True;
    return f;
  }();
  return t;
}

FormulaPtr f_le(TermPtr a, TermPtr b, SrcPos pos) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Le;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  f->pos = pos;
  return f;
}

FormulaPtr f_not(FormulaPtr g, SrcPos pos) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Not;
  f->f = std::move(g);
  f->pos = pos;
  return f;
}

FormulaPtr f_or(FormulaPtr a, FormulaPtr b, SrcPos pos) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Or;
  f->f = std::move(a);
  f->g = std::move(b);
  f->pos = pos;
  return f;
}

FormulaPtr f_exists(TablePtr d, SrcPos pos) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Exists;
  f->table = std::move(d);
  f->pos = pos;
  return f;
}

FormulaPtr f_and(FormulaPtr a, FormulaPtr b, SrcPos pos) {
  return f_not(f_or(f_not(std::move(a), pos), f_not(std::move(b), pos), pos), pos);
}

FormulaPtr f_eq(TermPtr a, TermPtr b, SrcPos pos) {
  return f_and(f_le(a, b, pos), f_le(b, a, pos), pos);
}

TablePtr tb_input(std::string name, std::vector<TermPtr> rows, SrcPos pos) {
  auto d = std::make_shared<Table>();
  d->kind = Table::Kind::Input;
  d->name = std::move(name);
  d->rows = std::move(rows);
  d->pos = pos;
  return d;
}

TablePtr tb_sel(std::string binder, FormulaPtr cond, TablePtr t, SrcPos pos) {
  auto d = std::make_shared<Table>();
  d->kind = Table::Kind::Sel;
  d->binder = std::move(binder);
  d->cond = std::move(cond);
  d->left = std::move(t);
  d->pos = pos;
  return d;
}

static TablePtr tb_node(Table::Kind k, TablePtr a, TablePtr b, SrcPos pos) {
  auto d = std::make_shared<Table>();
  d->kind = k;
  d->left = std::move(a);
  d->right = std::move(b);
  d->pos = pos;
  return d;
}

TablePtr tb_prod(TablePtr a, TablePtr b, SrcPos pos) {
  return tb_node(Table::Kind::Prod, std::move(a), std::move(b), pos);
}

TablePtr tb_union(TablePtr a, TablePtr b, SrcPos pos) {
  return tb_node(Table::Kind::Union, std::move(a), std::move(b), pos);
}

// ---- structural equality ----------------------------------------------------

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Const: return a->value == b->value;
    case Term::Kind::Var: return a->var == b->var;
    case Term::Kind::Mul: return a->value == b->value && equal(a->a, b->a);
    case Term::Kind::Fst:
    case Term::Kind::Snd: return equal(a->a, b->a);
    case Term::Kind::Add:
    case Term::Kind::Pair: return equal(a->a, b->a) && equal(a->b, b->b);
  }
  return false;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::True: return true;
    case Formula::Kind::Le: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    case Formula::Kind::Not: return equal(a->f, b->f);
    case Formula::Kind::Or: return equal(a->f, b->f) && equal(a->g, b->g);
    case Formula::Kind::Exists: return equal(a->table, b->table);
  }
  return false;
}

bool equal(const TablePtr& a, const TablePtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Table::Kind::Input: {
      if (a->rows.size() != b->rows.size()) return false;
      for (size_t i = 0; i < a->rows.size(); i++)
        if (!equal(a->rows[i], b->rows[i])) return false;
      return true;
    }
    case Table::Kind::Sel:
      return a->binder == b->binder && equal(a->cond, b->cond) &&
             equal(a->left, b->left);
    case Table::Kind::Prod:
    case Table::Kind::Union:
      return equal(a->left, b->left) && equal(a->right, b->right);
  }
  return false;
}

// ---- printing --------------------------------------------------------------

static void print(std::ostream& os, const TermPtr& t);
static void print(std::ostream& os, const FormulaPtr& f);
static void print(std::ostream& os, const TablePtr& d);

static void print(std::ostream& os, const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Const: os << t->value; break;
    case Term::Kind::Var: os << t->var; break;
    case Term::Kind::Add:
      os << "(+ ";
      print(os, t->a);
      os << " ";
      print(os, t->b);
      os << ")";
      break;
    case Term::Kind::Mul:
      os << "(* " << t->value << " ";
      print(os, t->a);
      os << ")";
      break;
    case Term::Kind::Pair:
      os << "(pair ";
      print(os, t->a);
      os << " ";
      print(os, t->b);
      os << ")";
      break;
    case Term::Kind::Fst:
      os << "(fst ";
      print(os, t->a);
      os << ")";
      break;
    case Term::Kind::Snd:
      os << "(snd ";
      print(os, t->a);
      os << ")";
      break;
  }
}

static void print(std::ostream& os, const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True: os << "true"; break;
    case Formula::Kind::Le:
      os << "(<= ";
      print(os, f->lhs);
      os << " ";
      print(os, f->rhs);
      os << ")";
      break;
    case Formula::Kind::Not:
      os << "(not ";
      print(os, f->f);
      os << ")";
      break;
    case Formula::Kind::Or:
      os << "(or ";
      print(os, f->f);
      os << " ";
      print(os, f->g);
      os << ")";
      break;
    case Formula::Kind::Exists:
      os << "(exists ";
      print(os, f->table);
      os << ")";
      break;
  }
}

static void print(std::ostream& os, const TablePtr& d) {
  switch (d->kind) {
    case Table::Kind::Input:
      if (!d->name.empty()) {
        os << d->name;
      } else {
        os << "(table- (";
        for (size_t i = 0; i < d->rows.size(); i++) {
          if (i) os << " ";
          print(os, d->rows[i]);
        }
        os << "))";
      }
      break;
    case Table::Kind::Sel:
      os << "(sel " << d->binder << " ";
      print(os, d->cond);
      os << " ";
      print(os, d->left);
      os << ")";
      break;
    case Table::Kind::Prod:
      os << "(prod ";
      print(os, d->left);
      os << " ";
      print(os, d->right);
      os << ")";
      break;
    case Table::Kind::Union:
      os << "(union ";
      print(os, d->left);
      os << " ";
      print(os, d->right);
      os << ")";
      break;
  }
}

std::string to_string(const TermPtr& t) {
  std::ostringstream os;
  print(os, t);
  return os.str();
}

std::string to_string(const FormulaPtr& f) {
  std::ostringstream os;
  print(os, f);
  return os.str();
}

std::string to_string(const TablePtr& d) {
  std::ostringstream os;
  print(os, d);
  return os.str();
}

// ---- substitution ----------------------------------------------------------

TermPtr substitute(const TermPtr& t, const std::string& name, const TermPtr& repl) {
  switch (t->kind) {
    case Term::Kind::Const: return t;
    case Term::Kind::Var: return t->var == name ? repl : t;
    case Term::Kind::Add: {
      auto a = substitute(t->a, name, repl);
      auto b = substitute(t->b, name, repl);
      return (a == t->a && b == t->b) ? t : t_add(a, b, t->pos);
    }
    case Term::Kind::Mul: {
      auto a = substitute(t->a, name, repl);
      return a == t->a ? t : t_mul(t->value, a, t->pos);
    }
    case Term::Kind::Pair: {
      auto a = substitute(t->a, name, repl);
      auto b = substitute(t->b, name, repl);
      return (a == t->a && b == t->b) ? t : t_pair(a, b, t->pos);
    }
    case Term::Kind::Fst: {
      auto a = substitute(t->a, name, repl);
      return a == t->a ? t : t_fst(a, t->pos);
    }
    case Term::Kind::Snd: {
      auto a = substitute(t->a, name, repl);
      return a == t->a ? t : t_snd(a, t->pos);
    }
  }
  return t;
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& name, const TermPtr& repl) {
  switch (f->kind) {
    case Formula::Kind::True: return f;
    case Formula::Kind::Le: {
      auto a = substitute(f->lhs, name, repl);
      auto b = substitute(f->rhs, name, repl);
      return (a == f->lhs && b == f->rhs) ? f : f_le(a, b, f->pos);
    }
    case Formula::Kind::Not: {
      auto g = substitute(f->f, name, repl);
      return g == f->f ? f : f_not(g, f->pos);
    }
    case Formula::Kind::Or: {
      auto a = substitute(f->f, name, repl);
      auto b = substitute(f->g, name, repl);
      return (a == f->f && b == f->g) ? f : f_or(a, b, f->pos);
    }
    case Formula::Kind::Exists: {
      auto d = substitute(f->table, name, repl);
      return d == f->table ? f : f_exists(d, f->pos);
    }
  }
  return f;
}

TablePtr substitute(const TablePtr& d, const std::string& name, const TermPtr& repl) {
  switch (d->kind) {
    case Table::Kind::Input: {
      std::vector<TermPtr> rows;
      bool changed = false;
      rows.reserve(d->rows.size());
      for (auto& r : d->rows) {
        auto s = substitute(r, name, repl);
        changed |= (s != r);
        rows.push_back(s);
      }
      return changed ? tb_input(d->name, std::move(rows), d->pos) : d;
    }
    case Table::Kind::Sel: {
      auto inner = substitute(d->left, name, repl);
      // the binder shadows `name` inside the condition
      auto cond = d->binder == name ? d->cond : substitute(d->cond, name, repl);
      return (inner == d->left && cond == d->cond)
                 ? d
                 : tb_sel(d->binder, cond, inner, d->pos);
    }
    case Table::Kind::Prod:
    case Table::Kind::Union: {
      auto a = substitute(d->left, name, repl);
      auto b = substitute(d->right, name, repl);
      if (a == d->left && b == d->right) return d;
      return d->kind == Table::Kind::Prod ? tb_prod(a, b, d->pos)
                                          : tb_union(a, b, d->pos);
    }
  }
  return d;
}

// ---- source problems -------------------------------------------------------

const VarDecl* SourceProblem::find_decl(const std::string& name) const {
  for (auto& d : decls)
    if (d.name == name) return &d;
  return nullptr;
}

TablePtr SourceProblem::find_table(const std::string& name) const {
  for (auto& [n, t] : tables)
    if (n == name) return t;
  return nullptr;
}

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow in +");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in *");
  return r;
}

}  // namespace dz

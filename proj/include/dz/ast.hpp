#ifndef DZ_AST_HPP
#define DZ_AST_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dz {

using Int = std::int64_t;

struct SrcPos {
  int line = 0;
  int col = 0;
};

/// Error raised by the frontend and the type checker. `pos` is meaningful
/// when line > 0.
class Error : public std::runtime_error {
 public:
  Error(std::string msg, SrcPos pos = {})
      : std::runtime_error(std::move(msg)), pos(pos) {}
  SrcPos pos;
};

/// Type of a term: int, or a pair of types. Table schemas are the same
/// structure applied to rows.
class DType {
 public:
  DType() = default;  // int
  static DType integer() { return DType(); }
  static DType pair(DType l, DType r);

  bool is_int() const { return node_ == nullptr; }
  bool is_pair() const { return node_ != nullptr; }
  const DType& left() const;
  const DType& right() const;
  int width() const;  // number of int components when flattened
  bool operator==(const DType& o) const;
  bool operator!=(const DType& o) const { return !(*this == o); }
  std::string str() const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

struct DType::Node {
  DType l, r;
};

struct Term;
struct Formula;
struct Table;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;
using TablePtr = std::shared_ptr<const Table>;

struct Term {
  enum class Kind { Const, Var, Add, Mul, Pair, Fst, Snd };
  Kind kind;
  Int value = 0;        // Const payload, Mul coefficient
  std::string var;      // Var payload
  TermPtr a, b;         // children
  SrcPos pos;
};

struct Formula {
  enum class Kind { True, Le, Not, Or, Exists };
  Kind kind;
  TermPtr lhs, rhs;     // Le
  FormulaPtr f, g;      // Not (f), Or (f, g)
  TablePtr table;       // Exists
  SrcPos pos;
};

struct Table {
  enum class Kind { Input, Sel, Prod, Union };
  Kind kind;
  std::string name;              // Input: source name (may be empty)
  std::vector<TermPtr> rows;     // Input
  std::string binder;            // Sel
  FormulaPtr cond;               // Sel
  TablePtr left, right;          // Sel uses left; Prod/Union use both
  SrcPos pos;
};

// ---- constructors ----------------------------------------------------------

TermPtr t_const(Int v, SrcPos pos = {});
TermPtr t_var(std::string name, SrcPos pos = {});
TermPtr t_add(TermPtr a, TermPtr b, SrcPos pos = {});
TermPtr t_mul(Int k, TermPtr t, SrcPos pos = {});
TermPtr t_pair(TermPtr a, TermPtr b, SrcPos pos = {});
TermPtr t_fst(TermPtr t, SrcPos pos = {});
TermPtr t_snd(TermPtr t, SrcPos pos = {});

FormulaPtr f_true();
FormulaPtr f_le(TermPtr a, TermPtr b, SrcPos pos = {});
FormulaPtr f_not(FormulaPtr f, SrcPos pos = {});
FormulaPtr f_or(FormulaPtr a, FormulaPtr b, SrcPos pos = {});
FormulaPtr f_exists(TablePtr d, SrcPos pos = {});

/// Derived forms, desugared into the core grammar {<=, not, or}.
FormulaPtr f_and(FormulaPtr a, FormulaPtr b, SrcPos pos = {});
FormulaPtr f_eq(TermPtr a, TermPtr b, SrcPos pos = {});

TablePtr tb_input(std::string name, std::vector<TermPtr> rows, SrcPos pos = {});
TablePtr tb_sel(std::string binder, FormulaPtr cond, TablePtr d, SrcPos pos = {});
TablePtr tb_prod(TablePtr a, TablePtr b, SrcPos pos = {});
TablePtr tb_union(TablePtr a, TablePtr b, SrcPos pos = {});

// ---- structural equality and printing --------------------------------------

bool equal(const TermPtr& a, const TermPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);
bool equal(const TablePtr& a, const TablePtr& b);

std::string to_string(const TermPtr& t);
std::string to_string(const FormulaPtr& f);
std::string to_string(const TablePtr& d);

/// Substitute `name` with `repl` throughout `f` / `d` / `t`. Selection
/// binders shadow: substitution stops below a binder of the same name.
TermPtr substitute(const TermPtr& t, const std::string& name, const TermPtr& repl);
FormulaPtr substitute(const FormulaPtr& f, const std::string& name, const TermPtr& repl);
TablePtr substitute(const TablePtr& d, const std::string& name, const TermPtr& repl);

// ---- source problems -------------------------------------------------------

struct VarDecl {
  std::string name;
  std::optional<Int> lo, hi;
  SrcPos pos;
};

struct Objective {
  bool maximize = true;
  TermPtr term;
};

struct SourceProblem {
  std::vector<VarDecl> decls;
  std::vector<std::pair<std::string, TablePtr>> tables;  // Input tables
  FormulaPtr assertion;  // conjunction of all asserts; f_true() if none
  std::optional<Objective> objective;

  const VarDecl* find_decl(const std::string& name) const;
  TablePtr find_table(const std::string& name) const;
};

/// Checked 64-bit arithmetic; throws Error on overflow.
Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);

}  // namespace dz

#endif

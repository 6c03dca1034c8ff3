#ifndef DZ_EVAL_HPP
#define DZ_EVAL_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dz/ast.hpp"

namespace dz {

/// Concrete value of a term: an integer or a pair of values.
class Value {
 public:
  static Value integer(Int v) {
    Value x;
    x.is_int_ = true;
    x.i_ = v;
    return x;
  }
  static Value pair(Value a, Value b) {
    Value x;
    x.is_int_ = false;
    x.a_ = std::make_shared<Value>(std::move(a));
    x.b_ = std::make_shared<Value>(std::move(b));
    return x;
  }
  bool is_int() const { return is_int_; }
  Int as_int() const {
    if (!is_int_) throw Error("pair value used as int");
    return i_;
  }
  const Value& left() const { return *a_; }
  const Value& right() const { return *b_; }
  bool operator==(const Value& o) const;
  std::string str() const;

 private:
  bool is_int_ = true;
  Int i_ = 0;
  std::shared_ptr<Value> a_, b_;
};

/// Assignment of integers to (free) variables.
using Assignment = std::map<std::string, Int>;

/// Direct evaluation of terms, tables, and formulas under an assignment.
/// Tables evaluate to concrete row lists; (exists D) means D is nonempty.
/// Selection binders are handled internally; every other variable must be
/// present in the assignment.
Value eval_term(const TermPtr& t, const Assignment& a);
std::vector<Value> eval_table(const TablePtr& d, const Assignment& a);
bool eval_formula(const FormulaPtr& f, const Assignment& a);

}  // namespace dz

#endif

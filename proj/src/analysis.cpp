#include "dz/analysis.hpp"

#include <algorithm>

namespace dz {

int rank(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True: return 0;
    case Formula::Kind::Le: return 0;
    case Formula::Kind::Not: return rank(f->f);
    case Formula::Kind::Or: return std::max(rank(f->f), rank(f->g));
    case Formula::Kind::Exists: return rank(f->table);
  }
  return 0;
}

int rank(const TablePtr& d) {
  switch (d->kind) {
    case Table::Kind::Input: return 1;
    case Table::Kind::Sel: return rank(d->cond) + rank(d->left);
    case Table::Kind::Prod: return rank(d->left) + rank(d->right);
    case Table::Kind::Union: return std::max(rank(d->left), rank(d->right));
  }
  return 0;
}

namespace {

bool exists_positive_t(const TablePtr& d, bool odd);

bool exists_positive_f(const FormulaPtr& f, bool odd) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::Le: return true;
    case Formula::Kind::Not: return exists_positive_f(f->f, !odd);
    case Formula::Kind::Or:
      return exists_positive_f(f->f, odd) && exists_positive_f(f->g, odd);
    case Formula::Kind::Exists:
      if (odd) return false;
      return exists_positive_t(f->table, odd);
  }
  return true;
}

bool exists_positive_t(const TablePtr& d, bool odd) {
  switch (d->kind) {
    case Table::Kind::Input: return true;
    case Table::Kind::Sel:
      return exists_positive_f(d->cond, odd) && exists_positive_t(d->left, odd);
    case Table::Kind::Prod:
    case Table::Kind::Union:
      return exists_positive_t(d->left, odd) && exists_positive_t(d->right, odd);
  }
  return true;
}

}  // namespace

bool is_existential(const FormulaPtr& f) { return exists_positive_f(f, false); }

}  // namespace dz

#pragma once

// Degree-indexed lower bounds for root discriminants, and the lookup that
// turns a root-discriminant upper bound into a degree bound.

#include "galcert/bounds.hpp"

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace galcert {

class TableError : public std::runtime_error {
 public:
  TableError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct MinorationRow {
  int degree;
  Rational lower_bound;
  bool operator==(const MinorationRow&) const = default;
};

// Every field of the class with degree >= row.degree has root discriminant
// >= row.lower_bound. Untabulated degrees inherit from the row below.
class MinorationTable {
 public:
  MinorationTable() = default;
  MinorationTable(std::vector<MinorationRow> rows, std::string source, std::string field_class,
                  std::string transcribed);

  const std::vector<MinorationRow>& rows() const { return rows_; }
  const std::string& source() const { return source_; }
  const std::string& field_class() const { return field_class_; }
  const std::string& transcribed() const { return transcribed_; }
  bool empty() const { return rows_.empty(); }

  // Bound valid for degree n, if some tabulated degree is <= n.
  std::optional<Rational> lower_bound(int n) const;

  // A copy keeping only the rows for which keep(row) holds.
  template <class Pred>
  MinorationTable filtered(Pred keep) const {
    std::vector<MinorationRow> kept;
    for (const auto& r : rows_)
      if (keep(r)) kept.push_back(r);
    return MinorationTable(std::move(kept), source_, field_class_, transcribed_);
  }

  std::string serialize() const;
  bool operator==(const MinorationTable&) const = default;

 private:
  std::vector<MinorationRow> rows_;
  std::string source_;
  std::string field_class_;
  std::string transcribed_;
};

// Strict reader: '#' lines carry metadata ("# key: value"); data lines are
// "degree<TAB>decimal". Throws TableError on the first problem.
MinorationTable load_table(std::istream& in);
MinorationTable load_table_file(const std::string& path);

struct DegreeBound {
  bool beyond_table = false;
  int degree = 0;  // meaningful when !beyond_table
  bool operator==(const DegreeBound&) const = default;
  std::string to_string() const { return beyond_table ? "beyond-table" : std::to_string(degree); }
};

// Largest degree n with lower_bound(n) < b strictly. For a totally imaginary
// table n is also rounded down to an even number, since such fields have
// even degree. Degrees below the first row are taken as admissible, and 0
// is returned for b <= 1. beyond_table when the table is empty or its last
// row is still admissible.
DegreeBound max_admissible_degree(const MinorationTable& t, const ExactBound& b);

}  // namespace galcert

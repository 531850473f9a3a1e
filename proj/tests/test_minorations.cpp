#include "galcert/minorations.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace galcert;

namespace {

const char* kSmall =
    "# source: test rows\n"
    "#   second source line\n"
    "# field-class: totally imaginary\n"
    "# transcribed: 2026-10-14\n"
    "2\t1.7\n"
    "4\t3.2\n"
    "8\t5.7\n"
    "10\t6.6\n";

MinorationTable small() {
  std::istringstream in(kSmall);
  return load_table(in);
}

int max_deg(const MinorationTable& t, const std::string& b) {
  DegreeBound d = max_admissible_degree(t, ExactBound(parse_rational(b)));
  EXPECT_FALSE(d.beyond_table) << b;
  return d.degree;
}

int line_of(const std::string& text) {
  std::istringstream in(text);
  try {
    load_table(in);
  } catch (const TableError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(Minorations, ParsesRowsAndMetadata) {
  MinorationTable t = small();
  ASSERT_EQ(t.rows().size(), 4u);
  EXPECT_EQ(t.rows()[1].degree, 4);
  EXPECT_EQ(t.rows()[1].lower_bound, parse_decimal("3.2"));
  EXPECT_EQ(t.source(), "test rows\nsecond source line");
  EXPECT_EQ(t.field_class(), "totally imaginary");
  EXPECT_EQ(t.transcribed(), "2026-10-14");
}

TEST(Minorations, GapsInheritFromBelow) {
  MinorationTable t = small();
  EXPECT_FALSE(t.lower_bound(1).has_value());
  EXPECT_EQ(*t.lower_bound(6), parse_decimal("3.2"));
  EXPECT_EQ(*t.lower_bound(7), parse_decimal("3.2"));
  EXPECT_EQ(*t.lower_bound(100), parse_decimal("6.6"));
}

TEST(Minorations, StrictInequalityAtRowValues) {
  MinorationTable t = small();
  EXPECT_EQ(max_deg(t, "3.2"), 2);      // lb(4) = 3.2 is not < 3.2
  EXPECT_EQ(max_deg(t, "3.2001"), 6);   // gap 5..7 inherits 3.2; next row at 8
  EXPECT_EQ(max_deg(t, "5.7"), 6);
  EXPECT_EQ(max_deg(t, "6"), 8);        // rounds 9 down to the even 8
  DegreeBound d = max_admissible_degree(t, ExactBound(Rational(7)));
  EXPECT_TRUE(d.beyond_table);
}

TEST(Minorations, EdgeCases) {
  MinorationTable t = small();
  EXPECT_EQ(max_deg(t, "1"), 0);
  EXPECT_EQ(max_deg(t, "1/2"), 0);
  // nothing tabulated below the first row: degrees under it stay admissible
  EXPECT_EQ(max_deg(t, "3/2"), 0);
  MinorationTable from4 = t.filtered([](const MinorationRow& r) { return r.degree >= 4; });
  EXPECT_EQ(max_deg(from4, "3"), 2);
  MinorationTable none = t.filtered([](const MinorationRow&) { return false; });
  EXPECT_TRUE(max_admissible_degree(none, ExactBound(Rational(3))).beyond_table);
}

TEST(Minorations, OddDegreesForOtherClasses) {
  std::istringstream in("# source: x\n# field-class: all\n2\t1.7\n5\t3.2\n");
  MinorationTable t = load_table(in);
  EXPECT_EQ(max_admissible_degree(t, ExactBound(Rational(3))).degree, 4);
}

TEST(Minorations, SerializeRoundTrip) {
  MinorationTable t = small();
  std::istringstream in(t.serialize());
  EXPECT_EQ(load_table(in), t);
}

TEST(Minorations, StrictReaderReportsLine) {
  std::string head = "# source: x\n# field-class: totally imaginary\n";
  EXPECT_EQ(line_of(head + "2 1.7\n"), 3);
  EXPECT_EQ(line_of(head + "2\t1.7\n2\t1.8\n"), 4);
  EXPECT_EQ(line_of(head + "4\t1.7\n2\t1.8\n"), 4);
  EXPECT_EQ(line_of(head + "2\t1.7\n4\t1.6\n"), 4);
  EXPECT_EQ(line_of(head + "2\tabc\n"), 3);
  EXPECT_EQ(line_of(head + "x\t1.7\n"), 3);
  EXPECT_EQ(line_of(head + "2\t0.9\n"), 3);
  EXPECT_NE(line_of("2\t1.7\n"), -1);
  EXPECT_THROW(load_table_file("/nonexistent/table.tsv"), std::exception);
}

TEST(Minorations, ShippedTableIsWellFormed) {
  MinorationTable t = load_table_file(GALCERT_TABLE_PATH);
  EXPECT_EQ(t.field_class(), "totally imaginary");
  EXPECT_FALSE(t.source().empty());
  ASSERT_GE(t.rows().size(), 2u);
  for (std::size_t i = 1; i < t.rows().size(); ++i) {
    EXPECT_LT(t.rows()[i - 1].degree, t.rows()[i].degree);
    EXPECT_LE(t.rows()[i - 1].lower_bound, t.rows()[i].lower_bound);
  }
}

// Larger bounds never allow fewer degrees.
TEST(MinorationsProperty, MonotoneLookup) {
  MinorationTable t = load_table_file(GALCERT_TABLE_PATH);
  int last = 0;
  for (int k = 100; k <= 2000; k += 7) {
    DegreeBound d = max_admissible_degree(t, ExactBound(Rational(k, 100)));
    if (d.beyond_table) break;
    EXPECT_GE(d.degree, last);
    EXPECT_EQ(d.degree % 2, 0);
    last = d.degree;
  }
}

// Dropping rows keeps lookups sound: the answer can only grow or become
// unbounded.
TEST(MinorationsProperty, DegradationIsSound) {
  MinorationTable t = load_table_file(GALCERT_TABLE_PATH);
  MinorationTable sparse = t.filtered([](const MinorationRow& r) { return r.degree % 8 == 0; });
  for (int k = 150; k <= 1800; k += 13) {
    ExactBound b(Rational(k, 100));
    DegreeBound full = max_admissible_degree(t, b), part = max_admissible_degree(sparse, b);
    if (full.beyond_table) {
      EXPECT_TRUE(part.beyond_table);
    } else if (!part.beyond_table) {
      EXPECT_GE(part.degree, full.degree);
    }
  }
}

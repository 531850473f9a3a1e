#include "galcert/minorations.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace galcert {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

MinorationTable::MinorationTable(std::vector<MinorationRow> rows, std::string source,
                                 std::string field_class, std::string transcribed)
    : rows_(std::move(rows)),
      source_(std::move(source)),
      field_class_(std::move(field_class)),
      transcribed_(std::move(transcribed)) {}

std::optional<Rational> MinorationTable::lower_bound(int n) const {
  std::optional<Rational> out;
  for (const auto& r : rows_) {
    if (r.degree > n) break;
    out = r.lower_bound;
  }
  return out;
}

std::string MinorationTable::serialize() const {
  std::ostringstream os;
  std::istringstream src(source_);
  std::string line;
  bool first = true;
  while (std::getline(src, line)) {
    os << (first ? "# source: " : "#   ") << line << "\n";
    first = false;
  }
  if (first) os << "# source: \n";
  os << "# field-class: " << field_class_ << "\n";
  if (!transcribed_.empty()) os << "# transcribed: " << transcribed_ << "\n";
  for (const auto& r : rows_) os << r.degree << "\t" << to_decimal_string(r.lower_bound) << "\n";
  return os.str();
}

MinorationTable load_table(std::istream& in) {
  std::vector<MinorationRow> rows;
  std::string source, field_class, transcribed;
  bool have_source = false, have_class = false;
  std::string* last_key = nullptr;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (trim(raw).empty()) continue;
    if (raw[0] == '#') {
      std::string body = raw.substr(1);
      std::string t = trim(body);
      auto colon = t.find(':');
      bool continuation = body.size() > 1 && body[0] == ' ' && body[1] == ' ';
      if (continuation && last_key) {
        *last_key += "\n" + t;
        continue;
      }
      last_key = nullptr;
      if (colon == std::string::npos) continue;
      std::string key = trim(t.substr(0, colon));
      std::string value = trim(t.substr(colon + 1));
      if (key == "source") {
        source = value;
        have_source = true;
        last_key = &source;
      } else if (key == "field-class") {
        field_class = value;
        have_class = true;
      } else if (key == "transcribed") {
        transcribed = value;
      }
      continue;
    }
    last_key = nullptr;
    auto tab = raw.find('\t');
    if (tab == std::string::npos) throw TableError(lineno, "expected degree<TAB>bound");
    std::string dtext = trim(raw.substr(0, tab));
    std::string btext = trim(raw.substr(tab + 1));
    int degree = 0;
    try {
      size_t used = 0;
      degree = std::stoi(dtext, &used);
      if (used != dtext.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw TableError(lineno, "malformed degree '" + dtext + "'");
    }
    if (degree < 2) throw TableError(lineno, "degree must be at least 2");
    Rational lb;
    try {
      lb = parse_decimal(btext);
    } catch (const std::invalid_argument&) {
      throw TableError(lineno, "malformed bound '" + btext + "'");
    }
    if (lb <= 1) throw TableError(lineno, "lower bound must exceed 1 at degree " + dtext);
    if (!rows.empty()) {
      if (degree == rows.back().degree) throw TableError(lineno, "duplicate degree " + dtext);
      if (degree < rows.back().degree)
        throw TableError(lineno, "degrees out of order at degree " + dtext);
      if (lb < rows.back().lower_bound)
        throw TableError(lineno, "non-monotone bound at degree " + dtext);
    }
    rows.push_back({degree, lb});
  }
  if (!have_source) throw TableError(lineno, "missing '# source:' metadata");
  if (!have_class) throw TableError(lineno, "missing '# field-class:' metadata");
  return MinorationTable(std::move(rows), source, field_class, transcribed);
}

MinorationTable load_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open table '" + path + "'");
  return load_table(in);
}

DegreeBound max_admissible_degree(const MinorationTable& t, const ExactBound& b) {
  // every field other than Q has root discriminant > 1
  if (compare(b, Rational(1)) != std::strong_ordering::greater) return {false, 0};
  const auto& rows = t.rows();
  if (rows.empty()) return {true, 0};
  bool even = t.field_class() == "totally imaginary";
  auto round = [&](int n) { return even && n % 2 != 0 ? n - 1 : n; };
  // rows is sorted by degree and lower bounds grow with the degree
  size_t j = rows.size();
  for (size_t i = 0; i < rows.size(); ++i)
    if (compare(b, rows[i].lower_bound) == std::strong_ordering::greater) j = i;
  if (j == rows.size()) return {false, std::max(0, round(rows[0].degree - 1))};
  if (j + 1 == rows.size()) return {true, 0};
  return {false, round(rows[j + 1].degree - 1)};
}

}  // namespace galcert

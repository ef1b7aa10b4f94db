// Table file format. Canonical form:
//
//   n=<order>
//   <n rows of n whitespace-separated labels in 1..n>
//
// On input the header is optional (the first data row fixes the order) and
// lines starting with '#' are comments. Writing always emits the canonical
// form, so read followed by write round-trips bit-exactly on canonical files.

#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qf/quasigroup.hpp"

namespace qf {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, int line, int column)
      : std::runtime_error("line " + std::to_string(line) +
                           (column > 0 ? ", column " + std::to_string(column) : std::string()) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Quasigroup read_table(std::istream& in) {
  std::vector<std::vector<int>> rows;
  int declared_n = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (declared_n < 0 && rows.empty() && line.compare(first, 2, "n=") == 0) {
      try {
        std::size_t used = 0;
        declared_n = std::stoi(line.substr(first + 2), &used);
        const auto rest = line.find_first_not_of(" \t\r", first + 2 + used);
        if (rest != std::string::npos) throw std::invalid_argument("trailing data");
      } catch (const std::exception&) {
        throw ParseError("malformed order header \"" + line + "\"", lineno, static_cast<int>(first) + 1);
      }
      if (declared_n < 1) throw ParseError("order must be >= 1", lineno, static_cast<int>(first) + 1);
      continue;
    }
    std::istringstream ls(line);
    std::vector<int> row;
    std::string tok;
    while (ls >> tok) {
      if (tok[0] == '#') break;
      try {
        std::size_t used = 0;
        row.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument("junk");
      } catch (const std::exception&) {
        throw ParseError("expected a label, got \"" + tok + "\"", lineno, static_cast<int>(row.size()) + 1);
      }
    }
    const int n = declared_n >= 0 ? declared_n : (rows.empty() ? static_cast<int>(row.size()) : static_cast<int>(rows.front().size()));
    if (static_cast<int>(row.size()) != n)
      throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n), lineno, 0);
    if (static_cast<int>(rows.size()) == n)
      throw ParseError("extra row: table already has " + std::to_string(n) + " rows", lineno, 0);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no table rows", lineno == 0 ? 1 : lineno, 0);
  const int n = declared_n >= 0 ? declared_n : static_cast<int>(rows.front().size());
  if (static_cast<int>(rows.size()) != n)
    throw ParseError("table has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(n), lineno, 0);
  return Quasigroup::from_rows(rows);
}

inline Quasigroup read_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_table(in);
}

inline void write_table(std::ostream& out, const Quasigroup& q) {
  const int n = q.order();
  out << "n=" << n << '\n';
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      if (y > 1) out << ' ';
      out << q.at(x, y);
    }
    out << '\n';
  }
}

inline std::string table_to_string(const Quasigroup& q) {
  std::ostringstream os;
  write_table(os, q);
  return os.str();
}

inline void write_table_file(const std::string& path, const Quasigroup& q) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  write_table(out, q);
}

}  // namespace qf

#pragma once

// Text export of unmarked formal sums as stable graphs with psi
// decorations, one term per line. The grammar is pinned in docs/EXPORT.md.

#include "bamboo/core.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bamboo {

inline constexpr const char* kExportHeader = "# bamboo-export 1";

class ExportParseError : public std::runtime_error {
 public:
  ExportParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

// half-edges of edge i (between vertices i and i+1)
inline int half_left(std::size_t i) { return 11 + 2 * int(i); }
inline int half_right(std::size_t i) { return 12 + 2 * int(i); }

inline std::string export_line(const Term& t, const Rational& c) {
  const Bamboo& b = t.bamboo;
  if (t.omega) throw std::invalid_argument("export: omega-marked terms have no stable-graph form");
  if (b.is_unit()) throw std::invalid_argument("export: the unit is not a class");
  const std::size_t n = b.size();
  std::vector<std::vector<int>> legs(n);
  std::vector<std::pair<int, int>> psi;  // half-edge or marking -> power
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex& v = b.vertices[i];
    auto add = [&](int h, int p) {
      legs[i].push_back(h);
      if (p > 0) psi.emplace_back(h, p);
    };
    if (i == 0 && b.left_leg) add(b.left_leg, v.left_psi);
    if (i > 0) add(half_right(i - 1), v.left_psi);
    if (i + 1 < n) add(half_left(i), v.right_psi);
    if (i + 1 == n && b.right_leg) add(b.right_leg, v.right_psi);
    if (v.extra_psi) add(b.extra_leg, *v.extra_psi);
    std::sort(legs[i].begin(), legs[i].end());
  }
  std::sort(psi.begin(), psi.end());
  std::ostringstream os;
  os << "QQ('" << to_fraction_string(c) << "') * decstrat(genera=[";
  for (std::size_t i = 0; i < n; ++i) os << (i ? "," : "") << b.vertices[i].genus;
  os << "], legs=[";
  for (std::size_t i = 0; i < n; ++i) {
    os << (i ? "," : "") << "[";
    for (std::size_t k = 0; k < legs[i].size(); ++k) os << (k ? "," : "") << legs[i][k];
    os << "]";
  }
  os << "], edges=[";
  for (std::size_t i = 0; i + 1 < n; ++i) os << (i ? "," : "") << "(" << half_left(i) << "," << half_right(i) << ")";
  os << "], psi={";
  for (std::size_t k = 0; k < psi.size(); ++k) os << (k ? "," : "") << psi[k].first << ":" << psi[k].second;
  os << "})";
  return os.str();
}

// Minimal cursor over one export line.
class LineCursor {
 public:
  LineCursor(const std::string& s, std::size_t line) : s_(s), line_(line) {}

  void expect(const std::string& lit) {
    if (s_.compare(pos_, lit.size(), lit) != 0) fail("expected '" + lit + "'");
    pos_ += lit.size();
  }
  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  long integer() {
    const std::size_t start = pos_;
    if (peek('-')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && s_[start] == '-')) fail("expected an integer");
    return std::stol(s_.substr(start, pos_ - start));
  }
  std::string until(char c) {
    const std::size_t end = s_.find(c, pos_);
    if (end == std::string::npos) fail(std::string("missing '") + c + "'");
    std::string out = s_.substr(pos_, end - pos_);
    pos_ = end;
    return out;
  }
  void end() {
    if (pos_ != s_.size()) fail("trailing characters");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ExportParseError(line_, what + " at column " + std::to_string(pos_ + 1));
  }

 private:
  const std::string& s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

template <class F>
void comma_list(LineCursor& c, char close, F&& item) {
  if (c.peek(close)) return;
  item();
  while (c.peek(',')) {
    c.expect(",");
    item();
  }
}

inline std::pair<Term, Rational> parse_export_line(const std::string& line, std::size_t lineno) {
  LineCursor c(line, lineno);
  c.expect("QQ('");
  Rational coeff;
  try {
    coeff = parse_fraction_string(c.until('\''));
  } catch (const std::exception& e) {
    c.fail(e.what());
  }
  c.expect("') * decstrat(genera=[");
  std::vector<int> genera;
  comma_list(c, ']', [&] { genera.push_back(int(c.integer())); });
  c.expect("], legs=[");
  std::vector<std::vector<int>> legs;
  comma_list(c, ']', [&] {
    c.expect("[");
    legs.emplace_back();
    comma_list(c, ']', [&] { legs.back().push_back(int(c.integer())); });
    c.expect("]");
  });
  c.expect("], edges=[");
  std::vector<std::pair<int, int>> edges;
  comma_list(c, ']', [&] {
    c.expect("(");
    const int a = int(c.integer());
    c.expect(",");
    const int b = int(c.integer());
    c.expect(")");
    edges.emplace_back(a, b);
  });
  c.expect("], psi={");
  std::map<int, int> psi;
  comma_list(c, '}', [&] {
    const int h = int(c.integer());
    c.expect(":");
    const int p = int(c.integer());
    if (p <= 0 || !psi.emplace(h, p).second) c.fail("bad psi entry");
  });
  c.expect("})");
  c.end();

  const std::size_t n = genera.size();
  if (n == 0 || legs.size() != n || edges.size() + 1 != n) c.fail("graph is not a chain");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (edges[i] != std::pair{half_left(i), half_right(i)}) c.fail("edges must be listed in chain order");
  auto power = [&](int h) {
    auto it = psi.find(h);
    return it == psi.end() ? 0 : it->second;
  };
  std::set<int> seen;
  Bamboo b;
  b.left_leg = b.right_leg = b.extra_leg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Vertex v{genera[i], 0, 0, std::nullopt};
    std::vector<int> marks;
    for (int h : legs[i]) {
      if (!seen.insert(h).second) c.fail("half-edge listed twice");
      if (h >= 1 && h <= 3)
        marks.push_back(h);
      else if (!((i > 0 && h == half_right(i - 1)) || (i + 1 < n && h == half_left(i))))
        c.fail("half-edge " + std::to_string(h) + " does not belong to vertex " + std::to_string(i));
    }
    if (i > 0) v.left_psi = power(half_right(i - 1));
    if (i + 1 < n) v.right_psi = power(half_left(i));
    std::size_t k = 0;
    if (i == 0 && k < marks.size()) {
      b.left_leg = marks[k];
      v.left_psi = power(marks[k++]);
    }
    if (i + 1 == n && k < marks.size()) {
      b.right_leg = marks[k];
      v.right_psi = power(marks[k++]);
    }
    if (k < marks.size()) {
      if (b.extra_leg != 0) c.fail("more than one leg on vertex sides");
      b.extra_leg = marks[k];
      v.extra_psi = power(marks[k++]);
    }
    if (k < marks.size()) c.fail("too many legs on vertex " + std::to_string(i));
    b.vertices.push_back(v);
  }
  for (const auto& [h, p] : psi)
    if (!seen.count(h)) c.fail("psi on unknown half-edge " + std::to_string(h));
  try {
    return {make_term(std::move(b)), coeff};
  } catch (const std::invalid_argument& e) {
    c.fail(e.what());
  }
}

}  // namespace detail

/// One line per term, in canonical term order, after a version header.
inline std::string export_admcycles(const FormalSum& s) {
  std::string out = std::string(kExportHeader) + "\n";
  for (const auto& [t, c] : s) out += detail::export_line(t, c) + "\n";
  return out;
}

/// Inverse of export_admcycles. Lines starting with '#' and blank lines are skipped.
inline FormalSum parse_admcycles(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t no = 0;
  FormalSum s;
  while (std::getline(in, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto [t, c] = detail::parse_export_line(line, no);
    if (s.coefficient(t) != 0) throw ExportParseError(no, "duplicate term");
    s.add(t, c);
  }
  return s;
}

}  // namespace bamboo

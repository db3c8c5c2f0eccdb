#pragma once

// Term algebra for chain-shaped ("bamboo") strata of compact type.
//
// A Bamboo is a row of vertices joined by single edges. Marked legs live
// either at the two ends of the row or, for at most one leg, on one vertex
// ("extra" leg). Every vertex carries psi powers on its left attachment,
// its right attachment and, if present, its extra leg. Left/right
// attachments are node branches, except at the ends where they are legs.
//
// All values are normalized on construction: one canonical orientation per
// unoriented chain, so structural equality is class equality of strata.

#include "bamboo/rational.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bamboo {

/// Leg label 1, 2 or 3; 0 means "no leg here".
using Leg = int;

enum class Profile : std::uint8_t {
  Unit = 0,          // the identity of the gluing product; no vertices
  TwoPointed = 1,    // leg 1 left end, leg 2 right end
  ThreePointed = 2,  // as TwoPointed plus leg 3 on one vertex
  OnePointed = 3,    // single leg 1 at the right end
  Tailed = 4,        // any other chain layout (e.g. leg 2 on an inner vertex)
};

inline const char* profile_name(Profile p) {
  switch (p) {
    case Profile::Unit: return "Unit";
    case Profile::TwoPointed: return "TwoPointed";
    case Profile::ThreePointed: return "ThreePointed";
    case Profile::OnePointed: return "OnePointed";
    case Profile::Tailed: return "Tailed";
  }
  return "?";
}

struct Vertex {
  int genus = 1;
  int left_psi = 0;
  int right_psi = 0;
  std::optional<int> extra_psi;  // present only on the vertex carrying the extra leg

  bool operator==(const Vertex&) const = default;
};

inline int compare_vertex(const Vertex& a, const Vertex& b) {
  if (a.genus != b.genus) return a.genus < b.genus ? -1 : 1;
  if (a.left_psi != b.left_psi) return a.left_psi < b.left_psi ? -1 : 1;
  if (a.right_psi != b.right_psi) return a.right_psi < b.right_psi ? -1 : 1;
  if (a.extra_psi.has_value() != b.extra_psi.has_value()) return a.extra_psi.has_value() ? 1 : -1;
  if (a.extra_psi && *a.extra_psi != *b.extra_psi) return *a.extra_psi < *b.extra_psi ? -1 : 1;
  return 0;
}

struct Bamboo {
  std::vector<Vertex> vertices;
  Leg left_leg = 1;
  Leg right_leg = 2;
  Leg extra_leg = 0;

  bool operator==(const Bamboo&) const = default;

  std::size_t size() const { return vertices.size(); }
  bool is_unit() const { return vertices.empty(); }

  bool has_left(std::size_t i) const { return i > 0 || left_leg != 0; }
  bool has_right(std::size_t i) const { return i + 1 < vertices.size() || right_leg != 0; }
  int valence(std::size_t i) const {
    return int(has_left(i)) + int(has_right(i)) + int(vertices[i].extra_psi.has_value());
  }

  std::optional<std::size_t> extra_index() const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i].extra_psi) return i;
    return std::nullopt;
  }

  int total_genus() const {
    int g = 0;
    for (const auto& v : vertices) g += v.genus;
    return g;
  }

  int num_legs() const { return int(left_leg != 0) + int(right_leg != 0) + int(extra_leg != 0); }

  Profile profile() const {
    if (vertices.empty()) return Profile::Unit;
    if (left_leg == 1 && right_leg == 2 && extra_leg == 0) return Profile::TwoPointed;
    if (left_leg == 1 && right_leg == 2 && extra_leg == 3) return Profile::ThreePointed;
    if (left_leg == 0 && right_leg == 1 && extra_leg == 0) return Profile::OnePointed;
    return Profile::Tailed;
  }
};

enum class OmegaKind : std::uint8_t { Irr = 0, SepOff = 1 };

/// Formal divisor multiplier sitting on one vertex: the non-separating
/// divisor (Irr) or the divisor splitting off an unmarked genus-h part.
struct OmegaMarker {
  OmegaKind kind = OmegaKind::Irr;
  int h = 0;  // only meaningful for SepOff
  std::size_t vertex = 0;

  bool operator==(const OmegaMarker&) const = default;
};

/// Kind of omega class without its position.
struct OmegaClass {
  OmegaKind kind = OmegaKind::Irr;
  int h = 0;
  bool operator==(const OmegaClass&) const = default;
};

inline bool omega_supported(const OmegaClass& w, int vertex_genus) {
  if (w.kind == OmegaKind::Irr) return vertex_genus >= 1;
  return w.h >= 1 && vertex_genus >= w.h;
}

struct Term {
  Bamboo bamboo;
  std::optional<OmegaMarker> omega;

  bool operator==(const Term&) const = default;
};

inline int compare_term(const Term& a, const Term& b) {
  const auto pa = static_cast<int>(a.bamboo.profile());
  const auto pb = static_cast<int>(b.bamboo.profile());
  if (pa != pb) return pa < pb ? -1 : 1;
  if (a.bamboo.left_leg != b.bamboo.left_leg) return a.bamboo.left_leg < b.bamboo.left_leg ? -1 : 1;
  if (a.bamboo.right_leg != b.bamboo.right_leg) return a.bamboo.right_leg < b.bamboo.right_leg ? -1 : 1;
  if (a.bamboo.extra_leg != b.bamboo.extra_leg) return a.bamboo.extra_leg < b.bamboo.extra_leg ? -1 : 1;
  if (a.bamboo.size() != b.bamboo.size()) return a.bamboo.size() < b.bamboo.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.bamboo.size(); ++i)
    if (int c = compare_vertex(a.bamboo.vertices[i], b.bamboo.vertices[i])) return c;
  if (a.omega.has_value() != b.omega.has_value()) return a.omega.has_value() ? 1 : -1;
  if (a.omega) {
    const auto& x = *a.omega;
    const auto& y = *b.omega;
    if (x.kind != y.kind) return x.kind < y.kind ? -1 : 1;
    if (x.h != y.h) return x.h < y.h ? -1 : 1;
    if (x.vertex != y.vertex) return x.vertex < y.vertex ? -1 : 1;
  }
  return 0;
}

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return compare_term(a, b) < 0; }
};

// ---------------------------------------------------------------------------
// validation and normalization

inline void check_bamboo(const Bamboo& b) {
  auto fail = [](const std::string& what) { throw std::invalid_argument("invalid bamboo: " + what); };
  if (b.vertices.empty()) {
    if (b.left_leg != 1 || b.right_leg != 2 || b.extra_leg != 0) fail("empty chain that is not the unit");
    return;
  }
  std::vector<Leg> labels;
  for (Leg l : {b.left_leg, b.right_leg, b.extra_leg}) {
    if (l < 0 || l > 3) fail("leg label out of range");
    if (l != 0) labels.push_back(l);
  }
  std::sort(labels.begin(), labels.end());
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != int(i) + 1) fail("leg labels must be 1..n without gaps");
  std::size_t extras = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& v = b.vertices[i];
    if (v.genus < 0) fail("negative genus");
    if (v.left_psi < 0 || v.right_psi < 0 || (v.extra_psi && *v.extra_psi < 0)) fail("negative psi power");
    if (!b.has_left(i) && v.left_psi != 0) fail("psi on a missing left attachment");
    if (!b.has_right(i) && v.right_psi != 0) fail("psi on a missing right attachment");
    if (v.extra_psi) ++extras;
    const int val = b.valence(i);
    if (2 * v.genus - 2 + val <= 0) fail("unstable vertex");
    if (v.genus == 0) {
      if (val != 3) fail("genus-0 vertex must have exactly three attachments");
      if (v.left_psi || v.right_psi || v.extra_psi.value_or(0)) fail("psi power on a genus-0 vertex");
    }
  }
  if (extras != (b.extra_leg != 0 ? 1u : 0u)) fail("extra leg count mismatch");
}

inline void check_term(const Term& t) {
  check_bamboo(t.bamboo);
  if (t.omega) {
    if (t.bamboo.is_unit()) throw std::invalid_argument("invalid term: omega marker on the unit");
    if (t.omega->vertex >= t.bamboo.size()) throw std::invalid_argument("invalid term: omega marker index");
    if (!omega_supported({t.omega->kind, t.omega->h}, t.bamboo.vertices[t.omega->vertex].genus))
      throw std::invalid_argument("invalid term: omega marker on a vertex of too small genus");
  }
}

namespace detail {

inline Term reversed(const Term& t) {
  Term r = t;
  auto& vs = r.bamboo.vertices;
  std::reverse(vs.begin(), vs.end());
  for (auto& v : vs) std::swap(v.left_psi, v.right_psi);
  std::swap(r.bamboo.left_leg, r.bamboo.right_leg);
  if (r.omega) r.omega->vertex = vs.size() - 1 - r.omega->vertex;
  return r;
}

// An extra leg sitting on an end vertex that has no end leg is an end leg.
inline void absorb_extra_at_ends(Bamboo& b) {
  if (b.vertices.empty() || b.extra_leg == 0) return;
  auto& first = b.vertices.front();
  auto& last = b.vertices.back();
  if (b.left_leg == 0 && first.extra_psi) {
    first.left_psi = *first.extra_psi;
    first.extra_psi.reset();
    b.left_leg = b.extra_leg;
    b.extra_leg = 0;
  } else if (b.right_leg == 0 && last.extra_psi) {
    last.right_psi = *last.extra_psi;
    last.extra_psi.reset();
    b.right_leg = b.extra_leg;
    b.extra_leg = 0;
  }
}

// An end vertex holding both an end leg and the extra leg is the same graph
// whichever of the two is called the end leg; the smaller label takes the end.
// A lone vertex with three legs gets them in increasing order.
inline void canonical_leg_slots(Bamboo& b) {
  if (b.vertices.empty() || b.extra_leg == 0) return;
  auto& first = b.vertices.front();
  auto& last = b.vertices.back();
  if (b.vertices.size() == 1 && first.extra_psi && b.left_leg != 0 && b.right_leg != 0) {
    std::array<std::pair<Leg, int>, 3> legs = {std::pair{b.left_leg, first.left_psi},
                                               std::pair{b.right_leg, first.right_psi},
                                               std::pair{b.extra_leg, *first.extra_psi}};
    std::sort(legs.begin(), legs.end());
    b.left_leg = legs[0].first;
    first.left_psi = legs[0].second;
    b.right_leg = legs[1].first;
    first.right_psi = legs[1].second;
    b.extra_leg = legs[2].first;
    first.extra_psi = legs[2].second;
    return;
  }
  if (first.extra_psi && b.left_leg != 0 && b.extra_leg < b.left_leg) {
    std::swap(b.left_leg, b.extra_leg);
    std::swap(first.left_psi, *first.extra_psi);
  } else if (last.extra_psi && b.right_leg != 0 && b.extra_leg < b.right_leg) {
    std::swap(b.right_leg, b.extra_leg);
    std::swap(last.right_psi, *last.extra_psi);
  }
}

inline int orientation_rank(const Bamboo& b) {
  // Single leg sitting at an end goes to the right; otherwise the smaller
  // label goes to the left end.
  if (b.num_legs() == 1 && b.extra_leg == 0) return b.right_leg != 0 ? 0 : 1;
  const int l = b.left_leg == 0 ? 9 : b.left_leg;
  const int r = b.right_leg == 0 ? 9 : b.right_leg;
  return l * 10 + r;
}

}  // namespace detail

/// Canonical form of a term: end-absorbed extra leg, canonical orientation.
inline Term normalize(Term t) {
  if (t.bamboo.vertices.empty()) return t;
  detail::absorb_extra_at_ends(t.bamboo);
  detail::canonical_leg_slots(t.bamboo);
  Term r = detail::reversed(t);
  const int a = detail::orientation_rank(t.bamboo);
  const int b = detail::orientation_rank(r.bamboo);
  if (b < a || (a == b && compare_term(r, t) < 0)) return r;
  return t;
}

inline int degree(const Bamboo& b) {
  if (b.vertices.empty()) return -1;
  int d = int(b.size()) - 1;
  for (const auto& v : b.vertices) d += v.left_psi + v.right_psi + v.extra_psi.value_or(0);
  return d;
}

inline int degree(const Term& t) { return degree(t.bamboo) + (t.omega ? 1 : 0); }

// ---------------------------------------------------------------------------
// formal sums

class FormalSum {
 public:
  using Map = std::map<Term, Rational, TermLess>;

  FormalSum() = default;
  explicit FormalSum(const Term& t, const Rational& c = Rational(1)) { add(t, c); }

  void add(const Term& t, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(t, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  FormalSum& operator+=(const FormalSum& o) {
    for (const auto& [t, c] : o.terms_) add(t, c);
    return *this;
  }
  FormalSum& operator-=(const FormalSum& o) {
    for (const auto& [t, c] : o.terms_) add(t, -c);
    return *this;
  }
  FormalSum& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [t, c] : terms_) c *= s;
    return *this;
  }

  friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }
  friend FormalSum operator-(FormalSum a, const FormalSum& b) { return a -= b; }
  friend FormalSum operator*(const Rational& s, FormalSum a) { return a *= s; }
  friend FormalSum operator-(FormalSum a) { return a *= Rational(-1); }

  bool operator==(const FormalSum& o) const { return terms_ == o.terms_; }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  Rational coefficient(const Term& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Common degree of all terms; nullopt when empty or inhomogeneous.
  std::optional<int> grade() const {
    std::optional<int> g;
    for (const auto& [t, c] : terms_) {
      const int d = degree(t);
      if (g && *g != d) return std::nullopt;
      g = d;
    }
    return g;
  }
  bool homogeneous() const { return empty() || grade().has_value(); }

  bool has_omega() const {
    for (const auto& [t, c] : terms_)
      if (t.omega) return true;
    return false;
  }

 private:
  Map terms_;
};

/// Linear extension of a term-level map producing formal sums.
template <class F>
FormalSum linear_map(const FormalSum& s, F&& f) {
  FormalSum out;
  for (const auto& [t, c] : s) {
    FormalSum img = f(t);
    for (const auto& [u, e] : img) out.add(u, c * e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// keys and reflection

namespace detail {
inline void put16(std::string& s, long v) {
  if (v < 0 || v > 0xffff) throw std::out_of_range("canonical key field out of range");
  s.push_back(char((v >> 8) & 0xff));
  s.push_back(char(v & 0xff));
}
}  // namespace detail

/// Injective, order-preserving byte encoding of a normalized term.
inline std::string canonical_key(const Term& t) {
  std::string k;
  const auto& b = t.bamboo;
  k.push_back(char(static_cast<int>(b.profile())));
  k.push_back(char(b.left_leg));
  k.push_back(char(b.right_leg));
  k.push_back(char(b.extra_leg));
  detail::put16(k, long(b.size()));
  for (const auto& v : b.vertices) {
    detail::put16(k, v.genus);
    detail::put16(k, v.left_psi);
    detail::put16(k, v.right_psi);
    k.push_back(char(v.extra_psi ? 1 : 0));
    detail::put16(k, v.extra_psi.value_or(0));
  }
  k.push_back(char(t.omega ? 1 : 0));
  if (t.omega) {
    k.push_back(char(static_cast<int>(t.omega->kind)));
    detail::put16(k, t.omega->h);
    detail::put16(k, long(t.omega->vertex));
  }
  return k;
}

/// Swap the labels of legs 1 and 2.
inline Term reflect(const Term& t) {
  if (t.bamboo.is_unit()) return t;
  if (t.bamboo.profile() == Profile::OnePointed)
    throw std::invalid_argument("reflect: one-pointed classes have no second leg");
  Term r = t;
  auto swap12 = [](Leg& l) {
    if (l == 1) l = 2;
    else if (l == 2) l = 1;
  };
  swap12(r.bamboo.left_leg);
  swap12(r.bamboo.right_leg);
  swap12(r.bamboo.extra_leg);
  return normalize(r);
}

inline FormalSum reflect(const FormalSum& s) {
  return linear_map(s, [](const Term& t) { return FormalSum(reflect(t)); });
}

// ---------------------------------------------------------------------------
// construction helpers

/// The identity of the gluing product (empty chain, legs 1 and 2 merged).
inline Term unit_term() { return Term{Bamboo{{}, 1, 2, 0}, std::nullopt}; }

inline Term make_term(Bamboo b, std::optional<OmegaMarker> w = std::nullopt) {
  Term t{std::move(b), w};
  t = normalize(std::move(t));
  check_term(t);
  return t;
}

/// Single vertex class psi_1^a psi_2^b on M(g,2).
inline Term single_vertex(int genus, int left_psi, int right_psi) {
  return make_term(Bamboo{{Vertex{genus, left_psi, right_psi, std::nullopt}}, 1, 2, 0});
}

/// The fundamental class of M(0,3) with legs 1,2 at the ends and leg 3 on it.
inline Term unit03() { return make_term(Bamboo{{Vertex{0, 0, 0, 0}}, 1, 2, 3}); }

/// Human-readable rendering used in diagnostics and test failure output.
inline std::string to_string(const Term& t) {
  if (t.bamboo.is_unit()) return "[unit]";
  std::ostringstream os;
  const auto& b = t.bamboo;
  if (b.left_leg) os << b.left_leg << ":";
  os << "(";
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& v = b.vertices[i];
    if (i) os << ")-(";
    os << "g" << v.genus << " " << v.left_psi << "," << v.right_psi;
    if (v.extra_psi) os << " x" << b.extra_leg << "^" << *v.extra_psi;
    if (t.omega && t.omega->vertex == i)
      os << (t.omega->kind == OmegaKind::Irr ? " w" : " w'") << (t.omega->kind == OmegaKind::SepOff ? std::to_string(t.omega->h) : "");
  }
  os << ")";
  if (b.right_leg) os << ":" << b.right_leg;
  return os.str();
}

inline std::string to_string(const FormalSum& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : s) {
    os << (first ? "" : " + ") << to_fraction_string(c) << "*" << to_string(t);
    first = false;
  }
  return first ? std::string("0") : os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Term& t) { return os << to_string(t); }
inline std::ostream& operator<<(std::ostream& os, const FormalSum& s) { return os << to_string(s); }

}  // namespace bamboo

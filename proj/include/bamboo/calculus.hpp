#pragma once

// Geometric operations on bamboo classes: gluing, psi products, forgetful
// push-forward and pull-back, and the few divisor products that keep the
// result inside the chain-shaped strata.

#include "bamboo/core.hpp"

#include <stdexcept>
#include <string>

namespace bamboo {

/// Raised when a push-forward would need a kappa class (psi power >= 2 on
/// the forgotten leg).
class KappaUnsupported : public std::runtime_error {
 public:
  explicit KappaUnsupported(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// gluing

/// Glue leg 2 of `a` to leg 1 of `b`. Both legs must sit at chain ends;
/// factors are turned around as needed.
inline Term diamond(const Term& a_in, const Term& b_in) {
  if (a_in.bamboo.is_unit()) return b_in;
  if (b_in.bamboo.is_unit()) return a_in;
  const Term a = a_in.bamboo.left_leg == 2 ? detail::reversed(a_in) : a_in;
  const Term b = b_in.bamboo.right_leg == 1 ? detail::reversed(b_in) : b_in;
  if (a.bamboo.right_leg != 2 || b.bamboo.left_leg != 1)
    throw std::invalid_argument("diamond: left factor must end in leg 2 and right factor start with leg 1");
  if (a.bamboo.extra_leg != 0 && b.bamboo.extra_leg != 0)
    throw std::invalid_argument("diamond: both factors carry an extra leg");
  if (a.omega && b.omega) throw std::invalid_argument("diamond: both factors carry an omega marker");
  Term r;
  r.bamboo.vertices = a.bamboo.vertices;
  r.bamboo.vertices.insert(r.bamboo.vertices.end(), b.bamboo.vertices.begin(), b.bamboo.vertices.end());
  r.bamboo.left_leg = a.bamboo.left_leg;
  r.bamboo.right_leg = b.bamboo.right_leg;
  r.bamboo.extra_leg = a.bamboo.extra_leg != 0 ? a.bamboo.extra_leg : b.bamboo.extra_leg;
  if (a.omega) r.omega = a.omega;
  if (b.omega) {
    r.omega = b.omega;
    r.omega->vertex += a.bamboo.size();
  }
  return make_term(std::move(r.bamboo), r.omega);
}

inline FormalSum diamond(const FormalSum& a, const FormalSum& b) {
  FormalSum out;
  for (const auto& [s, c] : a)
    for (const auto& [t, e] : b) out.add(diamond(s, t), c * e);
  return out;
}

template <class... Rest>
FormalSum diamond(const FormalSum& a, const FormalSum& b, const Rest&... rest) {
  return diamond(diamond(a, b), rest...);
}

// ---------------------------------------------------------------------------
// psi classes

enum class LegSelector { Leg1 = 1, Leg2 = 2, Leg3 = 3 };

inline Leg leg_label(LegSelector s) { return static_cast<int>(s); }

namespace detail {

enum class Slot { Left, Right, Extra };

struct LegPosition {
  std::size_t vertex;
  Slot slot;
};

inline std::optional<LegPosition> find_leg(const Bamboo& b, Leg leg) {
  if (b.is_unit() || leg == 0) return std::nullopt;
  if (b.left_leg == leg) return LegPosition{0, Slot::Left};
  if (b.right_leg == leg) return LegPosition{b.size() - 1, Slot::Right};
  if (b.extra_leg == leg) return LegPosition{*b.extra_index(), Slot::Extra};
  return std::nullopt;
}

inline int& psi_at(Vertex& v, Slot s) {
  switch (s) {
    case Slot::Left: return v.left_psi;
    case Slot::Right: return v.right_psi;
    case Slot::Extra: return *v.extra_psi;
  }
  throw std::logic_error("bad slot");
}

}  // namespace detail

/// Multiply by psi at `leg`; zero if the leg sits on a genus-0 vertex.
inline FormalSum mul_psi(const Term& t, LegSelector leg, int power) {
  if (power < 0) throw std::invalid_argument("mul_psi: negative power");
  const auto pos = detail::find_leg(t.bamboo, leg_label(leg));
  if (!pos) throw std::invalid_argument("mul_psi: leg " + std::to_string(leg_label(leg)) + " missing on " + to_string(t));
  if (power == 0) return FormalSum(t);
  Term r = t;
  auto& v = r.bamboo.vertices[pos->vertex];
  if (v.genus == 0) return {};
  detail::psi_at(v, pos->slot) += power;
  return FormalSum(make_term(std::move(r.bamboo), r.omega));
}

inline FormalSum mul_psi(const FormalSum& s, LegSelector leg, int power) {
  return linear_map(s, [&](const Term& t) { return mul_psi(t, leg, power); });
}

// ---------------------------------------------------------------------------
// forgetful push-forward

namespace detail {

inline void relabel_after_forget(Bamboo& b, Leg forgotten) {
  for (Leg* l : {&b.left_leg, &b.right_leg, &b.extra_leg})
    if (*l > forgotten) --*l;
}

inline Term erase_vertex(Term t, std::size_t i) {
  t.bamboo.vertices.erase(t.bamboo.vertices.begin() + long(i));
  if (t.omega && t.omega->vertex > i) --t.omega->vertex;
  return t;
}

}  // namespace detail

/// Push forward along the map forgetting `leg`. String rule when the leg
/// carries no psi, dilaton rule when it carries psi^1.
inline FormalSum pushforward_forget(const Term& t, LegSelector leg_sel) {
  using detail::Slot;
  const Leg leg = leg_label(leg_sel);
  const auto pos = detail::find_leg(t.bamboo, leg);
  if (!pos) throw std::invalid_argument("pushforward_forget: leg " + std::to_string(leg) + " missing on " + to_string(t));
  Term base = t;
  auto& b = base.bamboo;
  const std::size_t i = pos->vertex;
  const int e = detail::psi_at(b.vertices[i], pos->slot);
  if (e >= 2) throw KappaUnsupported("pushforward_forget: psi^" + std::to_string(e) + " on the forgotten leg needs kappa_" + std::to_string(e - 1));
  switch (pos->slot) {
    case Slot::Left: b.left_leg = 0; b.vertices[i].left_psi = 0; break;
    case Slot::Right: b.right_leg = 0; b.vertices[i].right_psi = 0; break;
    case Slot::Extra: b.extra_leg = 0; b.vertices[i].extra_psi.reset(); break;
  }
  const int g = b.vertices[i].genus;
  const int val = b.valence(i);
  const int euler = 2 * g - 2 + val;

  auto finish = [leg](Term u) {
    detail::relabel_after_forget(u.bamboo, leg);
    return make_term(std::move(u.bamboo), u.omega);
  };

  if (euler <= 0 && g > 0) throw std::invalid_argument("pushforward_forget: result has no marked point left");
  FormalSum out;
  if (e == 1) {
    out.add(finish(base), Rational(euler));
    return out;
  }
  if (euler > 0) {
    // string rule on the remaining attachments
    const bool has_l = b.has_left(i), has_r = b.has_right(i), has_x = b.vertices[i].extra_psi.has_value();
    for (Slot s : {Slot::Left, Slot::Right, Slot::Extra}) {
      if ((s == Slot::Left && !has_l) || (s == Slot::Right && !has_r) || (s == Slot::Extra && !has_x)) continue;
      Term u = base;
      int& p = detail::psi_at(u.bamboo.vertices[i], s);
      if (p == 0) continue;
      --p;
      out.add(finish(std::move(u)), Rational(1));
    }
    return out;
  }
  // genus-0 vertex left with two attachments: contract it
  if (b.size() == 1) throw std::invalid_argument("pushforward_forget: M(0,2) is unstable");
  const bool has_l = b.has_left(i), has_r = b.has_right(i);
  Term u = base;
  if (has_l && has_r) {
    u = detail::erase_vertex(std::move(u), i);
  } else if (has_l) {
    // left attachment and extra leg remain; i is the last vertex
    Leg x = u.bamboo.extra_leg;
    u = detail::erase_vertex(std::move(u), i);
    u.bamboo.extra_leg = 0;
    u.bamboo.right_leg = x;
  } else {
    Leg x = u.bamboo.extra_leg;
    u = detail::erase_vertex(std::move(u), i);
    u.bamboo.extra_leg = 0;
    u.bamboo.left_leg = x;
  }
  out.add(finish(std::move(u)), Rational(1));
  return out;
}

inline FormalSum pushforward_forget(const FormalSum& s, LegSelector leg) {
  return linear_map(s, [&](const Term& t) { return pushforward_forget(t, leg); });
}

// ---------------------------------------------------------------------------
// forgetful pull-back

/// Pull back along the map forgetting a new last leg (M(g,n) <- M(g,n+1)).
/// The new leg is placed on every vertex in turn; each positive psi power
/// at an attachment of that vertex also contributes minus the term with a
/// rational bubble carrying the new leg spliced into that attachment.
inline FormalSum pullback_forget(const Term& t) {
  using detail::Slot;
  const Bamboo& b = t.bamboo;
  if (b.is_unit()) throw std::invalid_argument("pullback_forget: unit has no moduli space");
  if (b.extra_leg != 0) throw std::invalid_argument("pullback_forget: term already carries an extra leg");
  const Leg fresh = b.num_legs() + 1;
  FormalSum out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b.vertices[i].genus == 0) throw std::invalid_argument("pullback_forget: genus-0 vertex would become 4-valent");
    {
      Term u = t;
      u.bamboo.vertices[i].extra_psi = 0;
      u.bamboo.extra_leg = fresh;
      out.add(make_term(std::move(u.bamboo), u.omega), Rational(1));
    }
    const Vertex& v = b.vertices[i];
    const Vertex bubble{0, 0, 0, 0};
    if (b.has_left(i) && v.left_psi > 0) {
      Term u = t;
      u.bamboo.vertices[i].left_psi -= 1;
      u.bamboo.vertices.insert(u.bamboo.vertices.begin() + long(i), bubble);
      u.bamboo.extra_leg = fresh;
      if (u.omega && u.omega->vertex >= i) ++u.omega->vertex;
      out.add(make_term(std::move(u.bamboo), u.omega), Rational(-1));
    }
    if (b.has_right(i) && v.right_psi > 0) {
      Term u = t;
      u.bamboo.vertices[i].right_psi -= 1;
      u.bamboo.vertices.insert(u.bamboo.vertices.begin() + long(i) + 1, bubble);
      u.bamboo.extra_leg = fresh;
      if (u.omega && u.omega->vertex > i) ++u.omega->vertex;
      out.add(make_term(std::move(u.bamboo), u.omega), Rational(-1));
    }
  }
  return out;
}

inline FormalSum pullback_forget(const FormalSum& s) {
  return linear_map(s, [](const Term& t) { return pullback_forget(t); });
}

// ---------------------------------------------------------------------------
// divisor products

/// Product with the divisor of curves with legs 1 and 2 on different
/// components, the leg-1 component of genus g1.
inline FormalSum mul_sep_divisor(const Term& t, int g1) {
  const Bamboo& b = t.bamboo;
  if (b.profile() != Profile::TwoPointed || t.omega)
    throw std::invalid_argument("mul_sep_divisor: expects unmarked two-pointed terms");
  const int g = b.total_genus();
  if (g1 < 1 || g1 >= g) throw std::invalid_argument("mul_sep_divisor: g1 out of range");
  FormalSum out;
  int prefix = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Vertex& v = b.vertices[i];
    if (prefix < g1 && g1 < prefix + v.genus) {
      // transversal: split vertex i
      Term u = t;
      auto& vs = u.bamboo.vertices;
      const Vertex left{g1 - prefix, v.left_psi, 0, std::nullopt};
      const Vertex right{v.genus - (g1 - prefix), 0, v.right_psi, std::nullopt};
      vs[i] = left;
      vs.insert(vs.begin() + long(i) + 1, right);
      out.add(make_term(std::move(u.bamboo)), Rational(1));
    }
    prefix += v.genus;
    if (prefix == g1) {
      // excess: the stratum lies in the divisor; minus both node psi classes
      if (i + 1 >= b.size()) throw std::logic_error("mul_sep_divisor: separating edge past the last vertex");
      Term u = t;
      u.bamboo.vertices[i].right_psi += 1;
      out.add(make_term(u.bamboo), Rational(-1));
      Term w = t;
      w.bamboo.vertices[i + 1].left_psi += 1;
      out.add(make_term(w.bamboo), Rational(-1));
    }
  }
  return out;
}

inline FormalSum mul_sep_divisor(const FormalSum& s, int g1) {
  return linear_map(s, [&](const Term& t) { return mul_sep_divisor(t, g1); });
}

/// Product with the divisor of curves with a rational tail carrying exactly
/// the legs `a` and `b`.
inline FormalSum mul_delta0_pair(const Term& t, LegSelector a, LegSelector b) {
  using detail::Slot;
  const auto pa = detail::find_leg(t.bamboo, leg_label(a));
  const auto pb = detail::find_leg(t.bamboo, leg_label(b));
  if (!pa || !pb || leg_label(a) == leg_label(b)) throw std::invalid_argument("mul_delta0_pair: legs missing");
  if (t.omega) throw std::invalid_argument("mul_delta0_pair: expects unmarked terms");
  if (pa->vertex != pb->vertex) return {};
  const std::size_t i = pa->vertex;
  const Bamboo& bb = t.bamboo;
  const Vertex& v = bb.vertices[i];
  auto is_slot = [&](Slot s) { return pa->slot == s || pb->slot == s; };
  FormalSum out;
  if (v.genus == 0) {
    // the stratum already lies in the divisor: minus psi on the far node branch
    if (bb.size() == 1) throw std::invalid_argument("mul_delta0_pair: M(0,3) is not a proper stratum");
    Term u = t;
    if (!is_slot(Slot::Left)) {
      if (i == 0) throw std::logic_error("mul_delta0_pair: expected a left node");
      u.bamboo.vertices[i - 1].right_psi += 1;
    } else if (!is_slot(Slot::Right)) {
      u.bamboo.vertices[i + 1].left_psi += 1;
    } else {
      throw std::logic_error("mul_delta0_pair: genus-0 vertex without node");
    }
    out.add(make_term(std::move(u.bamboo)), Rational(-1));
    return out;
  }
  if (detail::psi_at(const_cast<Vertex&>(v), pa->slot) > 0 || detail::psi_at(const_cast<Vertex&>(v), pb->slot) > 0)
    return {};
  Term u = t;
  auto& vs = u.bamboo.vertices;
  const Leg la = leg_label(a), lb = leg_label(b);
  const Vertex bubble{0, 0, 0, 0};
  if (is_slot(Slot::Left) && is_slot(Slot::Extra)) {
    // bubble takes the left leg and the extra leg
    Leg left = bb.left_leg, extra = bb.extra_leg;
    vs[i].extra_psi.reset();
    vs[i].left_psi = 0;
    vs.insert(vs.begin(), bubble);
    u.bamboo.left_leg = left;
    u.bamboo.extra_leg = extra;
  } else if (is_slot(Slot::Right) && is_slot(Slot::Extra)) {
    Leg right = bb.right_leg, extra = bb.extra_leg;
    vs[i].extra_psi.reset();
    vs[i].right_psi = 0;
    vs.push_back(bubble);
    u.bamboo.right_leg = right;
    u.bamboo.extra_leg = extra;
  } else {
    // both end legs on a single vertex; the old extra leg (if any) becomes the far end
    Leg other = bb.extra_leg;
    int other_psi = v.extra_psi.value_or(0);
    vs.clear();
    vs.push_back(bubble);
    vs.push_back(Vertex{v.genus, 0, other_psi, std::nullopt});
    u.bamboo.left_leg = la;
    u.bamboo.extra_leg = lb;
    u.bamboo.right_leg = other;
  }
  out.add(make_term(std::move(u.bamboo)), Rational(1));
  return out;
}

inline FormalSum mul_delta0_pair(const FormalSum& s, LegSelector a, LegSelector b) {
  return linear_map(s, [&](const Term& t) { return mul_delta0_pair(t, a, b); });
}

inline FormalSum mul_delta013(const FormalSum& s) { return mul_delta0_pair(s, LegSelector::Leg1, LegSelector::Leg3); }

// ---------------------------------------------------------------------------
// omega-marked calculus

/// Leibniz distribution of an omega divisor over the vertices of each term.
inline FormalSum omega_apply(const Term& t, const OmegaClass& w) {
  if (t.omega) throw std::invalid_argument("omega_apply: term already marked");
  FormalSum out;
  for (std::size_t i = 0; i < t.bamboo.size(); ++i) {
    if (!omega_supported(w, t.bamboo.vertices[i].genus)) continue;
    out.add(make_term(t.bamboo, OmegaMarker{w.kind, w.kind == OmegaKind::SepOff ? w.h : 0, i}), Rational(1));
  }
  return out;
}

inline FormalSum omega_apply(const FormalSum& s, const OmegaClass& w) {
  return linear_map(s, [&](const Term& t) { return omega_apply(t, w); });
}

// ---------------------------------------------------------------------------
// small constructors

inline FormalSum psi_class(int genus, int left_psi, int right_psi) {
  return FormalSum(single_vertex(genus, left_psi, right_psi));
}

inline FormalSum unit_sum() { return FormalSum(unit_term()); }

}  // namespace bamboo

#pragma once

// Liu-Pandharipande relation families and their instances inside bamboo
// contexts. A relation lives on one vertex (the site) of a context term:
// its local legs 1, 2, 3 are glued to the site's left, right and extra
// attachments, and the psi powers the context carries at the site act as
// psi multipliers on those local legs.

#include "bamboo/calculus.hpp"
#include "bamboo/core.hpp"
#include "bamboo/serialize.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace bamboo {

enum class Family : std::uint8_t {
  Cor2 = 0,   // two legs, both high-psi ends
  Cor1 = 1,   // three legs; `special` is the leg carrying the high psi power
  Omega = 2,  // omega-marked schema on two legs
};

struct Relation {
  Family family = Family::Cor2;
  int g = 1;
  int r = 0;          // Cor2: N = 2g + r; Cor1: N = 2g + 1 + r
  int special = 2;    // Cor1 only: 1 (the "b" form), 2 (the "a" form) or 3
  OmegaClass omega;   // Omega only
  int N = 0;          // Omega only: psi degree of the schema

  bool operator==(const Relation&) const = default;

  int degree() const {
    switch (family) {
      case Family::Cor2: return 2 * g + r;
      case Family::Cor1: return 2 * g + 1 + r;
      case Family::Omega: return N + 1;
    }
    return 0;
  }
  int num_legs() const { return family == Family::Cor1 ? 3 : 2; }
};

inline Relation cor2(int g, int r) { return Relation{Family::Cor2, g, r, 2, {}, 0}; }

/// Cor1 with n extra legs; n = 0 coincides with Cor2 under the empty-prefix convention.
inline Relation cor1a(int g, int n, int r) {
  if (n == 0) return cor2(g, r);
  if (n != 1) throw std::invalid_argument("cor1a: only n in {0,1} is supported");
  return Relation{Family::Cor1, g, r, 2, {}, 0};
}
inline Relation cor1b(int g, int n, int r) {
  if (n == 0) return cor2(g, r);
  if (n != 1) throw std::invalid_argument("cor1b: only n in {0,1} is supported");
  return Relation{Family::Cor1, g, r, 1, {}, 0};
}
inline Relation omega_schema(OmegaClass w, int g, int N) { return Relation{Family::Omega, g, 0, 2, w, N}; }

inline bool relation_valid(const Relation& rel) {
  if (rel.g < 1) return false;
  switch (rel.family) {
    case Family::Cor2: return rel.r >= 0;
    case Family::Cor1: return rel.r >= 0 && rel.special >= 1 && rel.special <= 3;
    case Family::Omega:
      if (rel.omega.kind == OmegaKind::Irr) return rel.N >= 2 * rel.g;
      // g == h is the genus-0 case: psi powers vanish on the M(0,3) that carries the legs
      return rel.omega.h >= 1 && rel.g >= rel.omega.h && rel.N >= 2 * (rel.g - rel.omega.h) + 1;
  }
  return false;
}

inline std::string relation_name(const Relation& rel) {
  switch (rel.family) {
    case Family::Cor2: return "Cor2(" + std::to_string(rel.g) + "," + std::to_string(rel.r) + ")";
    case Family::Cor1: {
      const char* tag = rel.special == 2 ? "Cor1a" : rel.special == 1 ? "Cor1b" : "Cor1c";
      return std::string(tag) + "(" + std::to_string(rel.g) + ",1," + std::to_string(rel.r) + ")";
    }
    case Family::Omega:
      return std::string("Omega(") + omega_kind_name(rel.omega.kind) +
             (rel.omega.kind == OmegaKind::SepOff ? ":" + std::to_string(rel.omega.h) : "") + "," +
             std::to_string(rel.g) + "," + std::to_string(rel.N) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// local expansions

namespace detail {

inline Term relabel(Term t, const std::map<Leg, Leg>& perm) {
  for (Leg* l : {&t.bamboo.left_leg, &t.bamboo.right_leg, &t.bamboo.extra_leg}) {
    auto it = perm.find(*l);
    if (it != perm.end()) *l = it->second;
  }
  return make_term(std::move(t.bamboo), t.omega);
}

inline FormalSum cor2_local(int g, int r) {
  const int N = 2 * g + r;
  FormalSum s;
  s.add(single_vertex(g, N, 0), Rational(-1));
  s.add(single_vertex(g, 0, N), Rational(sign_pow(N)));
  for (int g1 = 1; g1 < g; ++g1)
    for (int a1 = 0; a1 <= N - 1; ++a1)
      s.add(make_term(Bamboo{{Vertex{g1, 0, a1, std::nullopt}, Vertex{g - g1, N - 1 - a1, 0, std::nullopt}}, 1, 2, 0}),
            Rational(sign_pow(a1)));
  return s;
}

// high psi at leg 2; legs 1 and 3 together on the left component
inline FormalSum cor1a_local(int g, int r) {
  const int N = 2 * g + 1 + r;
  FormalSum s;
  s.add(make_term(Bamboo{{Vertex{g, 0, N, 0}}, 1, 2, 3}), Rational(sign_pow(N)));
  for (int g1 = 0; g1 < g; ++g1)
    for (int a1 = 0; a1 <= N - 1; ++a1) {
      if (g1 == 0 && a1 > 0) break;
      s.add(make_term(Bamboo{{Vertex{g1, 0, a1, 0}, Vertex{g - g1, N - 1 - a1, 0, std::nullopt}}, 1, 2, 3}),
            Rational(sign_pow(a1)));
    }
  return s;
}

// high psi at leg 1; legs 2 and 3 together on the right component
inline FormalSum cor1b_local(int g, int r) {
  const int N = 2 * g + 1 + r;
  FormalSum s;
  s.add(make_term(Bamboo{{Vertex{g, N, 0, 0}}, 1, 2, 3}), Rational(-1));
  for (int g1 = 1; g1 <= g; ++g1)
    for (int a1 = 0; a1 <= N - 1; ++a1) {
      const int g2 = g - g1, a2 = N - 1 - a1;
      if (g2 == 0 && a2 > 0) continue;
      s.add(make_term(Bamboo{{Vertex{g1, 0, a1, std::nullopt}, Vertex{g2, a2, 0, 0}}, 1, 2, 3}),
            Rational(sign_pow(a1)));
    }
  return s;
}

inline FormalSum omega_local(const OmegaClass& w, int g, int N) {
  const int gmin = w.kind == OmegaKind::Irr ? 1 : w.h;
  FormalSum s;
  s.add(make_term(Bamboo{{Vertex{g, 0, N, std::nullopt}}, 1, 2, 0}, OmegaMarker{w.kind, w.h, 0}),
        Rational(sign_pow(N)));
  for (int g1 = gmin; g1 < g; ++g1)
    for (int a1 = 0; a1 <= N - 1; ++a1)
      s.add(make_term(Bamboo{{Vertex{g1, 0, a1, std::nullopt}, Vertex{g - g1, N - 1 - a1, 0, std::nullopt}}, 1, 2, 0},
                      OmegaMarker{w.kind, w.h, 0}),
            Rational(sign_pow(a1)));
  return s;
}

}  // namespace detail

/// The relation's left-hand side on its own moduli space (local legs 1, 2, 3).
inline FormalSum local_expansion(const Relation& rel) {
  if (!relation_valid(rel)) throw std::invalid_argument("invalid relation parameters: " + relation_name(rel));
  switch (rel.family) {
    case Family::Cor2: return detail::cor2_local(rel.g, rel.r);
    case Family::Cor1:
      if (rel.special == 2) return detail::cor1a_local(rel.g, rel.r);
      if (rel.special == 1) return detail::cor1b_local(rel.g, rel.r);
      return linear_map(detail::cor1a_local(rel.g, rel.r),
                        [](const Term& t) { return FormalSum(detail::relabel(t, {{2, 3}, {3, 2}})); });
    case Family::Omega: return detail::omega_local(rel.omega, rel.g, rel.N);
  }
  return {};
}

// ---------------------------------------------------------------------------
// embedding

class Unrepresentable : public std::runtime_error {
 public:
  explicit Unrepresentable(const std::string& w) : std::runtime_error(w) {}
};

/// Glue one local term into the site of a context, replacing the site vertex.
inline Term substitute(const Term& local, const Term& ctx, std::size_t site) {
  const Bamboo& C = ctx.bamboo;
  if (site >= C.size()) throw std::invalid_argument("substitute: site out of range");
  const Vertex& sv = C.vertices[site];
  const bool has_l = C.has_left(site), has_r = C.has_right(site), has_x = sv.extra_psi.has_value();
  const bool node_l = site > 0, node_r = site + 1 < C.size();

  // -1 marks a node attachment
  auto global = [&](Leg l) -> Leg {
    if (l == 1 && has_l) return node_l ? -1 : C.left_leg;
    if (l == 2 && has_r) return node_r ? -1 : C.right_leg;
    if (l == 3 && has_x) return C.extra_leg;
    throw Unrepresentable("local leg " + std::to_string(l) + " has no attachment at the site");
  };
  auto fits = [&](const Bamboo& b) { return (!node_l || b.left_leg == 1) && (!node_r || b.right_leg == 2); };

  Term o = local;
  if (!fits(o.bamboo)) {
    o = detail::reversed(local);
    if (!fits(o.bamboo)) throw Unrepresentable("local term does not fit the site orientation");
  }
  const Bamboo& ob = o.bamboo;

  Bamboo nb;
  nb.vertices.assign(C.vertices.begin(), C.vertices.begin() + long(site));
  nb.vertices.insert(nb.vertices.end(), ob.vertices.begin(), ob.vertices.end());
  nb.vertices.insert(nb.vertices.end(), C.vertices.begin() + long(site) + 1, C.vertices.end());

  auto outer = [&](Leg local_leg) -> Leg {
    if (local_leg == 0) return 0;
    const Leg gl = global(local_leg);
    if (gl < 0) throw Unrepresentable("node attachment lands on an outer end");
    return gl;
  };
  nb.left_leg = node_l ? C.left_leg : outer(ob.left_leg);
  nb.right_leg = node_r ? C.right_leg : outer(ob.right_leg);
  nb.extra_leg = 0;
  if (C.extra_leg != 0 && !has_x) nb.extra_leg = C.extra_leg;
  if (ob.extra_leg != 0) {
    if (nb.extra_leg != 0) throw Unrepresentable("two extra legs");
    const Leg gl = global(ob.extra_leg);
    if (gl < 0) throw Unrepresentable("node attachment lands on a vertex side");
    nb.extra_leg = gl;
  }

  std::optional<OmegaMarker> w;
  if (ctx.omega) {
    if (ctx.omega->vertex == site) throw std::invalid_argument("substitute: site carries the context's omega marker");
    w = ctx.omega;
    if (w->vertex > site) w->vertex += ob.size() - 1;
  }
  if (o.omega) {
    if (w) throw Unrepresentable("two omega markers");
    w = o.omega;
    w->vertex += site;
  }
  try {
    return make_term(std::move(nb), w);
  } catch (const std::invalid_argument& e) {
    throw Unrepresentable(e.what());
  }
}

/// Multiply the local expansion by the site's psi decorations and glue it in.
inline FormalSum embed(const FormalSum& local, const Term& ctx, std::size_t site) {
  const Vertex& sv = ctx.bamboo.vertices.at(site);
  FormalSum m = local;
  if (ctx.bamboo.has_left(site) && sv.left_psi) m = mul_psi(m, LegSelector::Leg1, sv.left_psi);
  if (ctx.bamboo.has_right(site) && sv.right_psi) m = mul_psi(m, LegSelector::Leg2, sv.right_psi);
  if (sv.extra_psi && *sv.extra_psi) m = mul_psi(m, LegSelector::Leg3, *sv.extra_psi);
  FormalSum out;
  for (const auto& [t, c] : m) out.add(substitute(t, ctx, site), c);
  return out;
}

// ---------------------------------------------------------------------------
// instances

/// Operation applied to an embedded relation before the prefix is glued on.
struct PostOp {
  enum class Kind : std::uint8_t { Pullback = 0, MulPsi = 1 } kind = Kind::Pullback;
  int leg = 0;
  int power = 0;
  bool operator==(const PostOp&) const = default;
};

struct RelationInstance {
  Relation rel;
  Term context;
  std::size_t site = 0;
  std::vector<PostOp> post;
  std::optional<Term> prefix;  // glued at leg 1 after the post operations

  bool operator==(const RelationInstance&) const = default;
};

inline FormalSum apply_post(FormalSum s, const std::vector<PostOp>& post) {
  for (const auto& op : post) {
    if (op.kind == PostOp::Kind::Pullback)
      s = pullback_forget(s);
    else
      s = mul_psi(s, static_cast<LegSelector>(op.leg), op.power);
  }
  return s;
}

namespace detail {

struct LocalCache {
  std::mutex mu;
  std::vector<std::pair<Relation, FormalSum>> entries;

  FormalSum get(const Relation& rel) {
    {
      std::lock_guard<std::mutex> lock(mu);
      for (const auto& [r, s] : entries)
        if (r == rel) return s;
    }
    FormalSum s = local_expansion(rel);
    std::lock_guard<std::mutex> lock(mu);
    entries.emplace_back(rel, s);
    return s;
  }
};

inline LocalCache& local_cache() {
  static LocalCache c;
  return c;
}

}  // namespace detail

inline FormalSum expand(const RelationInstance& inst) {
  FormalSum s = embed(detail::local_cache().get(inst.rel), inst.context, inst.site);
  s = apply_post(std::move(s), inst.post);
  if (inst.prefix) s = diamond(FormalSum(*inst.prefix), s);
  return s;
}

inline std::string instance_name(const RelationInstance& inst) {
  std::string s = relation_name(inst.rel) + " @" + std::to_string(inst.site) + " in " + to_string(inst.context);
  for (const auto& op : inst.post)
    s += op.kind == PostOp::Kind::Pullback ? " |pull" : " |psi" + std::to_string(op.leg) + "^" + std::to_string(op.power);
  if (inst.prefix) s = to_string(*inst.prefix) + " <> [" + s + "]";
  return s;
}

// ---------------------------------------------------------------------------
// JSON

inline Json to_json(const Relation& rel) {
  Json j;
  switch (rel.family) {
    case Family::Cor2: j["family"] = "Cor2"; break;
    case Family::Cor1: j["family"] = "Cor1"; break;
    case Family::Omega: j["family"] = "Omega"; break;
  }
  j["g"] = rel.g;
  if (rel.family != Family::Omega) j["r"] = rel.r;
  if (rel.family == Family::Cor1) {
    j["n"] = 1;
    j["special_leg"] = rel.special;
  }
  if (rel.family == Family::Omega) {
    j["kind"] = omega_kind_name(rel.omega.kind);
    j["h"] = rel.omega.h;
    j["N"] = rel.N;
  }
  return j;
}

inline Relation relation_from_json(const Json& j) {
  const std::string f = j.at("family").get<std::string>();
  Relation rel;
  rel.g = j.at("g").get<int>();
  if (f == "Cor2") {
    rel = cor2(rel.g, j.at("r").get<int>());
  } else if (f == "Cor1") {
    rel.family = Family::Cor1;
    rel.r = j.at("r").get<int>();
    rel.special = j.at("special_leg").get<int>();
    if (j.value("n", 1) != 1) throw std::invalid_argument("relation json: Cor1 with n != 1 must be written as Cor2");
  } else if (f == "Omega") {
    rel = omega_schema(OmegaClass{omega_kind_from_name(j.at("kind").get<std::string>()), j.at("h").get<int>()}, rel.g,
                       j.at("N").get<int>());
  } else {
    throw std::invalid_argument("relation json: unknown family " + f);
  }
  if (!relation_valid(rel)) throw std::invalid_argument("relation json: invalid parameters");
  return rel;
}

inline Json to_json(const RelationInstance& inst) {
  Json j;
  j["relation"] = to_json(inst.rel);
  j["context"] = to_json(inst.context);
  j["site"] = inst.site;
  Json post = Json::array();
  for (const auto& op : inst.post) {
    if (op.kind == PostOp::Kind::Pullback)
      post.push_back({{"op", "pullback"}});
    else
      post.push_back({{"op", "psi"}, {"leg", op.leg}, {"power", op.power}});
  }
  j["post"] = post;
  j["prefix"] = inst.prefix ? to_json(*inst.prefix) : Json(nullptr);
  return j;
}

inline RelationInstance instance_from_json(const Json& j) {
  RelationInstance inst;
  inst.rel = relation_from_json(j.at("relation"));
  inst.context = term_from_json(j.at("context"));
  inst.site = j.at("site").get<std::size_t>();
  if (inst.site >= inst.context.bamboo.size()) throw std::invalid_argument("instance json: site out of range");
  if (inst.context.bamboo.vertices[inst.site].genus != inst.rel.g)
    throw std::invalid_argument("instance json: site genus differs from the relation genus");
  for (const auto& op : j.at("post")) {
    const std::string k = op.at("op").get<std::string>();
    if (k == "pullback")
      inst.post.push_back(PostOp{PostOp::Kind::Pullback, 0, 0});
    else if (k == "psi")
      inst.post.push_back(PostOp{PostOp::Kind::MulPsi, op.at("leg").get<int>(), op.at("power").get<int>()});
    else
      throw std::invalid_argument("instance json: unknown post op " + k);
  }
  if (j.contains("prefix") && !j.at("prefix").is_null()) inst.prefix = term_from_json(j.at("prefix"));
  return inst;
}

// ---------------------------------------------------------------------------
// enumeration

/// Leg labels of a sector's terms; `extra` sits on a vertex side.
struct Layout {
  Leg left = 1, right = 2, extra = 0;
  bool operator==(const Layout&) const = default;
};

namespace detail {

// all ways to write total as an ordered sum of k nonnegative parts
inline void weak_compositions(int k, int total, std::vector<int>& cur, const std::function<void()>& f) {
  if (int(cur.size()) == k) {
    if (total == 0) f();
    return;
  }
  const int lo = int(cur.size()) + 1 == k ? total : 0;
  for (int x = lo; x <= total; ++x) {
    cur.push_back(x);
    weak_compositions(k, total - x, cur, f);
    cur.pop_back();
  }
}

}  // namespace detail

/// Every normal-form term with the given legs, total genus, degree and at
/// most max_len vertices. Genus-0 vertices only occur as the carrier of the
/// extra leg. With `omega`, every supporting vertex gets the marker in turn.
inline std::vector<Term> enumerate_terms(const Layout& layout, int genus, int deg, int max_len,
                                         std::optional<OmegaClass> omega = std::nullopt) {
  std::set<Term, TermLess> out;
  if (deg < 0) return {};
  for (int m = 1; m <= max_len; ++m) {
    const int psi_total = deg - (m - 1) - (omega ? 1 : 0);
    if (psi_total < 0) break;
    const int xs = layout.extra ? m : 1;
    for (int x = 0; x < xs; ++x) {
      Bamboo shape;
      shape.left_leg = layout.left;
      shape.right_leg = layout.right;
      shape.extra_leg = layout.extra;
      shape.vertices.assign(std::size_t(m), Vertex{});
      if (layout.extra) shape.vertices[std::size_t(x)].extra_psi = 0;
      // genera
      std::vector<int> gs(std::size_t(m), 0);
      std::function<void(int, int)> assign_genus = [&](int i, int left) {
        if (i == m) {
          if (left != 0) return;
          Bamboo b = shape;
          std::vector<int*> slots;
          for (int j = 0; j < m; ++j) {
            Vertex& v = b.vertices[std::size_t(j)];
            v.genus = gs[std::size_t(j)];
            if (v.genus == 0) continue;
            if (b.has_left(std::size_t(j))) slots.push_back(&v.left_psi);
            if (b.has_right(std::size_t(j))) slots.push_back(&v.right_psi);
            if (v.extra_psi) slots.push_back(&*v.extra_psi);
          }
          if (slots.empty()) {
            if (psi_total != 0) return;
          }
          std::vector<int> cur;
          auto emit = [&] {
            for (std::size_t k = 0; k < slots.size(); ++k) *slots[k] = cur[k];
            if (!omega) {
              try {
                out.insert(make_term(b));
              } catch (const std::invalid_argument&) {
              }
              return;
            }
            for (std::size_t j = 0; j < b.size(); ++j) {
              if (!omega_supported(*omega, b.vertices[j].genus)) continue;
              try {
                out.insert(make_term(b, OmegaMarker{omega->kind, omega->h, j}));
              } catch (const std::invalid_argument&) {
              }
            }
          };
          if (slots.empty())
            emit();
          else
            detail::weak_compositions(int(slots.size()), psi_total, cur, emit);
          return;
        }
        const bool may_be_zero = layout.extra && i == x;
        for (int g = may_be_zero ? 0 : 1; g <= left; ++g) {
          gs[std::size_t(i)] = g;
          assign_genus(i + 1, left - g);
        }
      };
      assign_genus(0, genus);
    }
  }
  return {out.begin(), out.end()};
}

/// Search limits for relation instances.
struct Budget {
  int context_len = 0;  // maximum vertices of a context; 0 means automatic
  int max_r = -1;       // maximum excess r of a relation; negative means 2g
  bool pulled_back = true;  // in three-legged sectors, also pull back two-pointed instances
};

/// Which relation families to place at which sites.
struct SectorSpec {
  std::vector<Layout> layouts;
  int genus = 1;
  int degree = 2;
  std::optional<OmegaClass> omega;  // the sector carries one omega marker

  bool has_extra() const {
    for (const auto& l : layouts)
      if (l.extra) return true;
    return false;
  }
};

/// Default context length: the site plus g - 1 further vertices, one more
/// when a leg sits on a vertex side (its carrier may have genus 0).
inline int auto_context_len(const SectorSpec& s) { return std::max(1, s.genus + (s.has_extra() ? 1 : 0)); }

inline std::vector<Term> enumerate_terms(const std::vector<Layout>& layouts, int genus, int deg, int max_len,
                                         std::optional<OmegaClass> omega = std::nullopt) {
  std::set<Term, TermLess> all;
  for (const auto& l : layouts)
    for (auto& t : enumerate_terms(l, genus, deg, max_len, omega)) all.insert(std::move(t));
  return {all.begin(), all.end()};
}

/// Every relation instance (without post operations) whose expansion lies in the sector.
inline std::vector<RelationInstance> enumerate_instances(const SectorSpec& sec, const Budget& budget) {
  const int max_len = budget.context_len > 0 ? budget.context_len : auto_context_len(sec);
  const int max_r = budget.max_r >= 0 ? budget.max_r : 2 * sec.genus;
  std::vector<RelationInstance> out;
  auto push = [&](const Relation& rel, const Term& ctx, std::size_t site) {
    if (!relation_valid(rel)) return;
    out.push_back(RelationInstance{rel, ctx, site, {}, std::nullopt});
  };
  for (int dc = 0; dc + 2 <= sec.degree; ++dc) {
    const int N = sec.degree - dc;
    // contexts carrying the sector's marker away from the site, or none of it
    std::vector<std::pair<std::vector<Term>, bool>> pools;
    pools.emplace_back(enumerate_terms(sec.layouts, sec.genus, dc, max_len, sec.omega), false);
    if (sec.omega) pools.emplace_back(enumerate_terms(sec.layouts, sec.genus, dc, max_len), true);
    for (const auto& [pool, schema] : pools)
      for (const Term& ctx : pool)
        for (std::size_t i = 0; i < ctx.bamboo.size(); ++i) {
          const Bamboo& b = ctx.bamboo;
          const Vertex& v = b.vertices[i];
          if (v.genus == 0) continue;
          if (ctx.omega && ctx.omega->vertex == i) continue;
          const bool lr = b.has_left(i) && b.has_right(i);
          if (schema) {
            if (lr && !v.extra_psi && omega_supported(*sec.omega, v.genus) && N - 1 - 2 * v.genus <= max_r)
              push(omega_schema(*sec.omega, v.genus, N - 1), ctx, i);
            continue;
          }
          if (lr && !v.extra_psi) {
            const int r = N - 2 * v.genus;
            if (r >= 0 && r <= max_r) push(cor2(v.genus, r), ctx, i);
          } else if (lr && v.extra_psi) {
            const int r = N - 2 * v.genus - 1;
            if (r >= 0 && r <= max_r)
              for (int s : {1, 2, 3}) push(Relation{Family::Cor1, v.genus, r, s, {}, 0}, ctx, i);
          }
        }
  }
  if (budget.pulled_back && !sec.omega && sec.layouts.size() == 1 && sec.layouts[0] == Layout{1, 2, 3}) {
    // psi_1^m pi^*(I) for two-pointed instances I of the same genus
    for (int m = 0; m <= std::max(0, sec.degree - 2 * sec.genus); ++m) {
      SectorSpec base{{Layout{1, 2, 0}}, sec.genus, sec.degree - m, std::nullopt};
      for (auto inst : enumerate_instances(base, budget)) {
        inst.post.push_back(PostOp{PostOp::Kind::Pullback, 0, 0});
        if (m > 0) inst.post.push_back(PostOp{PostOp::Kind::MulPsi, 1, m});
        out.push_back(std::move(inst));
      }
    }
    // P <> pi^*(I) with a two-pointed prefix term P of genus g1 and degree at most 2 g1
    for (int g1 = 1; g1 < sec.genus; ++g1)
      for (int dp = 0; dp <= 2 * g1; ++dp) {
        SectorSpec base{{Layout{1, 2, 0}}, sec.genus - g1, sec.degree - dp - 1, std::nullopt};
        if (base.degree < 2) continue;
        const auto rels = enumerate_instances(base, budget);
        if (rels.empty()) continue;
        for (const Term& p : enumerate_terms(Layout{1, 2, 0}, g1, dp, std::max(1, g1)))
          for (auto inst : rels) {
            inst.post.push_back(PostOp{PostOp::Kind::Pullback, 0, 0});
            inst.prefix = p;
            out.push_back(std::move(inst));
          }
      }
  }
  return out;
}

}  // namespace bamboo

#pragma once

// Named class families, built by enumerating constrained compositions.

#include "bamboo/calculus.hpp"
#include "bamboo/core.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace bamboo {

struct Composition {
  std::vector<int> genera;
  std::vector<int> powers;
};

/// prefix_ok(l, sum of the first l genera, sum of the first l powers);
/// must be monotone in the sense that a failing prefix cannot be repaired.
using PrefixRule = std::function<bool(int, int, int)>;

/// Depth-first enumeration of (g_1..g_k), (d_1..d_k) with sum g_i = genus,
/// sum d_i = power_sum, g_i >= 1 and d_i >= 0 except at `zero_slots` where
/// both are forced to 0. Order is lexicographic in the genera, then in the
/// powers. The prefix rule prunes the power search.
template <class F>
void for_each_composition(int k, int genus, int power_sum, const PrefixRule& prefix_ok, F&& visit,
                          const std::vector<int>& zero_slots = {}) {
  if (k <= 0 || power_sum < 0) return;
  std::vector<bool> zero(std::size_t(k), false);
  for (int z : zero_slots) {
    if (z < 0 || z >= k) throw std::invalid_argument("for_each_composition: zero slot out of range");
    zero[std::size_t(z)] = true;
  }
  int free_slots = 0;
  for (bool z : zero) free_slots += z ? 0 : 1;
  if (genus < free_slots) return;

  Composition c;
  c.genera.assign(std::size_t(k), 0);
  c.powers.assign(std::size_t(k), 0);

  std::function<void(int, int, int, int)> powers_dfs = [&](int i, int g_prefix, int d_prefix, int d_left) {
    if (i == k) {
      if (d_left == 0) visit(static_cast<const Composition&>(c));
      return;
    }
    const int gi = c.genera[std::size_t(i)];
    const int g_next = g_prefix + gi;
    if (zero[std::size_t(i)]) {
      c.powers[std::size_t(i)] = 0;
      if (prefix_ok(i + 1, g_next, d_prefix)) powers_dfs(i + 1, g_next, d_prefix, d_left);
      return;
    }
    const int lo = (i == k - 1 || std::all_of(zero.begin() + i + 1, zero.end(), [](bool z) { return z; })) ? d_left : 0;
    for (int di = lo; di <= d_left; ++di) {
      if (!prefix_ok(i + 1, g_next, d_prefix + di)) break;
      c.powers[std::size_t(i)] = di;
      powers_dfs(i + 1, g_next, d_prefix + di, d_left - di);
    }
  };

  std::function<void(int, int, int)> genera_dfs = [&](int i, int g_left, int free_after) {
    if (i == k) {
      if (g_left == 0) powers_dfs(0, 0, 0, power_sum);
      return;
    }
    if (zero[std::size_t(i)]) {
      c.genera[std::size_t(i)] = 0;
      genera_dfs(i + 1, g_left, free_after);
      return;
    }
    const int rest = free_after - 1;
    if (rest == 0) {
      c.genera[std::size_t(i)] = g_left;
      genera_dfs(i + 1, 0, 0);
      return;
    }
    for (int gi = 1; gi <= g_left - rest; ++gi) {
      c.genera[std::size_t(i)] = gi;
      genera_dfs(i + 1, g_left - gi, rest);
    }
  };
  genera_dfs(0, genus, free_slots);
}

/// Rule "d_1+..+d_l + l - 1 <= 2(g_1+..+g_l) - 1 + offset" on l in [1, upto].
inline PrefixRule chain_rule(int upto, int offset = 0) {
  return [upto, offset](int l, int gs, int ds) { return l > upto || ds + l - 1 <= 2 * gs - 1 + offset; };
}

// ---------------------------------------------------------------------------

/// psi_2^{d_1}|g_1 <> ... <> psi_2^{d_k}|g_k.
inline Term c_term(const std::vector<int>& genera, const std::vector<int>& powers) {
  if (genera.empty() || genera.size() != powers.size()) throw std::invalid_argument("make_c: bad lists");
  Bamboo b;
  for (std::size_t i = 0; i < genera.size(); ++i) {
    if (genera[i] < 1 || powers[i] < 0) throw std::invalid_argument("make_c: genus must be >= 1 and powers >= 0");
    b.vertices.push_back(Vertex{genera[i], 0, powers[i], std::nullopt});
  }
  return make_term(std::move(b));
}

inline FormalSum make_c(const std::vector<int>& genera, const std::vector<int>& powers) {
  return FormalSum(c_term(genera, powers));
}

/// The prefix-constrained sum of k-vertex c-classes of genus g and degree d.
/// (0, -1, 0) is the empty prefix and returns the unit.
inline FormalSum make_c_arrow(int g, int d, int k) {
  if (g == 0 && d == -1 && k == 0) return unit_sum();
  FormalSum out;
  if (g < 1 || k < 1 || d < 0 || k > g || d >= 2 * g) return out;
  for_each_composition(k, g, d - k + 1, chain_rule(k), [&](const Composition& c) {
    out.add(c_term(c.genera, c.powers), Rational(1));
  });
  return out;
}

inline FormalSum make_c_arrow_left(int g, int d, int k) { return reflect(make_c_arrow(g, d, k)); }

inline FormalSum make_B(int g) {
  if (g < 1) throw std::invalid_argument("make_B: genus must be positive");
  FormalSum out;
  for (int k = 1; k <= g; ++k) {
    const Rational sign(sign_pow(k - 1));
    for_each_composition(k, g, 2 * g - k + 1, chain_rule(k - 1), [&](const Composition& c) {
      out.add(c_term(c.genera, c.powers), sign);
    });
  }
  return out;
}

/// One-pointed class on M(g,1); the leg sits at the right end.
inline FormalSum make_B_onepoint(int g) {
  if (g < 1) throw std::invalid_argument("make_B_onepoint: genus must be positive");
  FormalSum out;
  for (int k = 1; k <= g; ++k) {
    const Rational sign(sign_pow(k - 1));
    for_each_composition(k, g, 2 * g - k, chain_rule(k - 1, -1), [&](const Composition& c) {
      Bamboo b;
      b.left_leg = 0;
      b.right_leg = 1;
      for (std::size_t i = 0; i < c.genera.size(); ++i) b.vertices.push_back(Vertex{c.genera[i], 0, c.powers[i], std::nullopt});
      out.add(make_term(std::move(b)), sign);
    });
  }
  return out;
}

/// The b-arrow classes relative to the splitting genus g1.
inline FormalSum make_b_arrow(int h, int d, int k, int g1) {
  FormalSum out;
  if (g1 < 1 || h <= g1 || k < 1 || k > h - g1 || d > 2 * h || d < 0) return out;
  const int rest = h - g1;
  for (int d1 = 0; d1 <= d; ++d1) {
    const int d2 = d - d1;
    FormalSum tail;
    for_each_composition(k, rest, d2 - k,
                         [&](int l, int gs, int ds) { return d1 + ds + l <= 2 * (g1 + gs); },
                         [&](const Composition& c) { tail.add(c_term(c.genera, c.powers), Rational(1)); });
    for_each_composition(k, rest, d2 - k - 1,
                         [&](int l, int gs, int ds) { return d1 + ds + l <= 2 * (g1 + gs) - 1; },
                         [&](const Composition& c) {
                           Term t = c_term(c.genera, c.powers);
                           Bamboo b = t.bamboo;
                           b.vertices.front().left_psi += 1;
                           tail.add(make_term(std::move(b)), Rational(1));
                         });
    if (tail.empty()) continue;
    for (int m = 1; m <= g1; ++m) {
      const FormalSum head = make_c_arrow(g1, d1, m);
      if (head.empty()) continue;
      out += Rational(sign_pow(m)) * diamond(head, tail);
    }
  }
  return out;
}

namespace detail {

// Left-to-right chain for the reflected classes: index k sits at leg 1,
// index 1 at leg 2, psi power d_i toward leg 1.
inline Bamboo reflected_chain(const Composition& c) {
  Bamboo b;
  const std::size_t k = c.genera.size();
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t i = k - 1 - j;
    if (c.genera[i] == 0)
      b.vertices.push_back(Vertex{0, 0, 0, 0});
    else
      b.vertices.push_back(Vertex{c.genera[i], c.powers[i], 0, std::nullopt});
  }
  return b;
}

}  // namespace detail

/// Leg 3 added on each vertex of the reflected c-classes in turn.
inline FormalSum make_d(int g, int d, int k) {
  FormalSum out;
  if (g < 1 || k < 1 || d < 0) return out;
  for_each_composition(k, g, d - k + 1, chain_rule(k), [&](const Composition& c) {
    for (int l = 1; l <= k; ++l) {
      Bamboo b = detail::reflected_chain(c);
      b.vertices[std::size_t(k - l)].extra_psi = 0;
      b.extra_leg = 3;
      out.add(make_term(std::move(b)), Rational(1));
    }
  });
  return out;
}

/// Leg 3 on a rational vertex inserted at each position l of the chain.
inline FormalSum make_e(int g, int d, int k) {
  FormalSum out;
  if (g < 1 || k < 2 || d < 0) return out;
  for (int l = 1; l <= k; ++l) {
    for_each_composition(
        k, g, d - k + 1, chain_rule(k),
        [&](const Composition& c) {
          Bamboo b = detail::reflected_chain(c);
          b.extra_leg = 3;
          out.add(make_term(std::move(b)), Rational(1));
        },
        {l - 1});
  }
  return out;
}

}  // namespace bamboo

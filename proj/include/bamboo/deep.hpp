#pragma once

// Intermediate statements of the inductive proofs. Each partial sum
// E_1 + ... + E_l of a top-level target has a closed form on graphs with more
// vertices; certifying the difference per l localizes a failing induction
// step. At the last l the closed form vanishes and the partial sum is the
// top-level target itself.

#include "bamboo/identities.hpp"

namespace bamboo {

namespace detail {

inline FormalSum c_right(int g, int d, int k) { return make_c_arrow(g, d, k); }
inline FormalSum c_left(int g, int d, int k) { return make_c_arrow_left(g, d, k); }

// psi_2^d + psi_1 psi_2^{d-1} on M(g,2)
inline FormalSum psi_pair(int g, int d) {
  FormalSum out = psi_class(g, 0, d);
  if (d >= 1) out += psi_class(g, 1, d - 1);
  return out;
}

// Calls f(g1, d1) over g1 in [0, g], d1 in [-1, 2g]; the constructors return
// zero outside their range.
template <class F>
void over_prefix(int g, F&& f) {
  for (int g1 = 0; g1 <= g; ++g1)
    for (int d1 = -1; d1 <= 2 * g; ++d1) f(g1, d1);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// symmetry

/// The l-component part of B^g - refl B^g.
inline FormalSum symmetry_E(int g, int l) {
  FormalSum out;
  const Rational sign(sign_pow(l - 1));
  detail::over_prefix(g, [&](int g1, int d1) {
    const int g2 = g - g1, d2 = 2 * g - 1 - d1;
    if (g2 < 1 || d2 < 0) return;
    out += sign * diamond(detail::c_right(g1, d1, l - 1), psi_class(g2, 0, d2));
    out -= sign * diamond(psi_class(g2, d2, 0), detail::c_left(g1, d1, l - 1));
  });
  return out;
}

/// Closed form of E_1 + ... + E_l on graphs with l+1 vertices.
inline FormalSum symmetry_partial_rhs(int g, int l) {
  FormalSum out;
  for (int r = 0; r <= l - 1; ++r) {
    const int s = l - 1 - r;
    detail::over_prefix(g, [&](int g1, int d1) {
      FormalSum c1 = detail::c_right(g1, d1, r);
      if (c1.empty()) return;
      detail::over_prefix(g - g1, [&](int g4, int d4) {
        FormalSum c4 = detail::c_left(g4, d4, s);
        if (c4.empty()) return;
        const int rest_g = g - g1 - g4, rest_d = 2 * g - 3 - d1 - d4;
        for (int g2 = 1; g2 < rest_g; ++g2)
          for (int d2 = 0; d2 <= rest_d; ++d2) {
            const Rational sign(sign_pow(l + 1 + d1 + d2));
            out += sign * diamond(c1, psi_class(g2, 0, d2), psi_class(rest_g - g2, rest_d - d2, 0), c4);
          }
      });
    });
  }
  return out;
}

inline FormalSum symmetry_partial_target(int g, int l) {
  FormalSum t;
  for (int i = 1; i <= l; ++i) t += symmetry_E(g, i);
  return t - symmetry_partial_rhs(g, l);
}

// ---------------------------------------------------------------------------
// omega classes

inline FormalSum omega_E(int g, const OmegaClass& w, int k) {
  FormalSum out;
  const Rational sign(sign_pow(k - 1));
  detail::over_prefix(g, [&](int g1, int d1) {
    const int g2 = g - g1, d2 = 2 * g - 1 - d1;
    if (g2 < 1 || d2 < 0) return;
    out += sign * omega_apply(diamond(detail::c_right(g1, d1, k - 1), psi_class(g2, 0, d2)), w);
  });
  return out;
}

inline FormalSum omega_partial_rhs(int g, const OmegaClass& w, int k) {
  FormalSum out;
  for (int r = 0; r <= k - 1; ++r) {
    const int s = k - 1 - r;
    detail::over_prefix(g, [&](int g1, int d1) {
      FormalSum c1 = detail::c_right(g1, d1, r);
      if (c1.empty()) return;
      detail::over_prefix(g - g1, [&](int g4, int d4) {
        FormalSum c4 = detail::c_left(g4, d4, s);
        if (c4.empty()) return;
        const int rest_g = g - g1 - g4, rest_d = 2 * g - 3 - d1 - d4;
        for (int g2 = 1; g2 < rest_g; ++g2)
          for (int d2 = 0; d2 <= rest_d; ++d2) {
            const Rational sign(sign_pow(k + 1 + d1 + d2));
            FormalSum head = omega_apply(diamond(c1, psi_class(g2, 0, d2)), w);
            out += sign * diamond(head, psi_class(rest_g - g2, rest_d - d2, 0), c4);
          }
      });
    });
  }
  return out;
}

inline FormalSum omega_partial_target(int g, const OmegaClass& w, int k) {
  FormalSum t;
  for (int i = 1; i <= k; ++i) t += omega_E(g, w, i);
  return t - omega_partial_rhs(g, w, k);
}

// ---------------------------------------------------------------------------
// separating divisor

inline FormalSum split_E(int g, int g1, int l) {
  const int g2 = g - g1;
  FormalSum out;
  if (l == 1)
    for (int d1 = 0; d1 <= 2 * g; ++d1)
      for (int m = 1; m <= g1; ++m) {
        FormalSum c = detail::c_right(g1, d1, m);
        if (!c.empty()) out += Rational(sign_pow(m + 1)) * diamond(c, detail::psi_pair(g2, 2 * g - d1));
      }
  for (int h = g1 + 1; h < g; ++h)
    for (int d1 = 0; d1 <= 2 * g; ++d1) {
      FormalSum b = make_b_arrow(h, d1, l, g1);
      if (!b.empty()) out += Rational(sign_pow(l + 1)) * diamond(b, psi_class(g - h, 0, 2 * g - d1));
    }
  return out;
}

inline FormalSum split_partial_rhs(int g, int g1, int l) {
  const int g2 = g - g1;
  FormalSum out;
  const int top = 2 * g - 1;
  // first line
  for (int f1 = 1; f1 < g2; ++f1) {
    const int f2 = g2 - f1;
    for (int d3 = -1; d3 <= top; ++d3) {
      FormalSum tail = detail::c_left(f2, d3, l);
      if (tail.empty()) continue;
      for (int d1 = 0; d1 + d3 <= top; ++d1) {
        const int d2 = top - d1 - d3;
        for (int m = 1; m <= g1; ++m) {
          FormalSum c = detail::c_right(g1, d1, m);
          if (c.empty()) continue;
          out += Rational(sign_pow(l + d3 + m)) * diamond(c, detail::psi_pair(f1, d2), tail);
        }
      }
    }
  }
  // second line
  for (int h = g1 + 1; h < g; ++h)
    for (int f1 = 1; f1 <= g - h; ++f1) {
      const int f2 = g - h - f1;
      for (int k = 1; k <= l; ++k)
        for (int d3 = -1; d3 <= top; ++d3) {
          FormalSum tail = detail::c_left(f2, d3, l - k);
          if (tail.empty()) continue;
          for (int d1 = 0; d1 + d3 <= top; ++d1) {
            FormalSum b = make_b_arrow(h, d1, k, g1);
            if (b.empty()) continue;
            const int d2 = top - d1 - d3;
            FormalSum mid = psi_class(f1, 0, d2) - Rational(sign_pow(d2)) * psi_class(f1, d2, 0);
            out += Rational(sign_pow(l + d3)) * diamond(b, mid, tail);
          }
        }
    }
  return out;
}

inline FormalSum split_partial_target(int g, int g1, int l) {
  FormalSum t;
  for (int i = 1; i <= l; ++i) t += split_E(g, g1, i);
  return t - split_partial_rhs(g, g1, l);
}

// ---------------------------------------------------------------------------
// checks

inline IdentityReport check_deep_symmetry(int g, int l, const SuiteOptions& opt = {}) {
  return detail::timed([&] {
    IdentityReport r{"deep_symmetry", g, {{"l", l}}};
    if (l < 1 || l > g) throw std::invalid_argument("check_deep_symmetry: need 1 <= l <= g");
    detail::certify_into(r, symmetry_partial_target(g, l), opt);
    return r;
  });
}

inline IdentityReport check_deep_omega(int g, const OmegaClass& w, int k, const SuiteOptions& opt = {}) {
  return detail::timed([&] {
    IdentityReport r{w.kind == OmegaKind::Irr ? "deep_irr" : "deep_sep_off", g};
    if (w.kind == OmegaKind::SepOff) r.params.push_back({"h", w.h});
    r.params.push_back({"k", k});
    if (k < 1 || k > g) throw std::invalid_argument("check_deep_omega: need 1 <= k <= g");
    detail::certify_into(r, omega_partial_target(g, w, k), opt);
    return r;
  });
}

inline IdentityReport check_deep_split(int g, int g1, int l, const SuiteOptions& opt = {}) {
  return detail::timed([&] {
    IdentityReport r{"deep_split", g, {{"g1", g1}, {"l", l}}};
    if (g1 < 1 || g1 >= g || l < 1 || l > g - g1) throw std::invalid_argument("check_deep_split: bad parameters");
    detail::certify_into(r, split_partial_target(g, g1, l), opt);
    return r;
  });
}

}  // namespace bamboo

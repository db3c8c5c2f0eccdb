#pragma once

// Brute-force reference enumerators used as test oracles. They iterate over
// every tuple with the required sums and filter by the defining inequalities
// exactly as written, with no pruning and no shared code with the library's
// enumerator beyond the term type.

#include "bamboo/core.hpp"

#include <functional>
#include <vector>

namespace oracle {

/// Every k-tuple of integers >= lo with the given sum.
inline void tuples_with_sum(int k, int total, int lo, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> t;
  std::function<void(int)> rec = [&](int left) {
    if (int(t.size()) == k) {
      if (left == 0) f(t);
      return;
    }
    for (int x = lo; x <= left; ++x) {
      t.push_back(x);
      rec(left - x);
      t.pop_back();
    }
  };
  if (k > 0 && total >= 0) rec(total);
}

inline int sum(const std::vector<int>& v, std::size_t n) {
  int s = 0;
  for (std::size_t i = 0; i < n; ++i) s += v[i];
  return s;
}

inline bamboo::Term chain(const std::vector<int>& gs, const std::vector<int>& ds) {
  bamboo::Bamboo b;
  for (std::size_t i = 0; i < gs.size(); ++i) b.vertices.push_back(bamboo::Vertex{gs[i], 0, ds[i], std::nullopt});
  return bamboo::make_term(b);
}

/// B^g straight from its definition.
inline bamboo::FormalSum B(int g) {
  bamboo::FormalSum out;
  for (int k = 1; k <= g; ++k) {
    tuples_with_sum(k, g, 1, [&](const std::vector<int>& gs) {
      tuples_with_sum(k, 2 * g - k + 1, 0, [&](const std::vector<int>& ds) {
        for (int l = 1; l <= k - 1; ++l)
          if (sum(ds, std::size_t(l)) + l - 1 > 2 * sum(gs, std::size_t(l)) - 1) return;
        out.add(chain(gs, ds), bamboo::Rational(k % 2 == 1 ? 1 : -1));
      });
    });
  }
  return out;
}

/// Number of (k, g-tuple, d-tuple) triples in the definition of B^g.
inline long B_term_count(int g) {
  long n = 0;
  for (int k = 1; k <= g; ++k)
    tuples_with_sum(k, g, 1, [&](const std::vector<int>& gs) {
      tuples_with_sum(k, 2 * g - k + 1, 0, [&](const std::vector<int>& ds) {
        for (int l = 1; l <= k - 1; ++l)
          if (sum(ds, std::size_t(l)) + l - 1 > 2 * sum(gs, std::size_t(l)) - 1) return;
        ++n;
      });
    });
  return n;
}

/// c-arrow classes straight from the definition.
inline bamboo::FormalSum c_arrow(int g, int d, int k) {
  bamboo::FormalSum out;
  if (k < 1) return out;
  tuples_with_sum(k, g, 1, [&](const std::vector<int>& gs) {
    tuples_with_sum(k, d - k + 1, 0, [&](const std::vector<int>& ds) {
      for (int l = 1; l <= k; ++l)
        if (sum(ds, std::size_t(l)) + l - 1 > 2 * sum(gs, std::size_t(l)) - 1) return;
      out.add(chain(gs, ds), bamboo::Rational(1));
    });
  });
  return out;
}

/// One-pointed B^g_{2g-1} straight from its definition.
inline bamboo::FormalSum B_onepoint(int g) {
  bamboo::FormalSum out;
  for (int k = 1; k <= g; ++k) {
    tuples_with_sum(k, g, 1, [&](const std::vector<int>& gs) {
      tuples_with_sum(k, 2 * g - k, 0, [&](const std::vector<int>& as) {
        for (int l = 1; l <= k - 1; ++l)
          if (sum(as, std::size_t(l)) + l - 1 > 2 * sum(gs, std::size_t(l)) - 2) return;
        bamboo::Bamboo b;
        b.left_leg = 0;
        b.right_leg = 1;
        for (std::size_t i = 0; i < gs.size(); ++i) b.vertices.push_back(bamboo::Vertex{gs[i], 0, as[i], std::nullopt});
        out.add(bamboo::make_term(b), bamboo::Rational(k % 2 == 1 ? 1 : -1));
      });
    });
  }
  return out;
}

}  // namespace oracle

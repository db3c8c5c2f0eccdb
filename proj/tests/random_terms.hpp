#pragma once

#include "bamboo/core.hpp"

#include <random>

namespace testing_util {

/// Random two-pointed bamboo with 1..max_len vertices of genus 1..3.
inline bamboo::Term random_two_pointed(std::mt19937& rng, int max_len = 4, int max_psi = 4) {
  std::uniform_int_distribution<int> len(1, max_len), gen(1, 3), psi(0, max_psi);
  bamboo::Bamboo b;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) b.vertices.push_back(bamboo::Vertex{gen(rng), psi(rng), psi(rng), std::nullopt});
  return bamboo::make_term(b);
}

/// Random three-pointed bamboo, possibly with a rational vertex carrying leg 3.
inline bamboo::Term random_three_pointed(std::mt19937& rng, int max_len = 4, int max_psi = 3) {
  bamboo::Term t = random_two_pointed(rng, max_len, max_psi);
  auto& vs = t.bamboo.vertices;
  std::uniform_int_distribution<std::size_t> pos(0, vs.size() - 1);
  if (std::bernoulli_distribution(0.3)(rng) && vs.size() >= 2) {
    const std::size_t i = 1 + pos(rng) % (vs.size() - 1);
    vs.insert(vs.begin() + long(i), bamboo::Vertex{0, 0, 0, 0});
  } else {
    vs[pos(rng)].extra_psi = std::uniform_int_distribution<int>(0, max_psi)(rng);
  }
  t.bamboo.extra_leg = 3;
  return bamboo::make_term(t.bamboo);
}

}  // namespace testing_util

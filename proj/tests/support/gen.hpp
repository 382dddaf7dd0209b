#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dcmon/dc/ast.hpp"
#include "oracle.hpp"

namespace dcmon::testing {

/// Seeded helper over mt19937_64.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v.at(static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(v.size()) - 1)));
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

struct GenOptions {
  std::vector<dc::Observable> schema;
  std::vector<std::string> globals;
  std::vector<std::string> domains;  // named quantifier domains
  bool quantifiers = true;
  bool temporal = true;  // chop, box, diamond
};

/// Horizon in [1, max_horizon], 1..max_obs observables named A, B, C, D;
/// every third observable ranges over {0, 1, 2}.
DenseTrace random_dense(Gen& g, dc::Tick max_horizon = 20, std::size_t max_obs = 4);

dc::State random_state(Gen& g, const std::vector<dc::Observable>& schema, int depth);
dc::Term random_term(Gen& g, const GenOptions& opt, int depth,
                     const std::vector<std::string>& bound = {});
/// Formula with dc::depth(f) <= depth. Division only by non-zero literals.
dc::Formula random_formula(Gen& g, const GenOptions& opt, int depth,
                           std::vector<std::string> bound = {});

Rational random_decimal(Gen& g);

}  // namespace dcmon::testing

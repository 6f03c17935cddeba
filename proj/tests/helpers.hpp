#pragma once

// Shared generators for randomized exact-arithmetic tests.

#include "qsa/builtins.hpp"
#include "qsa/polynomial.hpp"
#include "qsa/rng.hpp"
#include "qsa/superspace.hpp"

namespace qsa::testing {

inline Rational small_rational(CounterRng& rng) {
  return Rational(static_cast<long>(rng.next_u64() % 19) - 9, 1 + (rng.next_u64() % 7));
}

inline Element<Rational> random_element(const StructureTable<Rational>& t, CounterRng& rng) {
  Element<Rational> a(t.dim());
  for (int k = 0; k < t.dim(); ++k) a[k] = small_rational(rng);
  return a;
}

inline SuperPoint<Rational> random_point(const Superspace<Rational>& sp, CounterRng& rng) {
  auto x = zero_point(sp);
  for (int i = 0; i < sp.n; ++i)
    for (int j = 0; j <= sp.p(); ++j) x.y[i][j] = small_rational(rng);
  for (int i = 0; i < sp.m; ++i)
    for (int l = 1; l <= sp.q(); ++l) x.theta[i][sp.p() + l] = small_rational(rng);
  return x;
}

/// Random hypervariable polynomial with total degree <= max_degree.
inline QsPoly<Rational> random_qs_poly(const Superspace<Rational>& sp, CounterRng& rng,
                                       int max_degree, int terms = 5) {
  QsPoly<Rational> p;
  int nvars = qs_key_length(sp);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> key(nvars, 0);
    int budget = static_cast<int>(rng.next_u64() % (max_degree + 1));
    for (int step = 0; step < budget; ++step) ++key[rng.next_u64() % nvars];
    qs_add_term(p, key, random_element(sp.table, rng));
  }
  return p;
}

}  // namespace qsa::testing

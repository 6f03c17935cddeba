#pragma once

// Points of Lambda_0^n x Lambda_1^m and the flat real-coordinate view of
// length N = n(p+1) + mq, ordered (y_1^0..y_1^p, ..., theta_1^1..theta_1^q, ...).

#include <vector>

#include "qsa/algebra.hpp"
#include "qsa/conditions.hpp"

namespace qsa {

template <class T>
struct Superspace {
  StructureTable<T> table;
  SliceSpec<T> slices;
  int n = 0;
  int m = 0;

  Superspace(StructureTable<T> t, SliceSpec<T> s, int n_, int m_)
      : table(std::move(t)), slices(std::move(s)), n(n_), m(m_) {
    if (n < 0 || m < 0) throw StructuralError("Superspace: negative variable count");
    if (m > 0 && static_cast<int>(slices.multipliers.size()) != table.q())
      throw StructuralError("Superspace: slice spec does not cover the odd part");
  }

  int p() const { return table.p(); }
  int q() const { return table.q(); }
  int r() const { return slices.r(); }
  int N() const { return n * (p() + 1) + m * q(); }

  /// Flat index of y_i^j (i 0-based, 0 <= j <= p).
  int flat_even(int i, int j) const { return i * (p() + 1) + j; }
  /// Flat index of theta_i^l (i 0-based, l 1-based).
  int flat_odd(int i, int l) const { return n * (p() + 1) + i * q() + (l - 1); }
};

template <class T>
struct SuperPoint {
  std::vector<Element<T>> y;      // n even elements
  std::vector<Element<T>> theta;  // m odd elements
};

template <class T>
SuperPoint<T> zero_point(const Superspace<T>& sp) {
  SuperPoint<T> x;
  x.y.assign(sp.n, Element<T>(sp.table.dim()));
  x.theta.assign(sp.m, Element<T>(sp.table.dim()));
  return x;
}

template <class T>
std::vector<T> flatten(const Superspace<T>& sp, const SuperPoint<T>& x) {
  std::vector<T> out(sp.N(), T(0));
  for (int i = 0; i < sp.n; ++i)
    for (int j = 0; j <= sp.p(); ++j) out[sp.flat_even(i, j)] = x.y[i][j];
  for (int i = 0; i < sp.m; ++i)
    for (int l = 1; l <= sp.q(); ++l) out[sp.flat_odd(i, l)] = x.theta[i][sp.p() + l];
  return out;
}

template <class T>
SuperPoint<T> unflatten(const Superspace<T>& sp, const std::vector<T>& flat) {
  if (static_cast<int>(flat.size()) != sp.N())
    throw StructuralError("unflatten: expected a vector of length N");
  SuperPoint<T> x = zero_point(sp);
  for (int i = 0; i < sp.n; ++i)
    for (int j = 0; j <= sp.p(); ++j) x.y[i][j] = flat[sp.flat_even(i, j)];
  for (int i = 0; i < sp.m; ++i)
    for (int l = 1; l <= sp.q(); ++l) x.theta[i][sp.p() + l] = flat[sp.flat_odd(i, l)];
  return x;
}

template <class To, class From>
SuperPoint<To> convert_point(const SuperPoint<From>& x) {
  SuperPoint<To> out;
  for (const auto& v : x.y) out.y.push_back(convert_element<To>(v));
  for (const auto& v : x.theta) out.theta.push_back(convert_element<To>(v));
  return out;
}

template <class To, class From>
Superspace<To> convert_space(const Superspace<From>& sp) {
  SliceSpec<To> s;
  s.breakpoints = sp.slices.breakpoints;
  for (const auto& a : sp.slices.multipliers) s.multipliers.push_back(convert_element<To>(a));
  return Superspace<To>(convert_table<To>(sp.table), std::move(s), sp.n, sp.m);
}

}  // namespace qsa

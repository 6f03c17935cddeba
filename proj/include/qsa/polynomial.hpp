#pragma once

// Lambda-valued polynomials in the N real coordinates (RealPoly) and in the
// hypervariables y_i, Z_k(theta_i) (QsPoly), with exact expansion between
// the two, the d'' and d' operators, Taylor coefficients, and the Laplacian.
//
// Multiplication-side contract, kept bit-exact throughout: the d'' even
// component is dP/dy_i^j - e_j * (dP/dy_i^0) with e_j on the LEFT, the odd
// component is dP/dtheta_l^t - (dP/dtheta_l^{s_k}) * a_t with a_t on the
// RIGHT, and QsPoly evaluation puts the coefficient A on the LEFT of its
// monomial.

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "qsa/superspace.hpp"

namespace qsa {

// ---------------------------------------------------------------------------
// RealPoly: finitely supported map from coordinate multi-indices.

template <class T>
struct RealPoly {
  std::map<std::vector<int>, Element<T>> terms;
};

template <class T>
bool poly_is_zero(const RealPoly<T>& p) {
  return p.terms.empty();
}

template <class T>
void poly_add_term(RealPoly<T>& p, const std::vector<int>& idx, const Element<T>& coeff) {
  if (is_zero(coeff)) return;
  auto it = p.terms.find(idx);
  if (it == p.terms.end()) {
    p.terms.emplace(idx, coeff);
    return;
  }
  it->second += coeff;
  if (is_zero(it->second)) p.terms.erase(it);
}

template <class T>
RealPoly<T> poly_add(const RealPoly<T>& a, const RealPoly<T>& b) {
  RealPoly<T> out = a;
  for (const auto& [idx, c] : b.terms) poly_add_term(out, idx, c);
  return out;
}

template <class T>
RealPoly<T> poly_sub(const RealPoly<T>& a, const RealPoly<T>& b) {
  RealPoly<T> out = a;
  for (const auto& [idx, c] : b.terms) poly_add_term(out, idx, -c);
  return out;
}

template <class T>
RealPoly<T> poly_scale_left(const Element<T>& a, const RealPoly<T>& p,
                            const StructureTable<T>& t) {
  RealPoly<T> out;
  for (const auto& [idx, c] : p.terms) poly_add_term(out, idx, multiply(a, c, t));
  return out;
}

template <class T>
RealPoly<T> poly_scale_right(const RealPoly<T>& p, const Element<T>& a,
                             const StructureTable<T>& t) {
  RealPoly<T> out;
  for (const auto& [idx, c] : p.terms) poly_add_term(out, idx, multiply(c, a, t));
  return out;
}

template <class T>
RealPoly<T> poly_mul(const RealPoly<T>& a, const RealPoly<T>& b, const StructureTable<T>& t) {
  RealPoly<T> out;
  std::vector<int> idx;
  for (const auto& [ia, ca] : a.terms)
    for (const auto& [ib, cb] : b.terms) {
      idx = ia;
      for (std::size_t c = 0; c < idx.size(); ++c) idx[c] += ib[c];
      poly_add_term(out, idx, multiply(ca, cb, t));
    }
  return out;
}

template <class T>
RealPoly<T> poly_derivative(const RealPoly<T>& p, int coord) {
  RealPoly<T> out;
  for (const auto& [idx, c] : p.terms) {
    if (idx[coord] == 0) continue;
    auto didx = idx;
    --didx[coord];
    poly_add_term(out, didx, c * T(idx[coord]));
  }
  return out;
}

template <class T>
Element<T> poly_eval(const RealPoly<T>& p, const std::vector<T>& flat, int dim) {
  Element<T> out(dim);
  for (const auto& [idx, c] : p.terms) {
    T mono(1);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (int k = 0; k < idx[i]; ++k) mono *= flat[i];
    out += c * mono;
  }
  return out;
}

template <class T>
int poly_total_degree(const RealPoly<T>& p) {
  int deg = 0;
  for (const auto& [idx, c] : p.terms) {
    int d = 0;
    for (int e : idx) d += e;
    deg = std::max(deg, d);
  }
  return deg;
}

// ---------------------------------------------------------------------------
// QsPoly: map from (I, J_1..J_r) to A_{I,J}.  Key layout: n entries of I,
// then m entries per slice k = 1..r.

template <class T>
struct QsPoly {
  std::map<std::vector<int>, Element<T>> terms;
};

template <class T>
int qs_key_length(const Superspace<T>& sp) {
  return sp.n + sp.r() * sp.m;
}

template <class T>
void qs_add_term(QsPoly<T>& p, const std::vector<int>& idx, const Element<T>& coeff) {
  if (is_zero(coeff)) return;
  auto it = p.terms.find(idx);
  if (it == p.terms.end()) {
    p.terms.emplace(idx, coeff);
    return;
  }
  it->second += coeff;
  if (is_zero(it->second)) p.terms.erase(it);
}

/// Z_k(theta) = sum over the k-th slice of theta^l * a_l; an even element.
template <class T>
Element<T> slice_variable(const Element<T>& theta, int k, const SliceSpec<T>& s,
                          const StructureTable<T>& t) {
  if (k < 1 || k > s.r()) throw StructuralError("slice_variable: slice index out of range");
  Element<T> out(t.dim());
  for (int l = s.breakpoints[k - 1]; l < s.breakpoints[k]; ++l)
    out += s.multipliers[l - 1] * theta[t.p() + l];
  return out;
}

template <class T>
Element<T> elem_pow(const Element<T>& a, int k, const StructureTable<T>& t) {
  Element<T> out = unit(t);
  for (int i = 0; i < k; ++i) out = multiply(out, a, t);
  return out;
}

/// Sum of A_{I,J} (y-b)^I prod_k (Z_k(theta-beta))^{J_k}, coefficient on the
/// left; the variable factors are even, hence central, so their order is
/// immaterial (they are still multiplied in the printed order).
template <class T>
Element<T> eval_qs(const QsPoly<T>& p, const SuperPoint<T>& x, const SuperPoint<T>& center,
                   const Superspace<T>& sp) {
  Element<T> out(sp.table.dim());
  for (const auto& [key, A] : p.terms) {
    Element<T> factor = unit(sp.table);
    for (int i = 0; i < sp.n; ++i)
      if (key[i] > 0) factor = multiply(factor, elem_pow(x.y[i] - center.y[i], key[i], sp.table), sp.table);
    for (int k = 1; k <= sp.r(); ++k)
      for (int i = 0; i < sp.m; ++i) {
        int e = key[sp.n + (k - 1) * sp.m + i];
        if (e == 0) continue;
        Element<T> z = slice_variable(x.theta[i] - center.theta[i], k, sp.slices, sp.table);
        factor = multiply(factor, elem_pow(z, e, sp.table), sp.table);
      }
    out += multiply(A, factor, sp.table);
  }
  return out;
}

/// Exact expansion into the N real coordinates.
template <class T>
RealPoly<T> qs_to_real(const QsPoly<T>& p, const SuperPoint<T>& center, const Superspace<T>& sp) {
  int N = sp.N();
  std::vector<int> zero(N, 0);

  // linear polynomials for y_i - b_i and Z_k(theta_i - beta_i)
  auto factor_even = [&](int i) {
    RealPoly<T> f;
    for (int j = 0; j <= sp.p(); ++j) {
      auto idx = zero;
      idx[sp.flat_even(i, j)] = 1;
      poly_add_term(f, idx, basis_element(sp.table, j));
    }
    poly_add_term(f, zero, -center.y[i]);
    return f;
  };
  auto factor_slice = [&](int k, int i) {
    RealPoly<T> f;
    for (int l = sp.slices.breakpoints[k - 1]; l < sp.slices.breakpoints[k]; ++l) {
      auto idx = zero;
      idx[sp.flat_odd(i, l)] = 1;
      poly_add_term(f, idx, sp.slices.multipliers[l - 1]);
    }
    poly_add_term(f, zero, -slice_variable(center.theta[i], k, sp.slices, sp.table));
    return f;
  };

  RealPoly<T> out;
  for (const auto& [key, A] : p.terms) {
    RealPoly<T> acc;
    poly_add_term(acc, zero, A);
    for (int i = 0; i < sp.n; ++i) {
      auto f = factor_even(i);
      for (int e = 0; e < key[i]; ++e) acc = poly_mul(acc, f, sp.table);
    }
    for (int k = 1; k <= sp.r(); ++k)
      for (int i = 0; i < sp.m; ++i) {
        int e = key[sp.n + (k - 1) * sp.m + i];
        if (e == 0) continue;
        auto f = factor_slice(k, i);
        for (int ee = 0; ee < e; ++ee) acc = poly_mul(acc, f, sp.table);
      }
    out = poly_add(out, acc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// The antiholomorphic-type operator d'' and its complement d'.

/// All (0,1)-directions of the space: even pairs (i, j>=1) and odd pairs
/// (i, t) with t not a breakpoint, as flat coordinate indices.
template <class T>
std::vector<int> d_second_directions(const Superspace<T>& sp) {
  std::vector<int> dirs;
  for (int i = 0; i < sp.n; ++i)
    for (int j = 1; j <= sp.p(); ++j) dirs.push_back(sp.flat_even(i, j));
  for (int i = 0; i < sp.m; ++i)
    for (int t = 1; t <= sp.q(); ++t)
      if (!sp.slices.is_breakpoint(t)) dirs.push_back(sp.flat_odd(i, t));
  return dirs;
}

/// d''P: one polynomial per (0,1)-direction, keyed by flat coordinate.
template <class T>
std::map<int, RealPoly<T>> d_second(const RealPoly<T>& p, const Superspace<T>& sp) {
  std::map<int, RealPoly<T>> out;
  for (int i = 0; i < sp.n; ++i) {
    auto anchor = poly_derivative(p, sp.flat_even(i, 0));
    for (int j = 1; j <= sp.p(); ++j) {
      auto comp = poly_sub(poly_derivative(p, sp.flat_even(i, j)),
                           poly_scale_left(basis_element(sp.table, j), anchor, sp.table));
      out.emplace(sp.flat_even(i, j), std::move(comp));
    }
  }
  for (int i = 0; i < sp.m; ++i)
    for (int k = 1; k <= sp.r(); ++k) {
      auto anchor = poly_derivative(p, sp.flat_odd(i, sp.slices.breakpoints[k - 1]));
      for (int t = sp.slices.breakpoints[k - 1]; t < sp.slices.breakpoints[k]; ++t) {
        if (sp.slices.is_breakpoint(t)) continue;
        auto comp = poly_sub(poly_derivative(p, sp.flat_odd(i, t)),
                             poly_scale_right(anchor, sp.slices.multipliers[t - 1], sp.table));
        out.emplace(sp.flat_odd(i, t), std::move(comp));
      }
    }
  return out;
}

template <class T>
struct DPrimeParts {
  std::vector<RealPoly<T>> even;              // n entries: dP/dy_i^0
  std::vector<std::vector<RealPoly<T>>> odd;  // [i][k-1]: dP/dtheta_i^{s_k}
};

/// d'P: the coefficients of dY_i and dZ_k(theta_i).
template <class T>
DPrimeParts<T> d_prime(const RealPoly<T>& p, const Superspace<T>& sp) {
  DPrimeParts<T> out;
  for (int i = 0; i < sp.n; ++i) out.even.push_back(poly_derivative(p, sp.flat_even(i, 0)));
  out.odd.resize(sp.m);
  for (int i = 0; i < sp.m; ++i)
    for (int k = 1; k <= sp.r(); ++k)
      out.odd[i].push_back(poly_derivative(p, sp.flat_odd(i, sp.slices.breakpoints[k - 1])));
  return out;
}

template <class T>
bool is_qs_differentiable(const RealPoly<T>& p, const Superspace<T>& sp) {
  for (const auto& [dir, comp] : d_second(p, sp))
    if (!poly_is_zero(comp)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Taylor machinery.

/// A_{I,J} from mixed partials at the center: I! J_1! ... J_r! A_{I,J} =
/// the partial of P taken I_i times along y_i^0 and J_{k,i} times along
/// theta_i^{s_k}.  Requires d''P = 0.
template <class T>
QsPoly<T> taylor_coefficients(const RealPoly<T>& p, const SuperPoint<T>& center, int max_degree,
                              const Superspace<T>& sp) {
  if (!is_qs_differentiable(p, sp))
    throw NotQs("taylor_coefficients: the polynomial has nonzero d'' components");

  int nvars = qs_key_length(sp);
  std::vector<int> anchor_coord(nvars);
  for (int i = 0; i < sp.n; ++i) anchor_coord[i] = sp.flat_even(i, 0);
  for (int k = 1; k <= sp.r(); ++k)
    for (int i = 0; i < sp.m; ++i)
      anchor_coord[sp.n + (k - 1) * sp.m + i] = sp.flat_odd(i, sp.slices.breakpoints[k - 1]);

  auto flat_center = flatten(sp, center);
  QsPoly<T> out;
  std::vector<int> key(nvars, 0);

  std::function<void(int, const RealPoly<T>&, int, T)> walk = [&](int v, const RealPoly<T>& cur,
                                                                  int degree_left, T fact) {
    if (poly_is_zero(cur)) return;
    if (v == nvars) {
      Element<T> A = poly_eval(cur, flat_center, sp.table.dim());
      A *= T(1) / fact;
      qs_add_term(out, key, A);
      return;
    }
    RealPoly<T> d = cur;
    for (int e = 0; e <= degree_left; ++e) {
      key[v] = e;
      walk(v + 1, d, degree_left - e, fact * factorial_of<T>(e));
      if (e < degree_left) d = poly_derivative(d, anchor_coord[v]);
      if (poly_is_zero(d)) break;
    }
    key[v] = 0;
  };
  walk(0, p, max_degree, T(1));
  return out;
}

/// Inverse of qs_to_real on d''-closed polynomials.
template <class T>
QsPoly<T> real_to_qs(const RealPoly<T>& p, const SuperPoint<T>& center, const Superspace<T>& sp) {
  return taylor_coefficients(p, center, poly_total_degree(p), sp);
}

/// Sum of second partials over all N coordinates.
template <class T>
RealPoly<T> laplacian(const RealPoly<T>& p, const Superspace<T>& sp) {
  RealPoly<T> out;
  for (int c = 0; c < sp.N(); ++c)
    out = poly_add(out, poly_derivative(poly_derivative(p, c), c));
  return out;
}

// ---------------------------------------------------------------------------
// Finite-difference probe for black-box functions.

/// Central-difference d'' components of f at x with step h, keyed like
/// d_second.  Anchor derivatives are computed once per variable.
inline std::map<int, Element<double>> fd_d_second(
    const std::function<Element<double>(const SuperPoint<double>&)>& f, const SuperPoint<double>& x,
    double h, const Superspace<double>& sp) {
  if (!(h > 0.0)) throw StructuralError("fd_d_second: step must be positive");
  auto flat = flatten(sp, x);
  auto diff = [&](int c) {
    auto probe = flat;
    probe[c] = flat[c] + h;
    Element<double> hi = f(unflatten(sp, probe));
    probe[c] = flat[c] - h;
    Element<double> lo = f(unflatten(sp, probe));
    return (hi - lo) * (0.5 / h);
  };

  std::map<int, Element<double>> out;
  for (int i = 0; i < sp.n; ++i) {
    Element<double> anchor = diff(sp.flat_even(i, 0));
    for (int j = 1; j <= sp.p(); ++j)
      out.emplace(sp.flat_even(i, j),
                  diff(sp.flat_even(i, j)) -
                      multiply(basis_element(sp.table, j), anchor, sp.table));
  }
  for (int i = 0; i < sp.m; ++i)
    for (int k = 1; k <= sp.r(); ++k) {
      Element<double> anchor = diff(sp.flat_odd(i, sp.slices.breakpoints[k - 1]));
      for (int t = sp.slices.breakpoints[k - 1]; t < sp.slices.breakpoints[k]; ++t) {
        if (sp.slices.is_breakpoint(t)) continue;
        out.emplace(sp.flat_odd(i, t),
                    diff(sp.flat_odd(i, t)) -
                        multiply(anchor, sp.slices.multipliers[t - 1], sp.table));
      }
    }
  return out;
}

}  // namespace qsa

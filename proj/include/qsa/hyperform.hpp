#pragma once

// (N-1)-forms over the flat coordinates: omega = sum_a c_a * hat(a), where
// hat(a) is the volume form with dx^a omitted and the remaining factors kept
// in increasing coordinate order.  The basis carries no sign of its own;
// every (-1)^a lives in wedge_one_into_hat and in the boundary contraction
// (quadrature module), so there is a single place where orientation
// bookkeeping can go wrong and it is unit-tested in isolation.

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qsa/superspace.hpp"

namespace qsa {

struct HyperForm {
  int dim = 0;      // ambient coordinate count N
  int alg_dim = 0;  // dimension of the coefficient algebra
  std::map<int, Element<double>> coeffs;

  HyperForm() = default;
  HyperForm(int ambient, int algebra_dim) : dim(ambient), alg_dim(algebra_dim) {}

  Element<double> coeff(int a) const {
    auto it = coeffs.find(a);
    return it != coeffs.end() ? it->second : Element<double>(alg_dim);
  }
};

inline void hf_add(HyperForm& w, int a, const Element<double>& c) {
  if (is_zero(c)) return;
  auto it = w.coeffs.find(a);
  if (it == w.coeffs.end()) {
    w.coeffs.emplace(a, c);
    return;
  }
  it->second += c;
  if (is_zero(it->second)) w.coeffs.erase(it);
}

struct WedgeResult {
  int sign;  // +1 or -1
  int omit;  // the single index the resulting hat form omits
};

/// dx^l wedged into the hat form omitting the pair {a, b}.  Zero (nullopt)
/// unless l is one of the omitted pair; otherwise the factor slots into
/// place after passing one transposition per retained coordinate below l.
inline std::optional<WedgeResult> wedge_one_into_hat(int l, std::pair<int, int> omitted) {
  auto [a, b] = omitted;
  if (a == b) throw StructuralError("wedge_one_into_hat: omitted pair must be distinct");
  if (l != a && l != b) return std::nullopt;
  int below = 0;
  for (int k = 0; k < l; ++k)
    if (k != a && k != b) ++below;
  return WedgeResult{below % 2 == 0 ? 1 : -1, l == a ? b : a};
}

namespace detail {

/// Central-difference probes of a HyperForm field along every coordinate.
struct FormProbes {
  std::vector<HyperForm> hi, lo;
  double h;

  FormProbes(const std::function<HyperForm(const SuperPoint<double>&)>& field,
             const SuperPoint<double>& x, double step, const Superspace<double>& sp)
      : hi(sp.N()), lo(sp.N()), h(step) {
    if (!(h > 0.0)) throw StructuralError("form derivative: step must be positive");
    auto flat = flatten(sp, x);
    for (int c = 0; c < sp.N(); ++c) {
      auto probe = flat;
      probe[c] = flat[c] + h;
      hi[c] = field(unflatten(sp, probe));
      probe[c] = flat[c] - h;
      lo[c] = field(unflatten(sp, probe));
    }
  }

  /// d(coefficient a)/dx^c
  Element<double> partial(int c, int a) const {
    return (hi[c].coeff(a) - lo[c].coeff(a)) * (0.5 / h);
  }
};

}  // namespace detail

/// Volume-form coefficient of d''(field) at x, by central differences.
/// Wedging the 1-form component dx^h into hat(a) kills everything except
/// h = a, so the result is sum_a (-1)^a (d''-component along a of c_a),
/// with the usual sides: e_j on the left for even directions, the slice
/// multiplier on the right for odd ones.
inline Element<double> fd_d_second_form(
    const std::function<HyperForm(const SuperPoint<double>&)>& field, const SuperPoint<double>& x,
    double h, const Superspace<double>& sp) {
  detail::FormProbes pr(field, x, h, sp);
  Element<double> out(sp.table.dim());
  auto add_signed = [&](int a, const Element<double>& comp) {
    if (a % 2 == 0)
      out += comp;
    else
      out -= comp;
  };
  for (int i = 0; i < sp.n; ++i) {
    int anchor = sp.flat_even(i, 0);
    for (int j = 1; j <= sp.p(); ++j) {
      int a = sp.flat_even(i, j);
      add_signed(a, pr.partial(a, a) -
                        multiply(basis_element(sp.table, j), pr.partial(anchor, a), sp.table));
    }
  }
  for (int i = 0; i < sp.m; ++i)
    for (int k = 1; k <= sp.r(); ++k) {
      int anchor = sp.flat_odd(i, sp.slices.breakpoints[k - 1]);
      for (int t = sp.slices.breakpoints[k - 1]; t < sp.slices.breakpoints[k]; ++t) {
        if (sp.slices.is_breakpoint(t)) continue;
        int a = sp.flat_odd(i, t);
        add_signed(a, pr.partial(a, a) -
                          multiply(pr.partial(anchor, a), sp.slices.multipliers[t - 1], sp.table));
      }
    }
  return out;
}

/// Volume-form coefficient of d'(field) at x.  The anchor derivative of c_a
/// pairs with the matching coefficient of dY_i or dZ_k; those multipliers
/// are even, hence central, so the multiplication side is immaterial here.
inline Element<double> fd_d_prime_form(
    const std::function<HyperForm(const SuperPoint<double>&)>& field, const SuperPoint<double>& x,
    double h, const Superspace<double>& sp) {
  detail::FormProbes pr(field, x, h, sp);
  Element<double> out(sp.table.dim());
  auto add_signed = [&](int a, const Element<double>& comp) {
    if (a % 2 == 0)
      out += comp;
    else
      out -= comp;
  };
  for (int i = 0; i < sp.n; ++i) {
    int anchor = sp.flat_even(i, 0);
    for (int j = 0; j <= sp.p(); ++j) {
      int a = sp.flat_even(i, j);
      add_signed(a, multiply(basis_element(sp.table, j), pr.partial(anchor, a), sp.table));
    }
  }
  for (int i = 0; i < sp.m; ++i)
    for (int k = 1; k <= sp.r(); ++k) {
      int anchor = sp.flat_odd(i, sp.slices.breakpoints[k - 1]);
      for (int t = sp.slices.breakpoints[k - 1]; t < sp.slices.breakpoints[k]; ++t) {
        int a = sp.flat_odd(i, t);
        add_signed(a, multiply(sp.slices.multipliers[t - 1], pr.partial(anchor, a), sp.table));
      }
    }
  return out;
}

}  // namespace qsa

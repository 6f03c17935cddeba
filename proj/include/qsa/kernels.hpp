#pragma once

// The fundamental-solution forms of d'' (even-only, odd-only, and the full
// mixed version) and the degree-zero reproducing kernel K.  Float-only: the
// normalizations carry pi and Gamma-function ball volumes, so exactness
// claims never apply to kernels.
//
// Orientation.  The global constant is +1/(N Vol(B_N)).  The sign is pinned
// by the constant-reproduction test: contracting K(., x') against the
// outward normal of a sphere around x' and integrating f = e0 over it
// returns +e0 with this choice (the opposite sign returns -e0).  The p = 1
// specialization then reproduces the classical Cauchy kernel dz/(2*pi*i*z)
// coefficient for coefficient.

#include <cmath>
#include <map>
#include <utility>

#include "qsa/hyperform.hpp"
#include "qsa/polynomial.hpp"

namespace qsa {

/// Even fundamental solution on a single even variable (ambient dim p+1):
///   [1/((p+1) Vol(B) ||y||^{p+1})] sum_{j=1..p} (-1)^j (y^0 e_j + y^j e_0)
///     (sum_k e_k dy^k) ^ hat{0, j}
/// Requires the working even basis to satisfy sum_k e_k^2 = 0.
inline HyperForm omega0_eval(const Element<double>& y, const StructureTable<double>& t) {
  const int p = t.p();
  const int N = p + 1;
  double nsq = 0.0;
  for (int j = 0; j <= p; ++j) nsq += y[j] * y[j];
  if (nsq == 0.0) throw SingularPoint("omega0_eval: pole at the origin");
  const double C = 1.0 / (N * unit_ball_volume(N) * std::pow(nsq, 0.5 * N));
  HyperForm w(N, t.dim());
  for (int j = 1; j <= p; ++j) {
    Element<double> numer = basis_element(t, j) * y[0] + basis_element(t, 0) * y[j];
    const double cj = (j % 2 == 0) ? C : -C;
    for (int k = 0; k <= p; ++k) {
      auto wk = wedge_one_into_hat(k, {0, j});
      if (!wk) continue;
      hf_add(w, wk->omit, multiply(numer, basis_element(t, k), t) * (cj * wk->sign));
    }
  }
  return w;
}

/// Odd fundamental solution on a single odd variable (ambient dim q):
///   [1/(q Vol(B) ||theta||^q)] sum_k sum_{j=s_k+1..s_{k+1}-1} (-1)^{j-1}
///     (theta^j e_0 + theta^{s_k} a_j) (sum_{l in slice k} a_l dtheta^l)
///     ^ hat{s_k, j}
/// Requires the slice decomposition conditions (a_{s_k} = e_0, per-slice
/// sum a_l^2 = 0).
inline HyperForm omega1_eval(const Element<double>& theta, const StructureTable<double>& t,
                             const SliceSpec<double>& s) {
  const int p = t.p();
  const int q = t.q();
  double nsq = 0.0;
  for (int l = 1; l <= q; ++l) nsq += theta[p + l] * theta[p + l];
  if (nsq == 0.0) throw SingularPoint("omega1_eval: pole at the origin");
  const double C = 1.0 / (q * unit_ball_volume(q) * std::pow(nsq, 0.5 * q));
  HyperForm w(q, t.dim());
  for (int k = 1; k <= s.r(); ++k) {
    const int sk = s.breakpoints[k - 1];
    for (int j = sk + 1; j < s.breakpoints[k]; ++j) {
      Element<double> numer = unit(t) * theta[p + j] + s.multipliers[j - 1] * theta[p + sk];
      const double cj = (j % 2 == 1) ? C : -C;
      for (int l = sk; l < s.breakpoints[k]; ++l) {
        auto wk = wedge_one_into_hat(l - 1, {sk - 1, j - 1});
        if (!wk) continue;
        hf_add(w, wk->omit, multiply(numer, s.multipliers[l - 1], t) * (cj * wk->sign));
      }
    }
  }
  return w;
}

/// Full fundamental solution over the flat coordinates of Lambda_0^n x
/// Lambda_1^m: the two double sums above assembled with global coordinate
/// indices and the single constant 1/(N Vol(B_N) ||x||^N).  Reduces exactly
/// to omega0_eval at (n,m) = (1,0) and to omega1_eval at (0,1).
inline HyperForm omega_full_eval(const SuperPoint<double>& x, const Superspace<double>& sp) {
  const int N = sp.N();
  const int p = sp.p();
  const auto& t = sp.table;
  double nsq = 0.0;
  for (double c : flatten(sp, x)) nsq += c * c;
  if (nsq == 0.0) throw SingularPoint("omega_full_eval: pole at the origin");
  const double C = 1.0 / (N * unit_ball_volume(N) * std::pow(nsq, 0.5 * N));
  HyperForm w(N, t.dim());
  for (int i = 0; i < sp.n; ++i)
    for (int j = 1; j <= p; ++j) {
      Element<double> numer = unit(t) * x.y[i][j] + basis_element(t, j) * x.y[i][0];
      const double cj = (j % 2 == 0) ? C : -C;
      const std::pair<int, int> omitted{sp.flat_even(i, 0), sp.flat_even(i, j)};
      for (int k = 0; k <= p; ++k) {
        auto wk = wedge_one_into_hat(sp.flat_even(i, k), omitted);
        if (!wk) continue;
        hf_add(w, wk->omit, multiply(numer, basis_element(t, k), t) * (cj * wk->sign));
      }
    }
  for (int i = 0; i < sp.m; ++i)
    for (int k = 1; k <= sp.r(); ++k) {
      const int sk = sp.slices.breakpoints[k - 1];
      for (int l = sk + 1; l < sp.slices.breakpoints[k]; ++l) {
        Element<double> numer = unit(t) * x.theta[i][p + l] +
                                sp.slices.multipliers[l - 1] * x.theta[i][p + sk];
        const double cl = (l % 2 == 1) ? C : -C;
        const std::pair<int, int> omitted{sp.flat_odd(i, sk), sp.flat_odd(i, l)};
        for (int u = sk; u < sp.slices.breakpoints[k]; ++u) {
          auto wk = wedge_one_into_hat(sp.flat_odd(i, u), omitted);
          if (!wk) continue;
          hf_add(w, wk->omit, multiply(numer, sp.slices.multipliers[u - 1], t) * (cl * wk->sign));
        }
      }
    }
  return w;
}

inline SuperPoint<double> point_sub(const SuperPoint<double>& a, const SuperPoint<double>& b) {
  SuperPoint<double> d = a;
  for (std::size_t i = 0; i < d.y.size(); ++i) d.y[i] -= b.y[i];
  for (std::size_t i = 0; i < d.theta.size(); ++i) d.theta[i] -= b.theta[i];
  return d;
}

/// Degree-zero reproducing kernel: the fundamental solution pulled back
/// through (x, x') -> x - x', all differentials taken in x.  Translation
/// invariant by construction; every coefficient is even (Lambda_0-valued).
inline HyperForm kernel_K(const SuperPoint<double>& x, const SuperPoint<double>& x_prime,
                          const Superspace<double>& sp) {
  SuperPoint<double> d = point_sub(x, x_prime);
  double nsq = 0.0;
  for (double c : flatten(sp, d)) nsq += c * c;
  if (nsq == 0.0) throw SingularPoint("kernel_K: evaluation on the diagonal");
  return omega_full_eval(d, sp);
}

/// Polynomial numerator A of the even fundamental solution, one RealPoly per
/// omitted index over the p+1 coordinates of a single even variable (the
/// kernel equals A divided by its radial normalization).  Its d'' is the
/// constant (p+1) e_0 dV, so the unit-ball integral is (p+1) e_0 Vol(B) --
/// the normalization property checked by Monte Carlo in the acceptance
/// battery.
inline std::map<int, RealPoly<double>> omega0_numerator(const StructureTable<double>& t) {
  const int p = t.p();
  std::map<int, RealPoly<double>> A;
  for (int j = 1; j <= p; ++j) {
    RealPoly<double> numer;
    std::vector<int> idx(p + 1, 0);
    idx[0] = 1;
    poly_add_term(numer, idx, basis_element(t, j));
    idx[0] = 0;
    idx[j] = 1;
    poly_add_term(numer, idx, basis_element(t, 0));
    for (int k = 0; k <= p; ++k) {
      auto wk = wedge_one_into_hat(k, {0, j});
      if (!wk) continue;
      const double sgn = ((j % 2 == 0) ? 1.0 : -1.0) * wk->sign;
      RealPoly<double> contrib = poly_scale_right(numer, basis_element(t, k), t);
      for (auto& [ii, cc] : contrib.terms) cc *= sgn;
      A[wk->omit] = poly_add(A[wk->omit], contrib);
    }
  }
  return A;
}

}  // namespace qsa

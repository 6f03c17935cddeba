#pragma once

// Structural conditions on a superalgebra: the even-basis square-sum
// condition, the odd-part slice decomposition, Newton search for a central
// square root of -e0, and the complex pairing it induces.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsa/algebra.hpp"
#include "qsa/rng.hpp"

namespace qsa {

/// Slice decomposition of the odd coordinates: breakpoints s_1=1 < ... <
/// s_{r+1}=q+1 and even multipliers a_1..a_q with a_{s_k} = e0.  Slice k
/// covers coordinates s_k..s_{k+1}-1.
template <class T>
struct SliceSpec {
  std::vector<int> breakpoints;
  std::vector<Element<T>> multipliers;

  int r() const { return static_cast<int>(breakpoints.size()) - 1; }

  /// 1-based slice index containing odd coordinate j (1-based).
  int slice_of(int j) const {
    for (int k = 1; k <= r(); ++k)
      if (j >= breakpoints[k - 1] && j < breakpoints[k]) return k;
    throw StructuralError("SliceSpec: coordinate outside all slices");
  }

  bool is_breakpoint(int j) const {
    for (int k = 0; k < r(); ++k)
      if (breakpoints[k] == j) return true;
    return false;
  }
};

template <class T>
SliceSpec<T> trivial_slices() {
  return SliceSpec<T>{{1}, {}};
}

/// Structural sanity of a slice spec against a table; returns diagnostics,
/// empty when well-formed.
template <class T>
std::vector<std::string> slice_spec_problems(const StructureTable<T>& t, const SliceSpec<T>& s) {
  std::vector<std::string> out;
  if (s.breakpoints.empty() || s.breakpoints.front() != 1)
    out.push_back("breakpoints must start at 1");
  for (std::size_t i = 1; i < s.breakpoints.size(); ++i)
    if (s.breakpoints[i] <= s.breakpoints[i - 1]) out.push_back("breakpoints must increase strictly");
  if (!s.breakpoints.empty() && s.breakpoints.back() != t.q() + 1)
    out.push_back("last breakpoint must be q+1 = " + std::to_string(t.q() + 1));
  if (static_cast<int>(s.multipliers.size()) != t.q())
    out.push_back("expected q = " + std::to_string(t.q()) + " multipliers");
  double tol = is_exact_v<T> ? 0.0 : 1e-12;
  for (std::size_t j = 0; j < s.multipliers.size(); ++j)
    if (!is_even(s.multipliers[j], t, tol))
      out.push_back("multiplier a_" + std::to_string(j + 1) + " is not even");
  return out;
}

struct A0Report {
  bool pass = false;
  bool basis_ok = false;
  double residual = 0.0;
  std::vector<std::string> diagnostics;
};

/// Checks sum of squares of a supplied even basis of the even part.
/// basis[0] must be the unit; residual = ||sum b_k^2||.
template <class T>
A0Report verify_a0(const StructureTable<T>& t, const std::vector<Element<T>>& basis) {
  A0Report rep;
  double tol = is_exact_v<T> ? 0.0 : 1e-12;
  if (static_cast<int>(basis.size()) != t.p() + 1) {
    rep.diagnostics.push_back("expected p+1 = " + std::to_string(t.p() + 1) + " basis elements");
    return rep;
  }
  if (!(basis[0] == unit(t))) rep.diagnostics.push_back("basis[0] must be the unit e0");
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!is_even(basis[i], t, tol))
      rep.diagnostics.push_back("basis[" + std::to_string(i) + "] is not even");
  Matrix<T> m(static_cast<int>(basis.size()), t.p() + 1);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (int k = 0; k <= t.p(); ++k) m.at(static_cast<int>(i), k) = basis[i][k];
  rep.basis_ok = rank_of(m) == t.p() + 1;
  if (!rep.basis_ok) rep.diagnostics.push_back("NotABasis: supplied elements are dependent");
  if (!rep.diagnostics.empty()) return rep;

  Element<T> sum(t.dim());
  for (const auto& b : basis) sum += multiply(b, b, t);
  rep.residual = norm(sum);
  rep.pass = is_exact_v<T> ? is_zero(sum) : rep.residual < 1e-12;
  return rep;
}

struct A1Report {
  bool pass = false;
  bool basis_ok = false;
  std::vector<std::string> diagnostics;
  std::vector<double> slice_residuals;  // ||sum of a_j^2|| per slice
};

/// Checks the slice decomposition: eps_j = a_j * eps_{s_k}, a_{s_k} = e0,
/// and per-slice sum of squared multipliers equal to zero.
template <class T>
A1Report verify_a1(const StructureTable<T>& t, const std::vector<Element<T>>& eps_basis,
                   const SliceSpec<T>& s) {
  A1Report rep;
  double tol = is_exact_v<T> ? 0.0 : 1e-12;
  for (auto& p : slice_spec_problems(t, s)) rep.diagnostics.push_back(p);
  if (static_cast<int>(eps_basis.size()) != t.q())
    rep.diagnostics.push_back("expected q = " + std::to_string(t.q()) + " odd basis elements");
  if (!rep.diagnostics.empty()) return rep;

  for (std::size_t j = 0; j < eps_basis.size(); ++j)
    if (!is_odd(eps_basis[j], t, tol))
      rep.diagnostics.push_back("eps[" + std::to_string(j + 1) + "] is not odd");
  Matrix<T> m(t.q(), t.q());
  for (int j = 0; j < t.q(); ++j)
    for (int l = 0; l < t.q(); ++l) m.at(j, l) = eps_basis[j][t.p() + 1 + l];
  rep.basis_ok = rank_of(m) == t.q();
  if (!rep.basis_ok) rep.diagnostics.push_back("NotABasis: odd elements are dependent");
  if (!rep.diagnostics.empty()) return rep;

  bool ok = true;
  for (int k = 1; k <= s.r(); ++k) {
    int sk = s.breakpoints[k - 1];
    int end = s.breakpoints[k];

    const Element<T>& a_sk = s.multipliers[sk - 1];
    if (!(a_sk == unit(t))) {
      ok = false;
      rep.diagnostics.push_back("a_" + std::to_string(sk) + " != e0 at slice " + std::to_string(k));
    }
    for (int j = sk; j < end; ++j) {
      Element<T> want = multiply(s.multipliers[j - 1], eps_basis[sk - 1], t);
      Element<T> diff = eps_basis[j - 1] - want;
      double res = norm(diff);
      bool match = is_exact_v<T> ? is_zero(diff) : res < 1e-12;
      if (!match) {
        ok = false;
        rep.diagnostics.push_back("eps_" + std::to_string(j) + " != a_" + std::to_string(j) +
                                  "*eps_" + std::to_string(sk) + " (residual " +
                                  std::to_string(res) + ")");
      }
    }
    Element<T> sum(t.dim());
    for (int j = sk; j < end; ++j)
      sum += multiply(s.multipliers[j - 1], s.multipliers[j - 1], t);
    double res = norm(sum);
    rep.slice_residuals.push_back(res);
    bool zero = is_exact_v<T> ? is_zero(sum) : res < 1e-12;
    if (!zero) {
      ok = false;
      rep.diagnostics.push_back("slice " + std::to_string(k) +
                                ": sum of squared multipliers has norm " + std::to_string(res));
    }
  }
  rep.pass = ok;
  return rep;
}

struct SqrtSearchResult {
  bool found = false;
  Element<double> root;
  double residual = 0.0;
  int start_index = -1;
};

/// Newton search inside the even part for iota with iota^2 = -e0.
/// F(a) = a^2 + e0, Jacobian 2*left_mult_matrix(a) restricted to the even
/// block; 64 seeded starts, 100 iterations each, step halving on residual
/// increase.  Not finding a root cannot distinguish "no root exists" from
/// "budget exhausted".
inline SqrtSearchResult find_sqrt_minus_one(const StructureTable<double>& t,
                                            std::uint64_t seed = 20240611, int starts = 64,
                                            int iters = 100) {
  SqrtSearchResult result;
  int pe = t.p() + 1;
  Element<double> a(t.dim()), f(t.dim());

  auto residual_of = [&](const Element<double>& x) {
    Element<double> sq = multiply(x, x, t);
    sq[0] += 1.0;
    return sq;
  };

  for (int start = 0; start < starts; ++start) {
    a = Element<double>(t.dim());
    if (start == 0 && pe > 1) {
      a[1] = 1.0;  // the standard guess when an imaginary unit exists
    } else {
      CounterRng rng(seed, static_cast<std::uint64_t>(start), 0x5074);
      for (int k = 0; k < pe; ++k) a[k] = rng.next_gaussian();
    }
    Element<double> F = residual_of(a);
    double res = norm(F);
    for (int it = 0; it < iters && res > 1e-14; ++it) {
      Matrix<double> J(pe, pe);
      Matrix<double> L = left_mult_matrix(a, t);
      for (int r = 0; r < pe; ++r)
        for (int c = 0; c < pe; ++c) J.at(r, c) = 2.0 * L.at(r, c);
      std::vector<double> rhs(pe);
      for (int r = 0; r < pe; ++r) rhs[r] = -F[r];
      auto step = solve_square(J, rhs);
      if (!step) break;
      double damp = 1.0;
      bool moved = false;
      for (int half = 0; half < 6; ++half, damp *= 0.5) {
        Element<double> cand = a;
        for (int k = 0; k < pe; ++k) cand[k] += damp * (*step)[k];
        Element<double> Fc = residual_of(cand);
        double rc = norm(Fc);
        if (rc < res) {
          a = cand;
          F = Fc;
          res = rc;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    if (res < 1e-12) {
      result.found = true;
      result.root = a;
      result.residual = res;
      result.start_index = start;
      return result;
    }
  }
  return result;
}

enum class ComplexifyStatus { ok, not_central, not_a_square_root, odd_dimension };

template <class T>
struct ComplexifyResult {
  ComplexifyStatus status = ComplexifyStatus::ok;
  std::vector<std::pair<Element<T>, Element<T>>> pairs;  // (b, iota*b)
  std::string message;
};

/// Greedy complex pairing of the whole algebra under a central square root
/// of -e0: repeatedly adjoin the first standard basis vector outside the
/// current span together with its iota-multiple.
template <class T>
ComplexifyResult<T> complexify(const StructureTable<T>& t, const Element<T>& iota) {
  ComplexifyResult<T> out;
  double tol = is_exact_v<T> ? 0.0 : 1e-10;
  int d = t.dim();

  for (int k = 0; k < d; ++k) {
    Element<T> ek = basis_element(t, k);
    Element<T> comm = multiply(iota, ek, t) - multiply(ek, iota, t);
    if (norm(comm) > tol) {
      out.status = ComplexifyStatus::not_central;
      out.message = "iota does not commute with " + t.labels()[k];
      return out;
    }
  }
  Element<T> sq = multiply(iota, iota, t) + unit(t);
  if (norm(sq) > tol) {
    out.status = ComplexifyStatus::not_a_square_root;
    out.message = "iota^2 + e0 has norm " + std::to_string(norm(sq));
    return out;
  }

  Matrix<T> span(d, d);
  int span_rank = 0;
  auto in_span = [&](const Element<T>& v) {
    Matrix<T> probe(span_rank + 1, d);
    for (int r = 0; r < span_rank; ++r)
      for (int c = 0; c < d; ++c) probe.at(r, c) = span.at(r, c);
    for (int c = 0; c < d; ++c) probe.at(span_rank, c) = v[c];
    return rank_of(probe) == span_rank;
  };
  auto adjoin = [&](const Element<T>& v) {
    for (int c = 0; c < d; ++c) span.at(span_rank, c) = v[c];
    ++span_rank;
  };

  for (int k = 0; k < d && span_rank < d; ++k) {
    Element<T> b = basis_element(t, k);
    if (in_span(b)) continue;
    Element<T> ib = multiply(iota, b, t);
    adjoin(b);
    if (in_span(ib)) {
      out.status = ComplexifyStatus::odd_dimension;
      out.message = "span extension stalled at odd dimension " + std::to_string(span_rank);
      return out;
    }
    adjoin(ib);
    out.pairs.emplace_back(std::move(b), std::move(ib));
  }
  if (span_rank != d) {
    out.status = ComplexifyStatus::odd_dimension;
    out.message = "pairing covered only dimension " + std::to_string(span_rank);
  }
  return out;
}

}  // namespace qsa

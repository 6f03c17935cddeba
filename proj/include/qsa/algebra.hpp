#pragma once

// Finite-dimensional real commutative superalgebras given by structure
// constants, with element arithmetic and exhaustive axiom validation.
//
// Basis convention: e_0..e_p span the even part, e_{p+1}..e_{p+q} are the
// odd generators eps_1..eps_q.  The basis is declared orthonormal for the
// Euclidean norm on coefficients.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qsa/errors.hpp"
#include "qsa/linalg.hpp"
#include "qsa/scalar.hpp"

namespace qsa {

/// Structure-constant tensor of a superalgebra: e_i e_j = sum_k gamma(i,j,k) e_k.
template <class T>
class StructureTable {
 public:
  StructureTable() = default;
  StructureTable(int p, int q) : p_(p), q_(q) {
    if (p < 0 || q < 0) throw StructuralError("StructureTable: negative dimensions");
    int d = dim();
    gamma_.assign(static_cast<std::size_t>(d) * d * d, T(0));
    // unit law for e0
    for (int j = 0; j < d; ++j) {
      set_gamma(0, j, j, T(1));
      set_gamma(j, 0, j, T(1));
    }
    labels_.resize(d);
    for (int i = 0; i <= p_; ++i) labels_[i] = "e" + std::to_string(i);
    for (int l = 1; l <= q_; ++l) labels_[p_ + l] = "eps" + std::to_string(l);
  }

  int p() const { return p_; }
  int q() const { return q_; }
  int dim() const { return p_ + q_ + 1; }
  bool odd_index(int i) const { return i > p_; }
  int parity(int i) const { return i > p_ ? 1 : 0; }

  const T& gamma(int i, int j, int k) const { return gamma_[idx(i, j, k)]; }

  void set_gamma(int i, int j, int k, T v) {
    gamma_[idx(i, j, k)] = std::move(v);
    products_.clear();
  }

  const std::vector<std::string>& labels() const { return labels_; }
  void set_label(int i, std::string name) { labels_.at(i) = std::move(name); }

  /// Nonzero products of one basis pair, as (target index, coefficient).
  const std::vector<std::pair<int, T>>& pair_products(int i, int j) const {
    if (products_.empty()) build_products();
    return products_[static_cast<std::size_t>(i) * dim() + j];
  }

 private:
  std::size_t idx(int i, int j, int k) const {
    int d = dim();
    if (i < 0 || j < 0 || k < 0 || i >= d || j >= d || k >= d)
      throw StructuralError("StructureTable: index out of range");
    return (static_cast<std::size_t>(i) * d + j) * d + k;
  }

  void build_products() const {
    int d = dim();
    products_.assign(static_cast<std::size_t>(d) * d, {});
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        auto& row = products_[static_cast<std::size_t>(i) * d + j];
        for (int k = 0; k < d; ++k) {
          const T& v = gamma_[(static_cast<std::size_t>(i) * d + j) * d + k];
          if (!(v == T(0))) row.emplace_back(k, v);
        }
      }
  }

  int p_ = 0, q_ = 0;
  std::vector<T> gamma_;
  std::vector<std::string> labels_;
  mutable std::vector<std::vector<std::pair<int, T>>> products_;
};

/// Element of the algebra as a coefficient vector over (e_0..e_p, eps_1..eps_q).
template <class T>
struct Element {
  std::vector<T> c;

  Element() = default;
  explicit Element(int dim) : c(dim, T(0)) {}
  explicit Element(std::vector<T> coeffs) : c(std::move(coeffs)) {}

  int dim() const { return static_cast<int>(c.size()); }
  T& operator[](int i) { return c[i]; }
  const T& operator[](int i) const { return c[i]; }

  bool operator==(const Element& o) const { return c == o.c; }

  Element& operator+=(const Element& o) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
  Element& operator-=(const Element& o) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
  }
  Element& operator*=(const T& s) {
    for (auto& v : c) v *= s;
    return *this;
  }
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const T& s) { return a *= s; }
  friend Element operator*(const T& s, Element a) { return a *= s; }
  friend Element operator-(Element a) {
    for (auto& v : a.c) v = -v;
    return a;
  }
};

template <class T>
Element<T> zero_element(const StructureTable<T>& t) {
  return Element<T>(t.dim());
}

template <class T>
Element<T> unit(const StructureTable<T>& t) {
  Element<T> e(t.dim());
  e[0] = T(1);
  return e;
}

template <class T>
Element<T> basis_element(const StructureTable<T>& t, int i) {
  Element<T> e(t.dim());
  e.c.at(i) = T(1);
  return e;
}

template <class T>
bool is_zero(const Element<T>& a) {
  for (const auto& v : a.c)
    if (!(v == T(0))) return false;
  return true;
}

template <class T>
T norm_sq(const Element<T>& a) {
  T acc(0);
  for (const auto& v : a.c) acc += v * v;
  return acc;
}

template <class T>
double norm(const Element<T>& a) {
  return std::sqrt(to_double(norm_sq(a)));
}

template <class T>
bool is_even(const Element<T>& a, const StructureTable<T>& t, double tol = 0.0) {
  for (int i = t.p() + 1; i < t.dim(); ++i)
    if (std::abs(to_double(a[i])) > tol) return false;
  return true;
}

template <class T>
bool is_odd(const Element<T>& a, const StructureTable<T>& t, double tol = 0.0) {
  for (int i = 0; i <= t.p(); ++i)
    if (std::abs(to_double(a[i])) > tol) return false;
  return true;
}

template <class T>
void multiply_into(Element<T>& out, const Element<T>& a, const Element<T>& b,
                   const StructureTable<T>& t) {
  int d = t.dim();
  if (a.dim() != d || b.dim() != d)
    throw StructuralError("multiply: element dimension does not match table");
  out.c.assign(d, T(0));
  for (int i = 0; i < d; ++i) {
    if (a[i] == T(0)) continue;
    for (int j = 0; j < d; ++j) {
      if (b[j] == T(0)) continue;
      T f = a[i] * b[j];
      for (const auto& [k, v] : t.pair_products(i, j)) out[k] += f * v;
    }
  }
}

template <class T>
Element<T> multiply(const Element<T>& a, const Element<T>& b, const StructureTable<T>& t) {
  Element<T> out;
  multiply_into(out, a, b, t);
  return out;
}

/// Matrix of x -> a*x over the coefficient basis.
template <class T>
Matrix<T> left_mult_matrix(const Element<T>& a, const StructureTable<T>& t) {
  int d = t.dim();
  if (a.dim() != d) throw StructuralError("left_mult_matrix: dimension mismatch");
  Matrix<T> M(d, d);
  for (int i = 0; i < d; ++i) {
    if (a[i] == T(0)) continue;
    for (int j = 0; j < d; ++j)
      for (const auto& [k, v] : t.pair_products(i, j)) M.at(k, j) += a[i] * v;
  }
  return M;
}

/// Two-sided inverse, or nullopt when a is a zero divisor or nilpotent.
/// Float mode declares the system singular when the smallest singular value
/// drops below 1e-10 times the largest.
template <class T>
std::optional<Element<T>> invert(const Element<T>& a, const StructureTable<T>& t) {
  Matrix<T> M = left_mult_matrix(a, t);
  if constexpr (!is_exact_v<T>) {
    auto [lo, hi] = singular_value_extremes(M);
    if (hi == 0.0 || lo < 1e-10 * hi) return std::nullopt;
  }
  std::vector<T> rhs(t.dim(), T(0));
  rhs[0] = T(1);
  auto x = solve_square(M, rhs);
  if (!x) return std::nullopt;
  return Element<T>(std::move(*x));
}

/// Basis of the annihilator of the odd part, {lambda : lambda*eps_l = 0 for all l}.
/// Exact mode returns an orthogonal basis (Gram-Schmidt without normalization);
/// float mode returns an orthonormal one.  q = 0 yields the standard basis of Λ.
template <class T>
std::vector<Element<T>> annihilator_of_odd(const StructureTable<T>& t) {
  int d = t.dim();
  if (t.q() == 0) {
    std::vector<Element<T>> all;
    for (int i = 0; i < d; ++i) all.push_back(basis_element(t, i));
    return all;
  }
  Matrix<T> stacked(t.q() * d, d);
  for (int l = 0; l < t.q(); ++l) {
    int eps = t.p() + 1 + l;
    for (int i = 0; i < d; ++i)
      for (const auto& [k, v] : t.pair_products(i, eps)) stacked.at(l * d + k, i) += v;
  }
  auto kernel = orthogonalize(nullspace(stacked));
  std::vector<Element<T>> out;
  for (auto& v : kernel) out.push_back(Element<T>(std::move(v)));
  return out;
}

// ---------------------------------------------------------------------------
// Validation

struct AxiomResult {
  std::string axiom;
  bool pass = true;
  long violations = 0;
  std::array<int, 4> first_violation{-1, -1, -1, -1};
  std::string detail;
};

struct ValidationReport {
  std::vector<AxiomResult> axioms;
  bool all_pass() const {
    for (const auto& a : axioms)
      if (!a.pass) return false;
    return true;
  }
  const AxiomResult& axiom(const std::string& name) const {
    for (const auto& a : axioms)
      if (a.axiom == name) return a;
    throw std::out_of_range("no such axiom result: " + name);
  }
};

/// Exhaustive axiom check: unit law, parity grading, supercommutativity,
/// associativity.  Failures are report entries; this never throws on a bad
/// table.  Exact when T is rational (all built-ins have integer entries).
template <class T>
ValidationReport validate(const StructureTable<T>& t) {
  ValidationReport rep;
  int d = t.dim();

  AxiomResult unit_ax{.axiom = "unit"};
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      T want = (j == k) ? T(1) : T(0);
      for (int side = 0; side < 2; ++side) {
        const T& got = side == 0 ? t.gamma(0, j, k) : t.gamma(j, 0, k);
        if (!(got == want)) {
          if (unit_ax.pass) {
            unit_ax.first_violation = {side == 0 ? 0 : j, side == 0 ? j : 0, k, -1};
            unit_ax.detail = "gamma(" + std::to_string(unit_ax.first_violation[0]) + "," +
                             std::to_string(unit_ax.first_violation[1]) + "," + std::to_string(k) +
                             ") = " + format_scalar(got) + ", expected " + format_scalar(want);
          }
          unit_ax.pass = false;
          ++unit_ax.violations;
        }
      }
    }
  rep.axioms.push_back(std::move(unit_ax));

  AxiomResult parity_ax{.axiom = "parity"};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        if ((t.parity(i) + t.parity(j)) % 2 == t.parity(k)) continue;
        if (t.gamma(i, j, k) == T(0)) continue;
        if (parity_ax.pass) {
          parity_ax.first_violation = {i, j, k, -1};
          parity_ax.detail = "gamma(" + std::to_string(i) + "," + std::to_string(j) + "," +
                             std::to_string(k) + ") = " + format_scalar(t.gamma(i, j, k)) +
                             " crosses the parity grading";
        }
        parity_ax.pass = false;
        ++parity_ax.violations;
      }
  rep.axioms.push_back(std::move(parity_ax));

  AxiomResult comm_ax{.axiom = "supercommutativity"};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      int sign = (t.parity(i) == 1 && t.parity(j) == 1) ? -1 : 1;
      for (int k = 0; k < d; ++k) {
        T want = sign == 1 ? t.gamma(j, i, k) : T(-t.gamma(j, i, k));
        if (t.gamma(i, j, k) == want) continue;
        if (comm_ax.pass) {
          comm_ax.first_violation = {i, j, k, -1};
          comm_ax.detail = "gamma(" + std::to_string(i) + "," + std::to_string(j) + "," +
                           std::to_string(k) + ") = " + format_scalar(t.gamma(i, j, k)) +
                           " vs " + (sign == 1 ? "" : "-") + "gamma(" + std::to_string(j) + "," +
                           std::to_string(i) + "," + std::to_string(k) + ")";
        }
        comm_ax.pass = false;
        ++comm_ax.violations;
      }
    }
  rep.axioms.push_back(std::move(comm_ax));

  AxiomResult assoc_ax{.axiom = "associativity"};
  Element<T> ij, lhs, jk, rhs;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      multiply_into(ij, basis_element(t, i), basis_element(t, j), t);
      for (int k = 0; k < d; ++k) {
        multiply_into(lhs, ij, basis_element(t, k), t);
        multiply_into(jk, basis_element(t, j), basis_element(t, k), t);
        multiply_into(rhs, basis_element(t, i), jk, t);
        if (lhs == rhs) continue;
        int coord = 0;
        while (lhs[coord] == rhs[coord]) ++coord;
        if (assoc_ax.pass) {
          assoc_ax.first_violation = {i, j, k, coord};
          assoc_ax.detail = "(" + t.labels()[i] + "*" + t.labels()[j] + ")*" + t.labels()[k] +
                            " differs from " + t.labels()[i] + "*(" + t.labels()[j] + "*" +
                            t.labels()[k] + ") at coordinate " + std::to_string(coord);
        }
        assoc_ax.pass = false;
        ++assoc_ax.violations;
      }
    }
  rep.axioms.push_back(std::move(assoc_ax));

  return rep;
}

/// Restriction of the table to the even part (a q = 0 algebra on e_0..e_p).
template <class T>
StructureTable<T> even_part(const StructureTable<T>& t) {
  StructureTable<T> out(t.p(), 0);
  for (int i = 0; i <= t.p(); ++i)
    for (int j = 0; j <= t.p(); ++j)
      for (int k = 0; k <= t.p(); ++k) out.set_gamma(i, j, k, t.gamma(i, j, k));
  for (int i = 0; i <= t.p(); ++i) out.set_label(i, t.labels()[i]);
  return out;
}

template <class To, class From>
StructureTable<To> convert_table(const StructureTable<From>& t) {
  StructureTable<To> out(t.p(), t.q());
  for (int i = 0; i < t.dim(); ++i)
    for (int j = 0; j < t.dim(); ++j)
      for (int k = 0; k < t.dim(); ++k) {
        const From& v = t.gamma(i, j, k);
        if constexpr (std::is_same_v<To, double>)
          out.set_gamma(i, j, k, to_double(v));
        else
          out.set_gamma(i, j, k, To(v));
      }
  for (int i = 0; i < t.dim(); ++i) out.set_label(i, t.labels()[i]);
  return out;
}

template <class To, class From>
Element<To> convert_element(const Element<From>& a) {
  Element<To> out(a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    if constexpr (std::is_same_v<To, double>)
      out[i] = to_double(a[i]);
    else
      out[i] = To(a[i]);
  }
  return out;
}

}  // namespace qsa

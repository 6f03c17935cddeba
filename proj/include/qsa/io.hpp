#pragma once

// Text formats for algebras, slice specs, basis lists, and polynomials.
//
// All four share one shape: '#' starts a comment, blank lines are skipped,
// and each remaining line is a directive followed by whitespace-separated
// tokens.  Scalars accept integers, fractions "n/d", and decimal notation;
// in the exact backend decimals parse to exact rationals.  Errors are
// reported as ParseError with a 1-based line number.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qsa/polynomial.hpp"

namespace qsa {

namespace detail {

inline std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line.substr(0, line.find('#')));
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

inline int parse_int(const std::string& tok, int line_no, const char* what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("expected an integer for ") + what + ", got '" + tok + "'",
                     line_no);
  }
}

template <class T>
T parse_value(const std::string& tok, int line_no) {
  try {
    return parse_scalar<T>(tok);
  } catch (const std::exception& e) {
    throw ParseError(e.what(), line_no);
  }
}

template <class T>
Element<T> parse_vector(const std::vector<std::string>& toks, std::size_t from, int dim,
                        int line_no) {
  if (toks.size() - from != static_cast<std::size_t>(dim))
    throw ParseError("expected " + std::to_string(dim) + " coefficients, got " +
                         std::to_string(toks.size() - from),
                     line_no);
  Element<T> v(dim);
  for (int k = 0; k < dim; ++k) v[k] = parse_value<T>(toks[from + k], line_no);
  return v;
}

}  // namespace detail

/// Algebra definition: `p <int>`, `q <int>`, then one `gamma i j k value`
/// line per nonzero structure constant.  The file is the whole tensor; the
/// unit law is not implied, so e0-rows appear explicitly.
template <class T>
StructureTable<T> read_algebra(std::istream& in) {
  int p = -1, q = -1, line_no = 0;
  bool have_table = false;
  StructureTable<T> table;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = detail::split_tokens(line);
    if (toks.empty()) continue;
    if (toks[0] == "p" || toks[0] == "q") {
      if (have_table) throw ParseError("'" + toks[0] + "' must precede all gamma lines", line_no);
      if (toks.size() != 2) throw ParseError("'" + toks[0] + "' takes one integer", line_no);
      int& slot = toks[0] == "p" ? p : q;
      if (slot >= 0) throw ParseError("duplicate '" + toks[0] + "' directive", line_no);
      slot = detail::parse_int(toks[1], line_no, toks[0].c_str());
      if (slot < 0) throw ParseError("'" + toks[0] + "' must be nonnegative", line_no);
      continue;
    }
    if (toks[0] == "gamma") {
      if (p < 0 || q < 0) throw ParseError("'p' and 'q' must precede gamma lines", line_no);
      if (!have_table) {
        table = StructureTable<T>(p, q);
        // the constructor presets the unit action; the file is authoritative
        for (int j = 0; j < table.dim(); ++j) {
          table.set_gamma(0, j, j, T(0));
          table.set_gamma(j, 0, j, T(0));
        }
        have_table = true;
      }
      if (toks.size() != 5) throw ParseError("'gamma' takes indices i j k and a value", line_no);
      int i = detail::parse_int(toks[1], line_no, "i");
      int j = detail::parse_int(toks[2], line_no, "j");
      int k = detail::parse_int(toks[3], line_no, "k");
      int d = table.dim();
      if (i < 0 || j < 0 || k < 0 || i >= d || j >= d || k >= d)
        throw ParseError("gamma index out of range for dimension " + std::to_string(d), line_no);
      table.set_gamma(i, j, k, detail::parse_value<T>(toks[4], line_no));
      continue;
    }
    throw ParseError("unknown directive '" + toks[0] + "'", line_no);
  }
  if (p < 0 || q < 0) throw ParseError("file must declare both 'p' and 'q'");
  if (!have_table) {
    table = StructureTable<T>(p, q);
    for (int j = 0; j < table.dim(); ++j) {
      table.set_gamma(0, j, j, T(0));
      table.set_gamma(j, 0, j, T(0));
    }
  }
  return table;
}

template <class T>
void write_algebra(std::ostream& out, const StructureTable<T>& t) {
  out << "p " << t.p() << "\n" << "q " << t.q() << "\n";
  int d = t.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        if (!(t.gamma(i, j, k) == T(0)))
          out << "gamma " << i << " " << j << " " << k << " " << format_scalar(t.gamma(i, j, k))
              << "\n";
}

/// Slice spec: `breakpoints s_1 ... s_{r+1}` and one `mult j c_0 ... c_{d-1}`
/// line per odd coordinate giving the even multiplier a_j.
template <class T>
SliceSpec<T> read_slices(std::istream& in, const StructureTable<T>& t) {
  SliceSpec<T> s;
  std::vector<Element<T>> mults(t.q(), Element<T>(t.dim()));
  std::vector<bool> seen(t.q(), false);
  int line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = detail::split_tokens(line);
    if (toks.empty()) continue;
    if (toks[0] == "breakpoints") {
      if (!s.breakpoints.empty()) throw ParseError("duplicate 'breakpoints' directive", line_no);
      for (std::size_t i = 1; i < toks.size(); ++i)
        s.breakpoints.push_back(detail::parse_int(toks[i], line_no, "breakpoint"));
      if (s.breakpoints.size() < 2) throw ParseError("need at least two breakpoints", line_no);
      continue;
    }
    if (toks[0] == "mult") {
      if (toks.size() < 2) throw ParseError("'mult' takes an index and coefficients", line_no);
      int j = detail::parse_int(toks[1], line_no, "odd index");
      if (j < 1 || j > t.q())
        throw ParseError("odd index " + std::to_string(j) + " out of range 1.." +
                             std::to_string(t.q()),
                         line_no);
      if (seen[j - 1]) throw ParseError("duplicate 'mult' for index " + std::to_string(j), line_no);
      mults[j - 1] = detail::parse_vector<T>(toks, 2, t.dim(), line_no);
      seen[j - 1] = true;
      continue;
    }
    throw ParseError("unknown directive '" + toks[0] + "'", line_no);
  }
  if (s.breakpoints.empty()) throw ParseError("file must declare 'breakpoints'");
  for (int j = 0; j < t.q(); ++j)
    if (!seen[j]) throw ParseError("missing 'mult' line for odd index " + std::to_string(j + 1));
  s.multipliers = std::move(mults);
  return s;
}

template <class T>
void write_slices(std::ostream& out, const SliceSpec<T>& s) {
  out << "breakpoints";
  for (int b : s.breakpoints) out << " " << b;
  out << "\n";
  for (std::size_t j = 0; j < s.multipliers.size(); ++j) {
    out << "mult " << (j + 1);
    for (int k = 0; k < s.multipliers[j].dim(); ++k)
      out << " " << format_scalar(s.multipliers[j][k]);
    out << "\n";
  }
}

/// Basis list: one `vec c_0 ... c_{d-1}` line per element.
template <class T>
std::vector<Element<T>> read_basis_vectors(std::istream& in, int dim) {
  std::vector<Element<T>> out;
  int line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = detail::split_tokens(line);
    if (toks.empty()) continue;
    if (toks[0] != "vec") throw ParseError("unknown directive '" + toks[0] + "'", line_no);
    out.push_back(detail::parse_vector<T>(toks, 1, dim, line_no));
  }
  if (out.empty()) throw ParseError("file has no 'vec' lines");
  return out;
}

template <class T>
void write_basis_vectors(std::ostream& out, const std::vector<Element<T>>& vecs) {
  for (const auto& v : vecs) {
    out << "vec";
    for (int k = 0; k < v.dim(); ++k) out << " " << format_scalar(v[k]);
    out << "\n";
  }
}

/// Polynomial: one `coef` line per term -- the even powers, then the
/// per-slice powers of every odd hypervariable, then the coefficient vector.
template <class T>
QsPoly<T> read_polynomial(std::istream& in, const Superspace<T>& sp) {
  QsPoly<T> f;
  const int keylen = qs_key_length(sp);
  const int dim = sp.table.dim();
  int line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = detail::split_tokens(line);
    if (toks.empty()) continue;
    if (toks[0] != "coef") throw ParseError("unknown directive '" + toks[0] + "'", line_no);
    if (toks.size() != static_cast<std::size_t>(1 + keylen + dim))
      throw ParseError("'coef' takes " + std::to_string(keylen) + " powers and " +
                           std::to_string(dim) + " coefficients",
                       line_no);
    std::vector<int> key(keylen);
    for (int i = 0; i < keylen; ++i) {
      key[i] = detail::parse_int(toks[1 + i], line_no, "power");
      if (key[i] < 0) throw ParseError("negative power", line_no);
    }
    qs_add_term(f, key, detail::parse_vector<T>(toks, 1 + keylen, dim, line_no));
  }
  return f;
}

template <class T>
void write_polynomial(std::ostream& out, const QsPoly<T>& f) {
  for (const auto& [key, c] : f.terms) {
    out << "coef";
    for (int k : key) out << " " << k;
    for (int i = 0; i < c.dim(); ++i) out << " " << format_scalar(c[i]);
    out << "\n";
  }
}

/// Real-coordinate polynomial in the same line format; keys are powers of
/// the N flat coordinates instead of hypervariable powers.
template <class T>
RealPoly<T> read_real_polynomial(std::istream& in, const Superspace<T>& sp) {
  RealPoly<T> f;
  const int keylen = sp.N();
  const int dim = sp.table.dim();
  int line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = detail::split_tokens(line);
    if (toks.empty()) continue;
    if (toks[0] != "coef") throw ParseError("unknown directive '" + toks[0] + "'", line_no);
    if (toks.size() != static_cast<std::size_t>(1 + keylen + dim))
      throw ParseError("'coef' takes " + std::to_string(keylen) + " powers and " +
                           std::to_string(dim) + " coefficients",
                       line_no);
    std::vector<int> key(keylen);
    for (int i = 0; i < keylen; ++i) {
      key[i] = detail::parse_int(toks[1 + i], line_no, "power");
      if (key[i] < 0) throw ParseError("negative power", line_no);
    }
    poly_add_term(f, key, detail::parse_vector<T>(toks, 1 + keylen, dim, line_no));
  }
  return f;
}

template <class T>
void write_real_polynomial(std::ostream& out, const RealPoly<T>& f) {
  for (const auto& [key, c] : f.terms) {
    out << "coef";
    for (int k : key) out << " " << k;
    for (int i = 0; i < c.dim(); ++i) out << " " << format_scalar(c[i]);
    out << "\n";
  }
}

namespace detail {

template <class F>
auto from_file(const std::string& path, F&& parse) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return parse(in);
  } catch (ParseError& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
}

}  // namespace detail

template <class T>
StructureTable<T> read_algebra_file(const std::string& path) {
  return detail::from_file(path, [](std::istream& in) { return read_algebra<T>(in); });
}

template <class T>
SliceSpec<T> read_slices_file(const std::string& path, const StructureTable<T>& t) {
  return detail::from_file(path, [&](std::istream& in) { return read_slices<T>(in, t); });
}

template <class T>
std::vector<Element<T>> read_basis_vectors_file(const std::string& path, int dim) {
  return detail::from_file(path, [&](std::istream& in) { return read_basis_vectors<T>(in, dim); });
}

template <class T>
QsPoly<T> read_polynomial_file(const std::string& path, const Superspace<T>& sp) {
  return detail::from_file(path, [&](std::istream& in) { return read_polynomial<T>(in, sp); });
}

}  // namespace qsa

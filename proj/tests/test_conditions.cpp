#include <catch2/catch_amalgamated.hpp>

#include "qsa/builtins.hpp"
#include "qsa/conditions.hpp"
#include "qsa/rng.hpp"

using namespace qsa;

TEST_CASE("square-sum condition on the complex basis") {
  auto t = make_complex<Rational>();
  auto rep = verify_a0(t, standard_even_basis(t));
  REQUIRE(rep.pass);
  REQUIRE(rep.residual == 0.0);
  REQUIRE(rep.basis_ok);
}

TEST_CASE("square-sum condition fails on the hyperbolic basis") {
  auto t = make_hyperbolic<Rational>();
  auto rep = verify_a0(t, standard_even_basis(t));
  REQUIRE_FALSE(rep.pass);
  REQUIRE(rep.residual == 2.0);  // e0^2 + e1^2 = 2 e0
}

TEST_CASE("square-sum condition on the mixed12 even basis") {
  auto t = make_mixed12<Rational>();
  auto rep = verify_a0(t, standard_even_basis(t));
  REQUIRE(rep.pass);  // e0 - e0 + 0 + 0 + e2 - e2 = 0
  REQUIRE(rep.residual == 0.0);
}

TEST_CASE("square-sum condition on complex grassmann even bases") {
  for (int g : {1, 2}) {
    auto t = make_complex_grassmann<Rational>(g);
    auto rep = verify_a0(t, standard_even_basis(t));
    REQUIRE(rep.pass);
    REQUIRE(rep.residual == 0.0);
  }
}

TEST_CASE("square-sum verdict is invariant under signed permutation") {
  auto t = make_complex_grassmann<Rational>(2);
  auto basis = standard_even_basis(t);
  CounterRng rng(3, 0);
  for (int trial = 0; trial < 8; ++trial) {
    auto shuffled = basis;
    for (std::size_t i = shuffled.size() - 1; i > 1; --i)
      std::swap(shuffled[i], shuffled[1 + rng.next_u64() % i]);
    for (std::size_t i = 1; i < shuffled.size(); ++i)
      if (rng.next_u64() & 1) shuffled[i] = -shuffled[i];
    auto rep = verify_a0(t, shuffled);
    REQUIRE(rep.pass);
    REQUIRE(rep.residual == 0.0);
  }
}

TEST_CASE("degenerate even family is rejected") {
  auto t = make_complex<Rational>();
  std::vector<Element<Rational>> bad = {unit(t), unit(t)};
  auto rep = verify_a0(t, bad);
  REQUIRE_FALSE(rep.pass);
  REQUIRE_FALSE(rep.basis_ok);
  bool mentioned = false;
  for (auto& d : rep.diagnostics) mentioned |= d.find("NotABasis") != std::string::npos;
  REQUIRE(mentioned);
}

TEST_CASE("slice decomposition of complex grassmann passes") {
  for (int g : {1, 2}) {
    auto t = make_complex_grassmann<Rational>(g);
    auto sliced = grassmann_slices(t);
    REQUIRE(slice_spec_problems(t, sliced.slices).empty());
    auto rep = verify_a1(t, sliced.eps, sliced.slices);
    CAPTURE(g, rep.diagnostics);
    REQUIRE(rep.pass);
    for (double r : rep.slice_residuals) REQUIRE(r == 0.0);
    REQUIRE(static_cast<int>(rep.slice_residuals.size()) == sliced.slices.r());
  }
}

TEST_CASE("all-unit multipliers fail the per-slice square sum") {
  auto t = make_complex_grassmann<Rational>(1);
  SliceSpec<Rational> s;
  s.breakpoints = {1, 2, 3};
  s.multipliers = {unit(t), unit(t)};
  auto rep = verify_a1(t, standard_odd_basis(t), s);
  REQUIRE_FALSE(rep.pass);
  REQUIRE(rep.slice_residuals.size() == 2);
  REQUIRE(rep.slice_residuals[0] == 1.0);
  REQUIRE(rep.slice_residuals[1] == 1.0);
}

TEST_CASE("mixed12 has a working slice decomposition") {
  auto t = make_mixed12<Rational>();
  auto sliced = mixed12_slices(t);
  auto rep = verify_a1(t, sliced.eps, sliced.slices);
  CAPTURE(rep.diagnostics);
  REQUIRE(rep.pass);
  REQUIRE(rep.slice_residuals.size() == 2);
}

TEST_CASE("the eps1-anchored slice attempt on mixed12 degenerates") {
  auto t = make_mixed12<Rational>();
  auto sliced = mixed12_degenerate_slices(t);
  auto rep = verify_a1(t, sliced.eps, sliced.slices);
  REQUIRE_FALSE(rep.pass);
  REQUIRE_FALSE(rep.basis_ok);
  bool mentioned = false;
  for (auto& d : rep.diagnostics) mentioned |= d.find("NotABasis") != std::string::npos;
  REQUIRE(mentioned);
}

TEST_CASE("accepted slice specs have exact zero slice sums") {
  // property shared by every spec that verify_a1 accepts in rational mode
  auto check = [](const StructureTable<Rational>& t, const SlicedOddBasis<Rational>& sl) {
    auto rep = verify_a1(t, sl.eps, sl.slices);
    if (!rep.pass) return;
    for (int k = 1; k <= sl.slices.r(); ++k) {
      Element<Rational> sum(t.dim());
      for (int j = sl.slices.breakpoints[k - 1]; j < sl.slices.breakpoints[k]; ++j)
        sum += multiply(sl.slices.multipliers[j - 1], sl.slices.multipliers[j - 1], t);
      REQUIRE(is_zero(sum));
    }
  };
  auto t1 = make_complex_grassmann<Rational>(1);
  check(t1, grassmann_slices(t1));
  auto t2 = make_complex_grassmann<Rational>(2);
  check(t2, grassmann_slices(t2));
  auto tm = make_mixed12<Rational>();
  check(tm, mixed12_slices(tm));
}

TEST_CASE("newton finds the imaginary unit of C") {
  auto t = make_complex<double>();
  auto res = find_sqrt_minus_one(t);
  REQUIRE(res.found);
  REQUIRE(res.residual < 1e-12);
  REQUIRE(std::abs(std::abs(res.root[1]) - 1.0) < 1e-9);
  REQUIRE(std::abs(res.root[0]) < 1e-9);
}

TEST_CASE("newton finds a root in the grassmann even part") {
  auto t = make_complex_grassmann<double>(2);
  auto res = find_sqrt_minus_one(t);
  REQUIRE(res.found);
  REQUIRE(res.residual < 1e-12);
  // the root is +-i plus a nilpotent correction: unit coefficient near +-1
  REQUIRE(std::abs(std::abs(res.root[1]) - 1.0) < 1e-6);
  // centrality: the even part embeds in the supercenter
  auto full = make_complex_grassmann<double>(2);
  Element<double> iota(full.dim());
  for (int k = 0; k <= full.p(); ++k) iota[k] = res.root[k];
  for (int b = 0; b < full.dim(); ++b) {
    auto comm = multiply(iota, basis_element(full, b), full) -
                multiply(basis_element(full, b), iota, full);
    REQUIRE(norm(comm) < 1e-12);
  }
}

TEST_CASE("no square root of minus one exists in the hyperbolic plane") {
  auto t = make_hyperbolic<double>();
  auto res = find_sqrt_minus_one(t);
  REQUIRE_FALSE(res.found);
}

TEST_CASE("complex pairing of C itself") {
  auto t = make_complex<Rational>();
  auto out = complexify(t, basis_element(t, 1));
  REQUIRE(out.status == ComplexifyStatus::ok);
  REQUIRE(out.pairs.size() == 1);
  REQUIRE(out.pairs[0].first == unit(t));
  REQUIRE(out.pairs[0].second == basis_element(t, 1));
}

TEST_CASE("complex pairing of grassmann(1) has two pairs spanning everything") {
  auto t = make_complex_grassmann<Rational>(1);
  auto out = complexify(t, basis_element(t, 1));
  REQUIRE(out.status == ComplexifyStatus::ok);
  REQUIRE(out.pairs.size() == 2);
  Matrix<Rational> span(4, 4);
  int r = 0;
  for (auto& [b, ib] : out.pairs) {
    for (int c = 0; c < 4; ++c) span.at(r, c) = b[c];
    ++r;
    for (int c = 0; c < 4; ++c) span.at(r, c) = ib[c];
    ++r;
    // iota*(iota*b) = -b
    auto twice = multiply(basis_element(t, 1), ib, t);
    REQUIRE(twice == -b);
  }
  REQUIRE(rank_of(span) == 4);
}

TEST_CASE("pairing rejects a non-root") {
  auto t = make_hyperbolic<Rational>();
  auto out = complexify(t, basis_element(t, 1));
  REQUIRE(out.status == ComplexifyStatus::not_a_square_root);
}

TEST_CASE("pairing rejects a non-central iota") {
  StructureTable<Rational> t(2, 0);
  t.set_gamma(1, 1, 0, Rational(-1));
  t.set_gamma(1, 2, 0, Rational(1));
  t.set_gamma(2, 1, 0, Rational(-1));
  auto out = complexify(t, basis_element(t, 1));
  REQUIRE(out.status == ComplexifyStatus::not_central);
}

TEST_CASE("pairing stalls on an odd-dimensional algebra") {
  StructureTable<Rational> t(2, 0);
  t.set_gamma(1, 1, 0, Rational(-1));
  t.set_gamma(1, 2, 2, Rational(1));  // e1*e2 = e2 = e2*e1: iota central, dim 3
  t.set_gamma(2, 1, 2, Rational(1));
  auto out = complexify(t, basis_element(t, 1));
  REQUIRE(out.status == ComplexifyStatus::odd_dimension);
}

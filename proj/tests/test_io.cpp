#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "qsa/builtins.hpp"
#include "qsa/io.hpp"

using namespace qsa;

namespace {

template <class T>
void expect_same_table(const StructureTable<T>& a, const StructureTable<T>& b) {
  REQUIRE(a.p() == b.p());
  REQUIRE(a.q() == b.q());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k) REQUIRE(a.gamma(i, j, k) == b.gamma(i, j, k));
}

}  // namespace

TEST_CASE("algebra files round-trip the full tensor") {
  for (const char* name : {"complex", "hyperbolic", "complex_grassmann:1", "complex_grassmann:2"}) {
    auto t = make_builtin<Rational>(name);
    std::stringstream ss;
    write_algebra(ss, t);
    auto back = read_algebra<Rational>(ss);
    expect_same_table(t, back);
  }
  auto t = make_builtin<double>("complex_grassmann:2");
  std::stringstream ss;
  write_algebra(ss, t);
  expect_same_table(t, read_algebra<double>(ss));
}

TEST_CASE("algebra parsing accepts comments, decimals, and fractions") {
  std::stringstream ss(
      "# a two-dimensional table\n"
      "p 1\n"
      "\n"
      "q 0\n"
      "gamma 0 0 0 1\n"
      "gamma 0 1 1 1   # unit action\n"
      "gamma 1 0 1 1\n"
      "gamma 1 1 0 -0.5\n");
  auto t = read_algebra<Rational>(ss);
  CHECK(t.gamma(1, 1, 0) == Rational(-1) / Rational(2));
  CHECK(t.gamma(1, 1, 1) == Rational(0));

  std::stringstream fr("p 0\nq 0\ngamma 0 0 0 3/4\n");
  auto u = read_algebra<double>(fr);
  CHECK(u.gamma(0, 0, 0) == 0.75);
}

TEST_CASE("algebra parse failures carry line numbers") {
  auto line_of = [](const std::string& text) {
    std::stringstream ss(text);
    try {
      read_algebra<double>(ss);
    } catch (const ParseError& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(line_of("p 1\nq 0\ngamma 0 2 0 1\n") == 3);   // index out of range
  CHECK(line_of("p 1\nq 0\ngamma 0 0 1\n") == 3);     // missing value
  CHECK(line_of("p 1\np 2\nq 0\n") == 2);             // duplicate p
  CHECK(line_of("gamma 0 0 0 1\n") == 1);             // gamma before p/q
  CHECK(line_of("p 1\nq 0\nrho 0 0 0 1\n") == 3);     // unknown directive
  CHECK(line_of("p 1\nq 0\ngamma 0 0 0 huh\n") == 3); // bad scalar
  CHECK(line_of("p -1\nq 0\n") == 1);                 // negative dimension
  CHECK_THROWS_AS(
      [] {
        std::stringstream ss("p 1\n");
        read_algebra<double>(ss);
      }(),
      ParseError);  // missing q
}

TEST_CASE("slice files round-trip") {
  auto t = make_builtin<Rational>("complex_grassmann:2");
  auto sl = default_slices("complex_grassmann:2", t).slices;
  std::stringstream ss;
  write_slices(ss, sl);
  auto back = read_slices<Rational>(ss, t);
  REQUIRE(back.breakpoints == sl.breakpoints);
  REQUIRE(back.multipliers.size() == sl.multipliers.size());
  for (std::size_t j = 0; j < sl.multipliers.size(); ++j)
    CHECK(back.multipliers[j] == sl.multipliers[j]);
}

TEST_CASE("slice parse failures") {
  auto t = make_builtin<double>("complex_grassmann:1");
  auto parse = [&](const std::string& text) {
    std::stringstream ss(text);
    return read_slices<double>(ss, t);
  };
  CHECK_THROWS_AS(parse("breakpoints 1 3\nmult 1 1 0 0 0\n"), ParseError);  // missing mult 2
  CHECK_THROWS_AS(parse("mult 1 1 0 0 0\nmult 2 0 1 0 0\n"), ParseError);  // no breakpoints
  CHECK_THROWS_AS(parse("breakpoints 1 3\nmult 3 1 0 0 0\nmult 2 0 1 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse("breakpoints 1 3\nmult 1 1 0\nmult 2 0 1 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse("breakpoints 1\n"), ParseError);  // too few breakpoints
}

TEST_CASE("basis vector files round-trip") {
  auto t = make_builtin<Rational>("complex");
  std::vector<Element<Rational>> vecs{basis_element(t, 0), basis_element(t, 1)};
  vecs[0][1] = Rational(2) / Rational(3);
  std::stringstream ss;
  write_basis_vectors(ss, vecs);
  auto back = read_basis_vectors<Rational>(ss, t.dim());
  REQUIRE(back.size() == 2);
  CHECK(back[0] == vecs[0]);
  CHECK(back[1] == vecs[1]);

  std::stringstream empty("# nothing here\n");
  CHECK_THROWS_AS(read_basis_vectors<Rational>(empty, 2), ParseError);
}

TEST_CASE("polynomial files round-trip") {
  auto t = make_builtin<double>("complex_grassmann:1");
  Superspace<double> sp(t, default_slices("complex_grassmann:1", t).slices, 1, 1);
  QsPoly<double> f;
  qs_add_term(f, {2, 0}, unit(t) * 0.25);
  Element<double> c(t.dim());
  c[1] = -1.5;
  c[3] = 2.0 / 3.0;
  qs_add_term(f, {1, 1}, c);
  std::stringstream ss;
  write_polynomial(ss, f);
  auto back = read_polynomial<double>(ss, sp);
  REQUIRE(back.terms.size() == f.terms.size());
  for (const auto& [key, coeff] : f.terms) {
    REQUIRE(back.terms.count(key) == 1);
    CHECK(back.terms.at(key) == coeff);
  }

  auto parse = [&](const std::string& text) {
    std::stringstream in(text);
    return read_polynomial<double>(in, sp);
  };
  CHECK_THROWS_AS(parse("coef 1 1 0 0 0\n"), ParseError);       // wrong token count
  CHECK_THROWS_AS(parse("coef -1 0 1 0 0 0\n"), ParseError);    // negative power
  CHECK_THROWS_AS(parse("term 1 1 0 0 0 0\n"), ParseError);     // unknown directive
  CHECK(parse("# only comments\n").terms.empty());
}

TEST_CASE("file helpers report the path on failure") {
  CHECK_THROWS_AS(read_algebra_file<double>("/nonexistent/algebra.alg"), ParseError);
  try {
    read_algebra_file<double>("/nonexistent/algebra.alg");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/algebra.alg") != std::string::npos);
  }
}

TEST_CASE("exact decimal parsing") {
  CHECK(parse_scalar<Rational>("0.5") == Rational(1) / Rational(2));
  CHECK(parse_scalar<Rational>("-2.25") == Rational(-9) / Rational(4));
  CHECK(parse_scalar<Rational>("3") == Rational(3));
  CHECK(parse_scalar<Rational>("-4/6") == Rational(-2) / Rational(3));
  CHECK_THROWS(parse_scalar<Rational>("1/0"));
  CHECK_THROWS(parse_scalar<Rational>("abc"));
}

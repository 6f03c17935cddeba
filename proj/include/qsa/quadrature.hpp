#pragma once

// Ball and polydisk domains, quadrature of hyperforms over sphere
// boundaries, and the representation integrals built on them.
//
// Determinism: sample i of a run draws from CounterRng(seed, i, salt) and
// accumulation is chunked -- fixed 4096-sample chunks, each summed in sample
// order, reduced in chunk order -- so results are bit-identical for any
// thread count.  Surface areas enter analytically:
// Area(S^{N-1}(rho)) = N Vol(B_N) rho^{N-1}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <thread>
#include <vector>

#include "qsa/kernels.hpp"
#include "qsa/rng.hpp"

namespace qsa {

enum class QuadMethod { monte_carlo, circle_trapezoid };

struct QuadratureSpec {
  QuadMethod method = QuadMethod::monte_carlo;
  long long samples = 100000;  // trapezoid: nodes per circle
  std::uint64_t seed = 20240611;
  int threads = 1;
};

struct BallDomain {
  SuperPoint<double> center;
  double radius = 1.0;
};

/// Product of n balls of dimension p+1 and m balls of dimension q, one per
/// hypervariable; the distinguished boundary is the product of their
/// boundary spheres.
struct PolydiskDomain {
  SuperPoint<double> center;
  std::vector<double> even_radii;  // n entries
  std::vector<double> odd_radii;   // m entries
};

struct IntegralResult {
  Element<double> value;
  double std_error = 0.0;
};

/// sum_a (-1)^a c_a nu_a: pairs an (N-1)-form with the outward unit normal,
/// turning the boundary integral into a plain surface integral against dS.
inline Element<double> boundary_contract(const HyperForm& w, const std::vector<double>& nu) {
  Element<double> out(w.alg_dim);
  for (const auto& [a, c] : w.coeffs) out += c * (a % 2 == 0 ? nu[a] : -nu[a]);
  return out;
}

namespace detail {

constexpr long long kChunk = 4096;
constexpr std::uint64_t kVolumeSalt = 0x766f6cULL;    // volume-term stream
constexpr std::uint64_t kFactorSalt = 0x70640000ULL;  // + factor index

/// Deterministic chunked mean and standard error of an Element-valued
/// integrand over sample indices 0..samples-1.
inline IntegralResult mc_mean(long long samples, int threads, int alg_dim,
                              const std::function<Element<double>(long long)>& integrand) {
  if (samples <= 0) throw StructuralError("mc_mean: sample count must be positive");
  const long long chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::vector<double>> sums(chunks), sqs(chunks);
  auto run_chunk = [&](long long c) {
    std::vector<double> s(alg_dim, 0.0), q(alg_dim, 0.0);
    const long long hi = std::min(samples, (c + 1) * kChunk);
    for (long long i = c * kChunk; i < hi; ++i) {
      Element<double> v = integrand(i);
      for (int k = 0; k < alg_dim; ++k) {
        s[k] += v[k];
        q[k] += v[k] * v[k];
      }
    }
    sums[c] = std::move(s);
    sqs[c] = std::move(q);
  };
  if (threads <= 1) {
    for (long long c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (long long c = t; c < chunks; c += threads) run_chunk(c);
      });
    for (auto& th : pool) th.join();
  }
  std::vector<double> sum(alg_dim, 0.0), sq(alg_dim, 0.0);
  for (long long c = 0; c < chunks; ++c)
    for (int k = 0; k < alg_dim; ++k) {
      sum[k] += sums[c][k];
      sq[k] += sqs[c][k];
    }
  IntegralResult out{Element<double>(alg_dim), 0.0};
  const double ns = static_cast<double>(samples);
  for (int k = 0; k < alg_dim; ++k) {
    out.value[k] = sum[k] / ns;
    if (samples > 1) {
      double var = (sq[k] - sum[k] * sum[k] / ns) / (ns - 1.0);
      if (var > 0.0) out.std_error = std::max(out.std_error, std::sqrt(var / ns));
    }
  }
  return out;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace detail

inline double sphere_area(int N, double rho) {
  return N * unit_ball_volume(N) * std::pow(rho, N - 1);
}

/// Integral over the boundary sphere of f(x) * <kform(x), nu(x)> dS, with f
/// multiplied on the left of the contracted kernel.  Monte Carlo returns the
/// max per-coefficient standard error (scaled by the area factor); the
/// trapezoid rule (1-spheres only) is deterministic and reports 0.
inline IntegralResult boundary_integral(
    const std::function<Element<double>(const SuperPoint<double>&)>& f,
    const std::function<HyperForm(const SuperPoint<double>&)>& kform, const BallDomain& D,
    const QuadratureSpec& spec, const Superspace<double>& sp, std::uint64_t stream_salt = 0) {
  const int N = sp.N();
  const int dim = sp.table.dim();
  const auto cflat = flatten(sp, D.center);
  const double area = sphere_area(N, D.radius);

  auto at_direction = [&](const std::vector<double>& dir) {
    auto flat = cflat;
    for (int c = 0; c < N; ++c) flat[c] += D.radius * dir[c];
    SuperPoint<double> x = unflatten(sp, flat);
    return multiply(f(x), boundary_contract(kform(x), dir), sp.table);
  };

  if (spec.method == QuadMethod::circle_trapezoid) {
    if (N != 2)
      throw StructuralError("boundary_integral: circle_trapezoid requires a 1-sphere boundary");
    Element<double> acc(dim);
    const long long K = spec.samples;
    for (long long k = 0; k < K; ++k) {
      const double phi = detail::kTwoPi * static_cast<double>(k) / static_cast<double>(K);
      acc += at_direction({std::cos(phi), std::sin(phi)});
    }
    return {acc * (area / static_cast<double>(K)), 0.0};
  }

  auto res = detail::mc_mean(spec.samples, spec.threads, dim, [&](long long i) {
    CounterRng rng(spec.seed, static_cast<std::uint64_t>(i), stream_salt);
    return at_direction(sphere_point(rng, N));
  });
  res.value = res.value * area;
  res.std_error *= area;
  return res;
}

namespace detail {

inline void require_strictly_inside(const SuperPoint<double>& x, const BallDomain& D,
                                    const Superspace<double>& sp, const char* who) {
  double d2 = 0.0;
  for (double c : flatten(sp, point_sub(x, D.center))) d2 += c * c;
  if (!(std::sqrt(d2) < D.radius)) throw PointOutsideDomain(who);
}

}  // namespace detail

/// Boundary reproduction of a qS polynomial: f(x') as the integral of
/// f(x) <K(x,x'), nu> over the sphere.  The volume term of the general
/// representation formula vanishes identically because d''f = 0.
inline IntegralResult reproduce(const QsPoly<double>& f, const SuperPoint<double>& f_center,
                                const SuperPoint<double>& x_prime, const BallDomain& D,
                                const QuadratureSpec& spec, const Superspace<double>& sp) {
  detail::require_strictly_inside(x_prime, D, sp,
                                  "reproduce: evaluation point must be strictly inside the ball");
  auto feval = [&](const SuperPoint<double>& x) { return eval_qs(f, x, f_center, sp); };
  auto kform = [&](const SuperPoint<double>& x) { return kernel_K(x, x_prime, sp); };
  return boundary_integral(feval, kform, D, spec, sp);
}

/// Ball integral of d''f ^ K(., x_prime), always by Monte Carlo over
/// spec.samples uniform ball points.  The integrand expands to
/// sum_h (-1)^h g_h(x) c_h(x, x') with g_h the d'' components of f (on the
/// left) and c_h the matching kernel coefficients.  For qS inputs this
/// vanishes up to sampling noise.
inline IntegralResult volume_term(const RealPoly<double>& f, const SuperPoint<double>& x_prime,
                                  const BallDomain& D, const QuadratureSpec& spec,
                                  const Superspace<double>& sp) {
  const int N = sp.N();
  const int dim = sp.table.dim();
  auto g = d_second(f, sp);
  const double vol = unit_ball_volume(N) * std::pow(D.radius, N);
  const auto cflat = flatten(sp, D.center);
  auto res = detail::mc_mean(spec.samples, spec.threads, dim, [&](long long i) {
    CounterRng rng(spec.seed, static_cast<std::uint64_t>(i), detail::kVolumeSalt);
    auto flat = cflat;
    auto pt = ball_point(rng, N);
    for (int c = 0; c < N; ++c) flat[c] += D.radius * pt[c];
    SuperPoint<double> x = unflatten(sp, flat);
    HyperForm K = kernel_K(x, x_prime, sp);
    Element<double> acc(dim);
    for (const auto& [h, gh] : g) {
      if (poly_is_zero(gh)) continue;
      Element<double> ch = K.coeff(h);
      if (is_zero(ch)) continue;
      Element<double> term = multiply(poly_eval(gh, flat, dim), ch, sp.table);
      if (h % 2 == 0)
        acc += term;
      else
        acc -= term;
    }
    return acc;
  });
  res.value = res.value * vol;
  res.std_error *= vol;
  return res;
}

/// Full representation of an arbitrary polynomial: boundary term minus the
/// volume term; the volume part is always Monte Carlo, independent of the
/// boundary method.
inline IntegralResult represent_with_volume(const RealPoly<double>& f,
                                            const SuperPoint<double>& x_prime, const BallDomain& D,
                                            const QuadratureSpec& spec,
                                            const Superspace<double>& sp) {
  detail::require_strictly_inside(
      x_prime, D, sp, "represent_with_volume: evaluation point must be strictly inside the ball");
  const int dim = sp.table.dim();
  auto feval = [&](const SuperPoint<double>& x) { return poly_eval(f, flatten(sp, x), dim); };
  auto kform = [&](const SuperPoint<double>& x) { return kernel_K(x, x_prime, sp); };
  IntegralResult bnd = boundary_integral(feval, kform, D, spec, sp);
  IntegralResult volres = volume_term(f, x_prime, D, spec, sp);

  IntegralResult out;
  out.value = bnd.value - volres.value;
  out.std_error = std::sqrt(bnd.std_error * bnd.std_error + volres.std_error * volres.std_error);
  return out;
}

namespace detail {

/// Shared core of the distinguished-boundary integrals: evaluates
/// f(w) * prod_j <K0_j, nu_j> * prod_j <K1_j, nu_j> given one direction per
/// factor sphere, and runs either the joint Monte Carlo (independent
/// per-factor streams) or the nested trapezoid rule over circle factors.
struct PolydiskBoundary {
  const PolydiskDomain& P;
  const Superspace<double>& sp;
  int factors;

  PolydiskBoundary(const PolydiskDomain& P_, const Superspace<double>& sp_)
      : P(P_), sp(sp_), factors(sp_.n + sp_.m) {
    if (static_cast<int>(P.even_radii.size()) != sp.n ||
        static_cast<int>(P.odd_radii.size()) != sp.m)
      throw StructuralError("polydisk: one radius per hypervariable required");
    for (double r : P.even_radii)
      if (!(r > 0.0)) throw StructuralError("polydisk: radii must be positive");
    for (double r : P.odd_radii)
      if (!(r > 0.0)) throw StructuralError("polydisk: radii must be positive");
  }

  int factor_dim(int j) const { return j < sp.n ? sp.p() + 1 : sp.q(); }
  double factor_radius(int j) const {
    return j < sp.n ? P.even_radii[j] : P.odd_radii[j - sp.n];
  }

  double total_area() const {
    double a = 1.0;
    for (int j = 0; j < factors; ++j) a *= sphere_area(factor_dim(j), factor_radius(j));
    return a;
  }

  SuperPoint<double> boundary_point(const std::vector<std::vector<double>>& dirs) const {
    SuperPoint<double> w = P.center;
    for (int j = 0; j < sp.n; ++j)
      for (int c = 0; c <= sp.p(); ++c) w.y[j][c] += P.even_radii[j] * dirs[j][c];
    for (int j = 0; j < sp.m; ++j)
      for (int l = 1; l <= sp.q(); ++l)
        w.theta[j][sp.p() + l] += P.odd_radii[j] * dirs[sp.n + j][l - 1];
    return w;
  }

  /// Kernel contraction factors at w for the reproduction point x, in the
  /// printed order (even factors first); all factors are even-valued.
  Element<double> kernel_product(const SuperPoint<double>& w,
                                 const std::vector<std::vector<double>>& dirs,
                                 const SuperPoint<double>& x) const {
    Element<double> acc = unit(sp.table);
    for (int j = 0; j < sp.n; ++j)
      acc = multiply(acc, boundary_contract(omega0_eval(w.y[j] - x.y[j], sp.table), dirs[j]),
                     sp.table);
    for (int j = 0; j < sp.m; ++j)
      acc = multiply(acc,
                     boundary_contract(
                         omega1_eval(w.theta[j] - x.theta[j], sp.table, sp.slices), dirs[sp.n + j]),
                     sp.table);
    return acc;
  }

  IntegralResult integrate(const QuadratureSpec& spec,
                           const std::function<Element<double>(
                               const SuperPoint<double>&,
                               const std::vector<std::vector<double>>&)>& integrand) const {
    const int dim = sp.table.dim();
    const double area = total_area();
    if (spec.method == QuadMethod::circle_trapezoid) {
      for (int j = 0; j < factors; ++j)
        if (factor_dim(j) != 2)
          throw StructuralError("polydisk: circle_trapezoid requires every factor to be a circle");
      const long long K = spec.samples;  // nodes per circle
      std::vector<long long> node(factors, 0);
      std::vector<std::vector<double>> dirs(factors, std::vector<double>(2));
      Element<double> acc(dim);
      double cells = std::pow(static_cast<double>(K), factors);
      while (true) {
        for (int j = 0; j < factors; ++j) {
          double phi = kTwoPi * static_cast<double>(node[j]) / static_cast<double>(K);
          dirs[j] = {std::cos(phi), std::sin(phi)};
        }
        acc += integrand(boundary_point(dirs), dirs);
        int j = factors - 1;
        while (j >= 0 && ++node[j] == K) node[j--] = 0;
        if (j < 0) break;
      }
      return {acc * (area / cells), 0.0};
    }
    auto res = mc_mean(spec.samples, spec.threads, dim, [&](long long i) {
      std::vector<std::vector<double>> dirs(factors);
      for (int j = 0; j < factors; ++j) {
        CounterRng rng(spec.seed, static_cast<std::uint64_t>(i), kFactorSalt + j);
        dirs[j] = sphere_point(rng, factor_dim(j));
      }
      return integrand(boundary_point(dirs), dirs);
    });
    res.value = res.value * area;
    res.std_error *= area;
    return res;
  }
};

}  // namespace detail

/// Reproduction over a polydisk from its distinguished boundary: iterated
/// sphere integrals of f(w) times the product of per-factor contracted
/// kernels, multiplied in the printed order (f leftmost).
inline IntegralResult polydisk_reproduce(const QsPoly<double>& f, const SuperPoint<double>& f_center,
                                         const PolydiskDomain& P, const SuperPoint<double>& x,
                                         const QuadratureSpec& spec, const Superspace<double>& sp) {
  detail::PolydiskBoundary bdry(P, sp);
  for (int j = 0; j < sp.n; ++j) {
    double d2 = 0.0;
    for (int c = 0; c <= sp.p(); ++c) {
      double d = x.y[j][c] - P.center.y[j][c];
      d2 += d * d;
    }
    if (!(std::sqrt(d2) < P.even_radii[j]))
      throw PointOutsideDomain("polydisk_reproduce: point must be strictly inside every factor");
  }
  for (int j = 0; j < sp.m; ++j) {
    double d2 = 0.0;
    for (int l = 1; l <= sp.q(); ++l) {
      double d = x.theta[j][sp.p() + l] - P.center.theta[j][sp.p() + l];
      d2 += d * d;
    }
    if (!(std::sqrt(d2) < P.odd_radii[j]))
      throw PointOutsideDomain("polydisk_reproduce: point must be strictly inside every factor");
  }
  return bdry.integrate(spec, [&](const SuperPoint<double>& w,
                                  const std::vector<std::vector<double>>& dirs) {
    return multiply(eval_qs(f, w, f_center, sp), bdry.kernel_product(w, dirs, x), sp.table);
  });
}

/// Extension-from-boundary integral: F(x') = int_{boundary} f <K(.,x'), nu>.
/// Defined only when the space has at least two hypervariables.
inline IntegralResult hartogs_extend(
    const std::function<Element<double>(const SuperPoint<double>&)>& f, const BallDomain& D,
    const SuperPoint<double>& x_prime, const QuadratureSpec& spec, const Superspace<double>& sp) {
  if (sp.n + sp.m < 2)
    throw DimensionTooSmall("hartogs_extend: at least two hypervariables required");
  detail::require_strictly_inside(
      x_prime, D, sp, "hartogs_extend: evaluation point must be strictly inside the ball");
  auto kform = [&](const SuperPoint<double>& x) { return kernel_K(x, x_prime, sp); };
  return boundary_integral(f, kform, D, spec, sp);
}

struct CauchyBoundRow {
  std::vector<int> order;  // one entry per hypervariable power, key layout
  double lhs = 0.0;        // norm of the exact derivative at the center
  double sup = 0.0;        // sampled sup of ||f|| on the distinguished boundary
  double ratio = 0.0;      // lhs * r^order / (order! * sup)
};

struct CauchyBoundReport {
  std::vector<CauchyBoundRow> rows;
  double max_ratio = 0.0;
};

/// Derivative-growth check on a polydisk: for each requested order, the
/// exact derivative norm at the center (factorial times the recentered
/// coefficient) against order! * sup ||f|| * r^{-order}.  The reported ratio
/// is their quotient; the classical sharp case f = y^d on the unit disk
/// gives exactly 1 at order d.
inline CauchyBoundReport cauchy_bounds_check(const QsPoly<double>& f,
                                             const SuperPoint<double>& f_center,
                                             const PolydiskDomain& P,
                                             const std::vector<std::vector<int>>& orders,
                                             const QuadratureSpec& spec,
                                             const Superspace<double>& sp) {
  detail::PolydiskBoundary bdry(P, sp);
  QsPoly<double> at_center = real_to_qs(qs_to_real(f, f_center, sp), P.center, sp);

  double sup = 0.0;
  for (long long i = 0; i < spec.samples; ++i) {
    std::vector<std::vector<double>> dirs(bdry.factors);
    for (int j = 0; j < bdry.factors; ++j) {
      CounterRng rng(spec.seed, static_cast<std::uint64_t>(i), detail::kFactorSalt + j);
      dirs[j] = sphere_point(rng, bdry.factor_dim(j));
    }
    sup = std::max(sup, norm(eval_qs(f, bdry.boundary_point(dirs), f_center, sp)));
  }

  CauchyBoundReport report;
  const int keylen = qs_key_length(sp);
  for (const auto& order : orders) {
    if (static_cast<int>(order.size()) != keylen)
      throw StructuralError("cauchy_bounds_check: order key has the wrong length");
    CauchyBoundRow row;
    row.order = order;
    row.sup = sup;
    double fct = 1.0;
    for (int e : order) fct *= to_double(factorial_of<double>(e));
    auto it = at_center.terms.find(order);
    double coeff_norm = it != at_center.terms.end() ? norm(it->second) : 0.0;
    row.lhs = fct * coeff_norm;
    double rpow = 1.0;
    for (int i = 0; i < sp.n; ++i) rpow *= std::pow(P.even_radii[i], order[i]);
    for (int i = 0; i < sp.m; ++i) {
      int total = 0;
      for (int k = 1; k <= sp.r(); ++k) total += order[sp.n + (k - 1) * sp.m + i];
      rpow *= std::pow(P.odd_radii[i], total);
    }
    row.ratio = sup > 0.0 ? coeff_norm * rpow / sup
                          : (coeff_norm == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    report.max_ratio = std::max(report.max_ratio, row.ratio);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace qsa

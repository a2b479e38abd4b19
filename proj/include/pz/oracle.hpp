// Independent oracles: the index computed numerically by continuing
// log(f(z + e_q) / f(z)) along period segments, nu_pq by brute-force
// enumeration of lattice values, and an end-to-end verification report for
// constructed models.
//
// The numeric index trusts the caller: f must be entire with the claimed
// divisor, which cannot be confirmed from samples.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pz/construct.hpp"
#include "pz/error.hpp"
#include "pz/gauss_rat.hpp"
#include "pz/indexcalc.hpp"
#include "pz/types.hpp"

namespace pz {

/// Returns log f(z) on any branch; -inf real part (or NaN) at zeros.
using LogEvaluator = std::function<cplx(std::span<const cplx>)>;

struct ContinuationConfig {
  CVec z0;                  // empty: default_base_point(n)
  int initial_steps = 64;
  int max_depth = 40;       // bisection depth per initial step
  double residual_tol = 0.1;
  int retries = 8;
  std::uint64_t seed = 0x5eed;
};

/// Off the real cube, where plane divisors concentrate.
inline CVec default_base_point(std::size_t n) {
  static constexpr double re[] = {0.137, 0.271, 0.419, 0.053, 0.367, 0.229, 0.091, 0.457};
  static constexpr double im[] = {0.311, 0.183, 0.097, 0.241, 0.157, 0.273, 0.119, 0.203};
  CVec z(n);
  const double scale = 2.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) z[j] = {re[j % 8], im[j % 8] * scale};
  return z;
}

namespace detail {

inline double wrap_phase(double x) {
  x = std::remainder(x, 2.0 * pi);
  return x;
}

inline bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

struct RatioPath {
  const LogEvaluator& f;
  CVec start, dir, shift;
  int max_depth;

  // log f(z + shift) - log f(z) at z = start + t dir, t complex.
  cplx ratio(cplx t) const {
    CVec z(start.size()), zs(start.size());
    for (std::size_t j = 0; j < start.size(); ++j) {
      z[j] = start[j] + t * dir[j];
      zs[j] = z[j] + shift[j];
    }
    cplx a = f(zs), b = f(z);
    if (!finite(a) || !finite(b)) throw Error(Errc::path_through_zero, "evaluator hit a zero on the path");
    return a - b;
  }

  // d arg / dt = -d log|ratio| / d(Im t) (Cauchy-Riemann), so the phase
  // rate comes from moduli alone and cannot alias.
  double rate(double t) const {
    constexpr double h = 1e-5;
    return -(ratio(cplx(t, h)).real() - ratio(cplx(t, -h)).real()) / (2.0 * h);
  }
};

}  // namespace detail

/// Change of the continuous branch of log(f(z + shift) / f(z)) as z runs
/// from start to start + dir. Real part: change of log|ratio|; imaginary
/// part: tracked argument change. Steps are at most 1/initial_steps and are
/// halved until the predicted and observed phase jumps agree and stay below
/// pi/2.
inline cplx continued_log_ratio(const LogEvaluator& f, const CVec& start, const CVec& dir, const CVec& shift,
                                int initial_steps = 64, int max_depth = 40) {
  detail::RatioPath path{f, start, dir, shift, max_depth};
  constexpr double lim = pi / 2;
  const double hmax = 1.0 / initial_steps;
  const double hmin = std::ldexp(hmax, -max_depth);
  const cplx r_begin = path.ratio(0.0);
  cplx r = r_begin;
  double rho = path.rate(0.0);
  double t = 0.0, phase = 0.0;
  while (t < 1.0) {
    double h = std::min(1.0 - t, hmax);
    if (std::abs(rho) * h > lim / 2) h = (lim / 2) / std::abs(rho);
    while (true) {
      if (h < hmin) throw Error(Errc::path_through_zero, "phase does not settle: path passes a zero");
      const double t1 = (1.0 - t - h < 1e-15) ? 1.0 : t + h;
      const cplx r1 = path.ratio(t1);
      const double rho1 = path.rate(t1);
      const double predicted = 0.5 * (t1 - t) * (rho + rho1);
      const double observed = detail::wrap_phase(r1.imag() - r.imag());
      const double miss = detail::wrap_phase(observed - predicted);
      if (std::abs(predicted) < lim && std::abs(rho1) * (t1 - t) < lim && std::abs(miss) < lim / 2) {
        phase += predicted + miss;
        t = t1;
        r = r1;
        rho = rho1;
        break;
      }
      h *= 0.5;
    }
  }
  return {r.real() - r_begin.real(), phase};
}

/// N(k_p e_p, k_q e_q) = (Delta_{k_p e_p} g_q - Delta_{k_q e_q} g_p) / (2 pi i),
/// each difference obtained by branch continuation along its period
/// segment. Real parts cancel identically, so only tracked phases enter.
inline long numeric_index(const LogEvaluator& f, std::size_t n, std::size_t p, std::size_t q,
                          const ContinuationConfig& cfg = {}, long kp = 1, long kq = 1) {
  if (p >= n || q >= n) throw Error(Errc::domain, "numeric_index: index out of range");
  if (p == q) return 0;
  const CVec base = cfg.z0.empty() ? default_base_point(n) : cfg.z0;
  if (base.size() != n) throw Error(Errc::dimension_mismatch, "numeric_index: base point dimension");
  CVec up(n, 0.0), uq(n, 0.0);
  up[p] = static_cast<double>(kp);
  uq[q] = static_cast<double>(kq);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> off(-0.07, 0.07);
  Errc last = Errc::path_through_zero;
  std::string last_msg;
  for (int attempt = 0; attempt <= cfg.retries; ++attempt) {
    CVec z0 = base;
    if (attempt > 0)
      for (auto& x : z0) x += cplx(off(rng), off(rng));
    try {
      const double dpq = continued_log_ratio(f, z0, up, uq, cfg.initial_steps, cfg.max_depth).imag();
      const double dqp = continued_log_ratio(f, z0, uq, up, cfg.initial_steps, cfg.max_depth).imag();
      const double val = (dpq - dqp) / (2.0 * pi);
      const double r = std::round(val);
      if (std::abs(val - r) >= cfg.residual_tol) {
        last = Errc::non_integer_result;
        last_msg = "numeric index " + std::to_string(val) + " is not near an integer";
        continue;
      }
      return static_cast<long>(r);
    } catch (const Error& e) {
      if (e.code() != Errc::path_through_zero) throw;
      last = e.code();
      last_msg = e.what();
    }
  }
  throw Error(last, last_msg);
}

inline IndexMatrix numeric_index_matrix(const LogEvaluator& f, std::size_t n, const ContinuationConfig& cfg = {}) {
  IndexMatrix m(n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) {
      long v = numeric_index(f, n, p, q, cfg);
      m(p, q) = v;
      m(q, p) = -v;
    }
  return m;
}

namespace detail {

// Coefficients (Re a_j, Im a_j) scaled to integers, with the pair (p, q)
// oriented so that det(v_p, v_q) > 0.
struct ScaledPair {
  std::vector<std::pair<Integer, Integer>> v;
  Integer d;
  int sign = 1;
  std::size_t p = 0, q = 0;

  ScaledPair(const LinearForm& form, std::size_t p_, std::size_t q_) : p(p_), q(q_) {
    const std::size_t n = form.dim();
    if (p >= n || q >= n || p == q) throw Error(Errc::domain, "lattice-point count: bad index pair");
    Integer den = 1;
    for (const auto& x : form.a) {
      den = lcm(den, denominator_of(x.re()));
      den = lcm(den, denominator_of(x.im()));
    }
    for (const auto& x : form.a) v.emplace_back(numerator_of(x.re() * den), numerator_of(x.im() * den));
    d = det(v[p], v[q]);
    if (d == 0) throw Error(Errc::degenerate_parallelogram, "lattice-point count needs Im(a_q/a_p) != 0");
    sign = d > 0 ? 1 : -1;
    if (sign < 0) d = -d;
  }

  static Integer det(const std::pair<Integer, Integer>& u, const std::pair<Integer, Integer>& w) {
    return u.first * w.second - u.second * w.first;
  }

  // Parallelogram coordinates of w, times d.
  std::pair<Integer, Integer> coords(const std::pair<Integer, Integer>& w) const {
    return {det(w, v[q]) * sign, det(v[p], w) * sign};
  }

  bool inside(const std::pair<Integer, Integer>& w) const {
    auto [s, t] = coords(w);
    return s >= 0 && s < d && t >= 0 && t < d;
  }

  // The translate of w by Z v_p + Z v_q lying in the half-open parallelogram.
  std::pair<Integer, Integer> reduce(const std::pair<Integer, Integer>& w) const {
    auto [s, t] = coords(w);
    auto fl = [this](const Integer& x) {
      Integer r = x / d;
      if (r * d != x && x < 0) --r;
      return r;
    };
    const Integer fs = fl(s), ft = fl(t);
    return {w.first - fs * v[p].first - ft * v[q].first, w.second - fs * v[p].second - ft * v[q].second};
  }
};

}  // namespace detail

/// Distinct values <a,k>, k in [-K,K]^n, in the half-open parallelogram
/// spanned by a_p and a_q. A lower bound for nu that is exact once K is
/// large enough.
inline Integer nu_box_count(const LinearForm& form, std::size_t p, std::size_t q, long K) {
  detail::ScaledPair sp(form, p, q);
  const std::size_t n = form.dim();
  std::set<std::pair<Integer, Integer>> seen;
  std::vector<long> k(n, -K);
  while (true) {
    std::pair<Integer, Integer> w{0, 0};
    for (std::size_t j = 0; j < n; ++j) {
      w.first += sp.v[j].first * k[j];
      w.second += sp.v[j].second * k[j];
    }
    if (sp.inside(w)) seen.insert(w);
    std::size_t j = 0;
    while (j < n && k[j] == K) k[j++] = -K;
    if (j == n) break;
    ++k[j];
  }
  return Integer(seen.size());
}

/// Values <a,k> in the half-open parallelogram P spanned by a_p and a_q,
/// found by exhaustive search: starting from 0, add every +-a_j and fold
/// the result back into P by an exact 2x2 solve, until nothing new appears.
/// Every value in P is reached because the folding only subtracts values of
/// the form itself.
inline Integer nu_bruteforce(const LinearForm& form, std::size_t p, std::size_t q,
                             std::size_t limit = 50'000'000) {
  detail::ScaledPair sp(form, p, q);
  std::set<std::pair<Integer, Integer>> seen{{0, 0}};
  std::vector<std::pair<Integer, Integer>> frontier{{0, 0}};
  while (!frontier.empty()) {
    std::vector<std::pair<Integer, Integer>> next;
    for (const auto& w : frontier)
      for (const auto& g : sp.v)
        for (int sgn : {1, -1}) {
          auto x = sp.reduce({w.first + sgn * g.first, w.second + sgn * g.second});
          if (seen.insert(x).second) next.push_back(std::move(x));
        }
    if (seen.size() > limit) throw Error(Errc::domain, "nu_bruteforce: search limit exceeded");
    frontier = std::move(next);
  }
  return Integer(seen.size());
}

struct ZeroProbe {
  std::size_t component = 0;
  CVec point;
  double log_abs = 0.0;          // log|F| at the point
  double log_local_scale = 0.0;  // the scale the test compares against
  double log_max_scale = 0.0;    // log max|F| over radius-0.25 probes around the divisor point
  bool ok = false;
};

struct VerifyReport {
  std::vector<double> periodicity_residual;  // max over samples, per direction
  std::vector<ZeroProbe> zero_hits;
  std::vector<ZeroProbe> displaced;
  IndexMatrix formula_index;
  IndexMatrix numeric_index;
  bool index_agrees = false;
  std::string index_error;  // set when continuation failed
  double tol = 1e-8;

  double max_residual() const {
    double r = 0.0;
    for (double x : periodicity_residual) r = std::max(r, x);
    return r;
  }
  bool passed() const {
    if (!(max_residual() < tol) || !index_agrees || !numeric_index.is_zero()) return false;
    for (const auto& z : zero_hits)
      if (!z.ok) return false;
    for (const auto& z : displaced)
      if (!z.ok) return false;
    return true;
  }
};

namespace detail {

inline CVec random_unit(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  CVec u(n);
  double s = 0.0;
  for (auto& x : u) {
    x = {g(rng), g(rng)};
    s += std::norm(x);
  }
  for (auto& x : u) x /= std::sqrt(s);
  return u;
}

/// Random unit direction biased toward the normal of the hyperplane so the
/// displacement actually leaves it.
inline CVec transversal_direction(const LinearForm& form, std::mt19937_64& rng) {
  const std::size_t n = form.dim();
  CVec u = random_unit(rng, n);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * pi);
  const cplx phase = std::polar(1.0, ang(rng));
  double na = 0.0;
  for (const auto& x : form.a) na += std::norm(x.to_complex());
  na = std::sqrt(na);
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    u[j] = 0.5 * u[j] + phase * std::conj(form.a[j].to_complex()) / na;
    s += std::norm(u[j]);
  }
  for (auto& x : u) x /= std::sqrt(s);
  return u;
}

inline double log_max_scale(const LogEvaluator& f, const CVec& z, std::mt19937_64& rng, int probes = 16) {
  double best = -INFINITY;
  for (int k = 0; k < probes; ++k) {
    CVec u = random_unit(rng, z.size());
    CVec y(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) y[j] = z[j] + 0.25 * u[j];
    best = std::max(best, f(y).real());
  }
  return best;
}

/// Mean of log|F| over the complex circle z + r e^{it} v. For F without
/// zeros inside that disc this equals log|F(z)|; each enclosed zero pulls
/// log|F(z)| below the mean (Jensen).
inline double log_circle_mean(const LogEvaluator& f, const CVec& z, const CVec& v, double r, int samples = 32) {
  double sum = 0.0;
  int used = 0;
  for (int k = 0; k < samples; ++k) {
    const cplx w = std::polar(r, 2.0 * pi * k / samples);
    CVec y(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) y[j] = z[j] + w * v[j];
    const double x = f(y).real();
    if (!std::isfinite(x)) continue;
    sum += x;
    ++used;
  }
  if (used == 0) return -INFINITY;
  return sum / used;
}

}  // namespace detail

/// Relative periodicity residual |F(z + e_p) - F(z)| / max(|F(z)|, |F(z + e_p)|)
/// computed from log values.
inline double periodicity_residual(const LogEvaluator& f, const CVec& z, std::size_t p) {
  CVec zp = z;
  zp[p] += 1.0;
  const cplx d = f(zp) - f(z);
  const cplx e = std::exp(d);
  return std::abs(e - 1.0) / std::max(1.0, std::abs(e));
}

/// A point on the reproduction of a component: solves l(z) = <a,k> exactly
/// for the pivot coordinate after choosing the others at random.
inline CVec sample_divisor_point(const LinearForm& form, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kd(-2, 2), nd(-12, 12);
  const std::size_t n = form.dim();
  const std::size_t piv = form.pivot();
  std::vector<GaussRat> z(n);
  GaussRat rhs = -form.c;
  for (std::size_t j = 0; j < n; ++j) {
    rhs += form.a[j] * GaussRat(kd(rng));
    if (j == piv) continue;
    z[j] = GaussRat(Rational(nd(rng), 16), Rational(nd(rng), 32));
    rhs -= form.a[j] * z[j];
  }
  z[piv] = rhs / form.a[piv];
  CVec out;
  for (const auto& x : z) out.push_back(x.to_complex());
  return out;
}

inline VerifyReport verify_model(const FunctionModel& M, const PlaneDivisor& Z, std::uint64_t seed = 1,
                                 double tol = 1e-8, int periodic_samples = 50, int zero_samples = 20) {
  if (M.n != Z.n) throw Error(Errc::dimension_mismatch, "model and divisor dimensions differ");
  VerifyReport rep;
  rep.tol = tol;
  LogEvaluator f = [&M](std::span<const cplx> z) { return eval_model_log(M, z); };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);

  rep.periodicity_residual.assign(Z.n, 0.0);
  for (int s = 0; s < periodic_samples; ++s) {
    CVec z(Z.n);
    for (auto& x : z) x = {u(rng), u(rng)};
    for (std::size_t p = 0; p < Z.n; ++p)
      rep.periodicity_residual[p] = std::max(rep.periodicity_residual[p], periodicity_residual(f, z, p));
  }

  if (!Z.components.empty()) {
    for (int s = 0; s < zero_samples; ++s) {
      const std::size_t comp = static_cast<std::size_t>(s) % Z.components.size();
      ZeroProbe hit;
      hit.component = comp;
      hit.point = sample_divisor_point(Z.components[comp], rng);
      hit.log_abs = f(hit.point).real();
      hit.log_max_scale = detail::log_max_scale(f, hit.point, rng);
      hit.log_local_scale = hit.log_max_scale;
      hit.ok = hit.log_abs < hit.log_local_scale + std::log(1e-8);
      // Displaced probes: the max scale also absorbs the exponential growth
      // of |F| across the probe ball, so nonvanishing is judged against the
      // circle mean around the displaced point instead.
      ZeroProbe off = hit;
      CVec dir = detail::transversal_direction(Z.components[comp], rng);
      for (std::size_t j = 0; j < Z.n; ++j) off.point[j] += 0.1 * dir[j];
      off.log_abs = f(off.point).real();
      off.log_local_scale = detail::log_circle_mean(f, off.point, dir, 0.05);
      off.ok = off.log_abs > off.log_local_scale + std::log(1e-3);
      rep.zero_hits.push_back(std::move(hit));
      rep.displaced.push_back(std::move(off));
    }
  }

  rep.formula_index = divisor_index(Z);
  ContinuationConfig cfg;
  cfg.seed = seed;
  try {
    rep.numeric_index = numeric_index_matrix(f, Z.n, cfg);
    rep.index_agrees = rep.numeric_index == rep.formula_index;
  } catch (const Error& e) {
    rep.index_error = e.what();
  }
  return rep;
}

}  // namespace pz

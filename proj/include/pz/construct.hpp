// Numerical construction of entire periodic functions with prescribed plane
// zeros: the one-variable products Phi_T, the L1 factors, the L2 factors
// Phi_T(l(z)/w1) and the quadratic corrector H that removes their
// quasi-periodicity.
//
// Evaluation is carried out on logarithms (any branch) so that large
// imaginary parts do not overflow; eval_model() exponentiates at the end.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "pz/error.hpp"
#include "pz/forms.hpp"
#include "pz/gauss_rat.hpp"
#include "pz/intlinalg.hpp"
#include "pz/lattice.hpp"
#include "pz/types.hpp"

namespace pz {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx two_pi_i{0.0, 2.0 * std::numbers::pi};

/// log(1 - e^u) on some branch.
inline cplx log1m_exp(cplx u) {
  if (u.real() > 30.0) return u + std::log(std::exp(-u) - 1.0);
  if (u.real() < -30.0) return -std::exp(u);
  return std::log(1.0 - std::exp(u));
}

inline void check_phi_args(cplx T, double eps) {
  if (!(T.imag() != 0.0) || !std::isfinite(T.imag())) throw Error(Errc::im_t_zero, "Phi_T needs Im T != 0");
  if (!(eps > 0.0)) throw Error(Errc::nonpositive_tolerance, "tolerance must be positive");
}

/// Cutoff Q: the product runs over |q| <= Q. Omitted factors deviate from 1
/// by less than exp(-2*pi*(|q|*|Im T| - |Im w|)).
inline long phi_cutoff(cplx T, cplx w, double eps) {
  check_phi_args(T, eps);
  const double t = std::abs(T.imag());
  return static_cast<long>(std::ceil(std::abs(w.imag()) / t + std::log(1.0 / eps) / (2.0 * pi * t))) + 2;
}

/// log Phi_T(w). Factors are normalized to tend to 1:
///   Im T > 0:  1 - e^{-2 pi i (w - qT)} for q >= 0,  1 - e^{2 pi i (w - qT)} for q < 0,
///   Im T < 0:  the two exponent signs swap.
/// Simple zeros exactly at w in Z + T*Z; Phi_T(w + 1) = Phi_T(w).
inline cplx phi_log(cplx T, cplx w, double eps, long extra_terms = 0) {
  const long Q = phi_cutoff(T, w, eps) + extra_terms;
  const double s = T.imag() > 0 ? 1.0 : -1.0;
  cplx acc = 0.0;
  for (long q = -Q; q <= Q; ++q) {
    const cplx x = w - static_cast<double>(q) * T;
    const double dir = (q >= 0) ? -s : s;
    acc += log1m_exp(dir * two_pi_i * x);
  }
  return acc;
}

inline cplx phi_eval(cplx T, cplx w, double eps, long extra_terms = 0) {
  return std::exp(phi_log(T, w, eps, extra_terms));
}

/// Exponent of the one-step law Phi_T(w + T) = exp(step) * Phi_T(w):
///   step = i*pi - 2*pi*i*sign(Im T)*(w + T).
inline cplx phi_step_exponent(cplx T, cplx w) {
  const double s = T.imag() > 0 ? 1.0 : -1.0;
  return cplx(0.0, pi) - s * two_pi_i * (w + T);
}

/// f_l(z) = sin(pi(<k0,z> + c)) e^{i pi(<k0,z> + c)}, an entire function
/// with period 1 in every coordinate.
inline cplx f_l1_eval(std::span<const Integer> k0, cplx c, std::span<const cplx> z) {
  if (k0.size() != z.size()) throw Error(Errc::dimension_mismatch, "f_l1_eval: dimension mismatch");
  cplx x = c;
  for (std::size_t j = 0; j < z.size(); ++j) x += static_cast<double>(k0[j]) * z[j];
  return std::sin(pi * x) * std::exp(cplx(0.0, pi) * x);
}

/// Affine map z -> 2*pi*i*(sum_j lin_j z_j + cst) with exact Gaussian
/// rational data; g_p for F(z + shift) = e^{g_p(z)} F(z).
struct QuasiPeriodExponent {
  std::size_t p = 0;
  std::vector<GaussRat> lin;
  GaussRat cst;

  std::vector<cplx> lambda() const {
    std::vector<cplx> out;
    for (const auto& x : lin) out.push_back(two_pi_i * x.to_complex());
    return out;
  }
  cplx mu() const { return two_pi_i * cst.to_complex(); }
  cplx operator()(std::span<const cplx> z) const {
    cplx acc = cst.to_complex();
    for (std::size_t j = 0; j < z.size(); ++j) acc += lin[j].to_complex() * z[j];
    return two_pi_i * acc;
  }
};

/// Exponent for the k-fold period k*e_p from the one for e_p:
/// g_{k e_p}(z) = sum_{j<k} g(z + j e_p).
inline QuasiPeriodExponent compose_period(const QuasiPeriodExponent& g, long k) {
  if (k <= 0) throw Error(Errc::invalid_transform, "period scaling needs k > 0");
  QuasiPeriodExponent out = g;
  for (auto& x : out.lin) x *= GaussRat(k);
  out.cst = GaussRat(k) * g.cst + g.lin[g.p] * GaussRat(Rational(k * (k - 1), 2));
  return out;
}

struct L1Factor {
  std::vector<Integer> k0;
  GaussRat c;    // reduced offset
  int sign = 1;  // sign of gamma = Im c / |k0|, with sign(0) = +1
  int mult = 1;
};

struct L2Factor {
  LinearForm form;
  ValueLattice lattice;
  std::vector<LatticeCoords> coords;  // a_p = m1 w1 + m2 w2 for each direction p
  int mult = 1;
};

/// Exponent of F_(l)(z) = Phi_T(l(z)/w1) for the shift e_p. With
/// a_p = m1 w1 + m2 w2 the argument moves by m1 + m2*T; iterating the one
/// step law m2 times gives
///   g/(2 pi i) = m2/2 - s*[m2 l(z)/w1 + m2(m2+1)/2 * T],  s = sign Im T.
inline QuasiPeriodExponent quasi_period_exponent(const L2Factor& f, std::size_t p) {
  const auto& lat = f.lattice;
  const GaussRat m2(f.coords.at(p).m2);
  const GaussRat s(sign_im(lat.tau));
  QuasiPeriodExponent g;
  g.p = p;
  for (const auto& a : f.form.a) g.lin.push_back(-s * m2 * a / lat.w1);
  g.cst = m2 / GaussRat(2) -
          s * (m2 * f.form.c / lat.w1 + m2 * (m2 + GaussRat(1)) / GaussRat(2) * lat.tau);
  return g;
}

inline L2Factor make_l2_factor(const LinearForm& form) {
  L2Factor f;
  f.form = form;
  f.mult = form.mult;
  f.lattice = value_lattice(form);
  for (const auto& a : form.a) f.coords.push_back(decompose(f.lattice, a));
  return f;
}

inline L1Factor make_l1_factor(const ClassifiedForm& cf) {
  L1Factor f;
  f.k0 = cf.k0;
  f.c = cf.reduced_c;
  f.mult = cf.form.mult;
  f.sign = cf.reduced_c.im() < 0 ? -1 : 1;
  return f;
}

/// log of the L1 factor 2i sin(pi x) e^{s i pi x}, x = <k0,z> + c:
/// e^{2 pi i x} - 1 for s = +1 and 1 - e^{-2 pi i x} for s = -1.
inline cplx l1_factor_log(const L1Factor& f, std::span<const cplx> z) {
  cplx x = f.c.to_complex();
  for (std::size_t j = 0; j < z.size(); ++j) x += static_cast<double>(f.k0[j]) * z[j];
  if (f.sign > 0) return cplx(0.0, pi) + log1m_exp(two_pi_i * x);
  return log1m_exp(-two_pi_i * x);
}

inline cplx l1_factor_eval(const L1Factor& f, std::span<const cplx> z) { return std::exp(l1_factor_log(f, z)); }

inline cplx eval_form(const LinearForm& form, std::span<const cplx> z) {
  cplx acc = form.c.to_complex();
  for (std::size_t j = 0; j < z.size(); ++j) acc += form.a[j].to_complex() * z[j];
  return acc;
}

inline cplx l2_factor_log(const L2Factor& f, std::span<const cplx> z, double eps) {
  const cplx w = eval_form(f.form, z) / f.lattice.w1.to_complex();
  return phi_log(f.lattice.tau.to_complex(), w, eps);
}

/// Evaluable model F = F1 * F~ * e^{-H} of an entire periodic function.
///
/// The multiplier of F~ for the shift e_p is G_p = 2 pi i (sum_j S[p][j] z_j + R[p]).
/// H = 2 pi i (1/2 z^T sigma z + rho . z), with sigma = S (symmetric when
/// the index vanishes) and rho_j = R_j - sigma_jj / 2, so that
/// H(z + e_p) - H(z) = G_p(z).
struct FunctionModel {
  std::size_t n = 0;
  double eps = 1e-12;
  std::vector<L1Factor> l1;
  std::vector<L2Factor> l2;
  Matrix<GaussRat> S;
  std::vector<GaussRat> R;
  Matrix<GaussRat> sigma;
  std::vector<GaussRat> rho;

  // Double-precision images of the exact data above, filled by prepare().
  struct Numeric {
    std::vector<cplx> sigma;  // row major n*n
    std::vector<cplx> rho;
    std::vector<cplx> w1;
    std::vector<cplx> tau;
    std::vector<std::vector<cplx>> a;
    std::vector<cplx> c;
  } num;

  void prepare() {
    num = {};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) num.sigma.push_back(sigma[i][j].to_complex());
    for (const auto& r : rho) num.rho.push_back(r.to_complex());
    for (const auto& f : l2) {
      num.w1.push_back(f.lattice.w1.to_complex());
      num.tau.push_back(f.lattice.tau.to_complex());
      std::vector<cplx> a;
      for (const auto& x : f.form.a) a.push_back(x.to_complex());
      num.a.push_back(std::move(a));
      num.c.push_back(f.form.c.to_complex());
    }
  }
};

inline QuasiPeriodExponent zero_exponent(std::size_t n, std::size_t p) {
  QuasiPeriodExponent g;
  g.p = p;
  g.lin.assign(n, GaussRat());
  return g;
}

/// Multiplier G_p of the L2 product F~ (L1 factors are periodic).
inline QuasiPeriodExponent quasi_period_exponent(const FunctionModel& m, std::size_t p) {
  QuasiPeriodExponent g = zero_exponent(m.n, p);
  g.lin = m.S.at(p);
  g.cst = m.R.at(p);
  return g;
}

inline FunctionModel build_model(const PlaneDivisor& Z, double eps = 1e-12) {
  Z.validate();
  if (!(eps > 0.0)) throw Error(Errc::nonpositive_tolerance, "tolerance must be positive");
  FunctionModel m;
  m.n = Z.n;
  m.eps = eps;
  m.S.assign(Z.n, std::vector<GaussRat>(Z.n));
  m.R.assign(Z.n, GaussRat());
  for (const auto& form : Z.components) {
    ClassifiedForm cf = classify(form);
    if (cf.cls == FormClass::L1) {
      m.l1.push_back(make_l1_factor(cf));
      continue;
    }
    L2Factor f = make_l2_factor(form);
    const GaussRat mult(f.mult);
    for (std::size_t p = 0; p < Z.n; ++p) {
      QuasiPeriodExponent g = quasi_period_exponent(f, p);
      for (std::size_t j = 0; j < Z.n; ++j) m.S[p][j] += mult * g.lin[j];
      m.R[p] += mult * g.cst;
    }
    m.l2.push_back(std::move(f));
  }
  // Index N_pq = (Delta_p G_q - Delta_q G_p) / (2 pi i) = S[q][p] - S[p][q].
  for (std::size_t p = 0; p < Z.n; ++p)
    for (std::size_t q = p + 1; q < Z.n; ++q)
      if (!(m.S[p][q] == m.S[q][p])) {
        GaussRat N = m.S[q][p] - m.S[p][q];
        throw Error(Errc::index_obstruction, "index N(" + std::to_string(p + 1) + "," + std::to_string(q + 1) +
                                                 ") = " + N.str() + " != 0; no periodic corrector exists");
      }
  m.sigma = m.S;
  m.rho.resize(Z.n);
  for (std::size_t j = 0; j < Z.n; ++j) m.rho[j] = m.R[j] - m.sigma[j][j] / GaussRat(2);
  m.prepare();
  return m;
}

/// Exact check of H(z + e_p) - H(z) = G_p coefficient by coefficient.
inline bool corrector_identity_holds(const FunctionModel& m) {
  const GaussRat half(Rational(1, 2));
  for (std::size_t p = 0; p < m.n; ++p) {
    for (std::size_t j = 0; j < m.n; ++j) {
      GaussRat lin = half * (m.sigma[p][j] + m.sigma[j][p]);
      if (!(lin == m.S[p][j])) return false;
    }
    if (!(half * m.sigma[p][p] + m.rho[p] == m.R[p])) return false;
  }
  return true;
}

inline cplx corrector_eval(const FunctionModel& m, std::span<const cplx> z) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < m.n; ++i) {
    cplx row = 0.0;
    for (std::size_t j = 0; j < m.n; ++j) row += m.num.sigma[i * m.n + j] * z[j];
    acc += 0.5 * z[i] * row + m.num.rho[i] * z[i];
  }
  return two_pi_i * acc;
}

/// log F(z) on some branch; Re is log|F|.
inline cplx eval_model_log(const FunctionModel& m, std::span<const cplx> z) {
  if (z.size() != m.n) throw Error(Errc::dimension_mismatch, "eval_model: point has wrong dimension");
  cplx acc = 0.0;
  for (const auto& f : m.l1) acc += static_cast<double>(f.mult) * l1_factor_log(f, z);
  for (std::size_t k = 0; k < m.l2.size(); ++k) {
    cplx l = m.num.c[k];
    for (std::size_t j = 0; j < m.n; ++j) l += m.num.a[k][j] * z[j];
    acc += static_cast<double>(m.l2[k].mult) * phi_log(m.num.tau[k], l / m.num.w1[k], m.eps);
  }
  return acc - corrector_eval(m, z);
}

inline cplx eval_model(const FunctionModel& m, std::span<const cplx> z) { return std::exp(eval_model_log(m, z)); }

/// log of Psi(l(z)/a_p) = prod_j Phi_{T_q}(l(z)/a_p - x_j/a_p), T_q = a_q/a_p:
/// a function with divisor S_L that is 1-periodic along e_p.
inline cplx coset_product_log(const LinearForm& form, const CosetSystem& cs, std::span<const cplx> z, double eps) {
  const cplx ap = form.a[cs.p].to_complex();
  const cplx Tq = (form.a[cs.q] / form.a[cs.p]).to_complex();
  const cplx w = eval_form(form, z) / ap;
  cplx acc = 0.0;
  for (const auto& x : cs.points) acc += phi_log(Tq, w - x.to_complex() / ap, eps);
  return acc;
}

}  // namespace pz

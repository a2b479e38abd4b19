// Classification of linear forms into L1/L2, divisor certificates for the
// periodic reproduction S_L, and canonical keys that identify equal
// reproductions.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pz/error.hpp"
#include "pz/gauss_rat.hpp"
#include "pz/intlinalg.hpp"
#include "pz/lattice.hpp"
#include "pz/types.hpp"

namespace pz {

enum class FormClass { L1, L2 };

inline const char* class_name(FormClass c) { return c == FormClass::L1 ? "L1" : "L2"; }

struct IndexPair {
  std::size_t p = 0;
  std::size_t q = 0;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// Result of classify(). Index conventions are 0-based.
///
/// basis[j] is the column Lambda_j: the first m span the real orthogonal
/// complement of A_l = { x in R^n : <a,x> = 0 }, the rest span A_l.
/// dual[j] is the row Omega_j of Lambda^{-1}, so z = sum_j <Omega_j, z> Lambda_j.
/// b[j] = <a, Lambda_j>, which vanishes for j >= m.
struct ClassifiedForm {
  LinearForm form;
  FormClass cls = FormClass::L1;
  int m = 1;

  // L1 only: a = lambda * k0, k0 primitive with first nonzero entry
  // positive, reduced_c = c / lambda with real part in [0, 1).
  std::vector<Integer> k0;
  GaussRat lambda;
  GaussRat reduced_c;

  // L2 only: first pair (p < q) with Im(a_q / a_p) != 0.
  std::optional<IndexPair> witness;

  std::vector<std::vector<Integer>> basis;
  std::vector<std::vector<Rational>> dual;
  std::vector<GaussRat> b;
};

inline std::optional<IndexPair> hypoellipticity_witness(const LinearForm& form) {
  for (std::size_t p = 0; p < form.dim(); ++p) {
    if (form.a[p].is_zero()) continue;
    for (std::size_t q = p + 1; q < form.dim(); ++q) {
      if (form.a[q].is_zero()) continue;
      if (!(form.a[q] / form.a[p]).is_real()) return IndexPair{p, q};
    }
  }
  return std::nullopt;
}

/// Total on valid forms. Basis choice: leftmost-pivot RREF of the rows
/// (Re a, Im a) scaled to primitive integer rows, followed by the standard
/// kernel vectors of the free columns.
inline ClassifiedForm classify(const LinearForm& form) {
  form.validate();
  const std::size_t n = form.dim();
  Matrix<Rational> rows(2, std::vector<Rational>(n));
  for (std::size_t j = 0; j < n; ++j) {
    rows[0][j] = form.a[j].re();
    rows[1][j] = form.a[j].im();
  }
  Echelon e = rref(rows, n);
  ClassifiedForm out;
  out.form = form;
  out.m = static_cast<int>(e.pivots.size());
  out.cls = out.m == 1 ? FormClass::L1 : FormClass::L2;

  for (const auto& r : e.rows) out.basis.push_back(primitive_integer(r));
  for (auto& v : kernel_basis(e, n)) out.basis.push_back(std::move(v));

  Matrix<Rational> lam(n, std::vector<Rational>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) lam[i][j] = Rational(out.basis[j][i]);
  auto inv = inverse(lam);
  if (!inv) throw Error(Errc::domain, "classify: basis is singular");
  out.dual = std::move(*inv);

  for (std::size_t j = 0; j < n; ++j) {
    GaussRat s;
    for (std::size_t i = 0; i < n; ++i) s += form.a[i] * GaussRat(out.basis[j][i]);
    out.b.push_back(std::move(s));
  }

  if (out.cls == FormClass::L1) {
    out.k0 = out.basis[0];
    std::size_t piv = form.pivot();
    out.lambda = form.a[piv] / GaussRat(out.k0[piv]);
    GaussRat c = form.c / out.lambda;
    out.reduced_c = GaussRat(frac_of(c.re()), c.im());
  } else {
    out.witness = hypoellipticity_witness(form);
  }
  return out;
}

/// Data certifying that S_L is an analytic divisor: an integer basis of
/// the orthogonal complement of A_l and, for L2, a pair (p, q) with
/// Im(a_p / a_q) != 0 (hypoellipticity of the reduced form).
struct DivisorCertificate {
  FormClass cls = FormClass::L1;
  std::vector<std::vector<Integer>> perp_basis;
  std::optional<IndexPair> witness;
};

/// Always succeeds for Gaussian-rational forms: A_l^perp is spanned by the
/// rational vectors Re a, Im a, and for L2 those are R-independent so some
/// ratio a_q/a_p is non-real.
inline DivisorCertificate divisor_certificate(const ClassifiedForm& cf) {
  DivisorCertificate cert;
  cert.cls = cf.cls;
  cert.perp_basis.assign(cf.basis.begin(), cf.basis.begin() + cf.m);
  if (cf.cls == FormClass::L2) {
    if (!cf.witness) throw Error(Errc::domain, "L2 form without hypoellipticity witness");
    const GaussRat& b1 = cf.b[0];
    const GaussRat& b2 = cf.b[1];
    if (b1.is_zero() || b2.is_zero() || (b2 / b1).is_real())
      throw Error(Errc::domain, "reduced form is not hypoelliptic");
    cert.witness = cf.witness;
  }
  return cert;
}

inline DivisorCertificate divisor_certificate(const LinearForm& form) { return divisor_certificate(classify(form)); }

/// Identifies S_L up to equality of sets. Coefficients are scaled so the
/// first nonzero entry is 1 and the offset is reduced into a half-open
/// fundamental domain of the (scaled) value group.
struct CanonicalKey {
  FormClass cls = FormClass::L1;
  std::vector<GaussRat> coeffs;
  GaussRat offset;

  std::string str() const {
    std::string s = class_name(cls);
    s += "[";
    for (std::size_t j = 0; j < coeffs.size(); ++j) s += (j ? "," : "") + coeffs[j].str();
    s += ";" + offset.str() + "]";
    return s;
  }
  friend bool operator==(const CanonicalKey& l, const CanonicalKey& r) {
    return l.cls == r.cls && l.coeffs == r.coeffs && l.offset == r.offset;
  }
  friend bool operator<(const CanonicalKey& l, const CanonicalKey& r) { return l.str() < r.str(); }
};

inline CanonicalKey canonical_key(const LinearForm& form) {
  form.validate();
  const std::size_t piv = form.pivot();
  const GaussRat scale = form.a[piv];
  CanonicalKey key;
  for (const auto& x : form.a) key.coeffs.push_back(x / scale);
  GaussRat c = form.c / scale;
  bool real = true;
  for (const auto& x : key.coeffs) real = real && x.is_real();
  if (real) {
    // a is a complex multiple of a real vector: L1. The value group of the
    // normalized coefficients is g*Z with g = 1/k0[piv].
    key.cls = FormClass::L1;
    std::vector<Rational> re;
    for (const auto& x : key.coeffs) re.push_back(x.re());
    std::vector<Integer> k0 = primitive_integer(re);
    Rational g(Integer(1), k0[piv]);
    Rational s = c.re() / g;
    key.offset = GaussRat(frac_of(s) * g, c.im());
  } else {
    key.cls = FormClass::L2;
    ValueLattice lat = value_lattice(std::span<const GaussRat>(key.coeffs));
    key.offset = reduce_mod(lat, c);
  }
  return key;
}

}  // namespace pz

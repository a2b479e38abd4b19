// The index matrix of a periodic plane divisor, its transformation laws
// and the accept/reject decision with the Z = Z' + Z'' split.

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "pz/construct.hpp"
#include "pz/error.hpp"
#include "pz/forms.hpp"
#include "pz/lattice.hpp"
#include "pz/types.hpp"

namespace pz {

/// Skew-symmetric integer matrix N_pq.
struct IndexMatrix {
  std::size_t n = 0;
  Matrix<Integer> N;

  IndexMatrix() = default;
  explicit IndexMatrix(std::size_t dim) : n(dim), N(dim, std::vector<Integer>(dim, Integer(0))) {}

  Integer& operator()(std::size_t p, std::size_t q) { return N[p][q]; }
  const Integer& operator()(std::size_t p, std::size_t q) const { return N[p][q]; }

  bool is_zero() const {
    for (const auto& row : N)
      for (const auto& x : row)
        if (x != 0) return false;
    return true;
  }
  bool is_skew() const {
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (N[p][q] != -N[q][p]) return false;
    return true;
  }

  IndexMatrix& operator+=(const IndexMatrix& o) {
    if (o.n != n) throw Error(Errc::dimension_mismatch, "index matrix dimensions differ");
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) N[p][q] += o.N[p][q];
    return *this;
  }
  friend IndexMatrix operator+(IndexMatrix a, const IndexMatrix& b) { return a += b; }
  friend bool operator==(const IndexMatrix& a, const IndexMatrix& b) { return a.n == b.n && a.N == b.N; }

  std::string str() const {
    std::string s = "[";
    for (std::size_t p = 0; p < n; ++p) {
      s += p ? ", [" : "[";
      for (std::size_t q = 0; q < n; ++q) s += (q ? ", " : "") + N[p][q].str();
      s += "]";
    }
    return s + "]";
  }
};

/// N(e_p, e_q : S_L) times the multiplicity: 0 for L1 forms and for
/// degenerate pairs, otherwise -nu_pq * sign Im(a_q / a_p).
inline Integer component_index(const LinearForm& form, std::size_t p, std::size_t q) {
  form.validate();
  if (p >= form.dim() || q >= form.dim()) throw Error(Errc::domain, "index out of range");
  if (p == q) return 0;
  if (!spans_parallelogram(form, p, q)) return 0;
  // Gaussian-rational L1 forms have all ratios real, so they never reach here.
  const int s = sign_im(form.a[q] / form.a[p]);
  return -nu(form, p, q) * s * form.mult;
}

inline IndexMatrix component_index_matrix(const LinearForm& form) {
  IndexMatrix m(form.dim());
  for (std::size_t p = 0; p < form.dim(); ++p)
    for (std::size_t q = 0; q < form.dim(); ++q) m(p, q) = component_index(form, p, q);
  return m;
}

inline IndexMatrix divisor_index(const PlaneDivisor& Z) {
  Z.validate();
  IndexMatrix m(Z.n);
  for (const auto& f : Z.components) m += component_index_matrix(f);
  if (!m.is_skew()) throw Error(Errc::domain, "index matrix is not skew-symmetric");
  return m;
}

/// Left-hand sides of the plane-zero condition
///   sum_j nu_pq^(j) sign Im(a_q^(j) / a_p^(j)) = 0
/// over the L2 components, summed with multiplicity. Equals -N_pq.
inline IndexMatrix condition_sums(const PlaneDivisor& Z) {
  IndexMatrix m(Z.n);
  for (const auto& f : Z.components) {
    if (classify(f).cls != FormClass::L2) continue;
    for (std::size_t p = 0; p < Z.n; ++p) {
      if (f.a[p].is_zero()) continue;
      for (std::size_t q = 0; q < Z.n; ++q) {
        if (q == p || f.a[q].is_zero()) continue;
        m(p, q) += nu(f, p, q) * sign_im(f.a[q] / f.a[p]) * f.mult;
      }
    }
  }
  return m;
}

/// Index from the exact multipliers of the constructed factors, for the
/// period basis (k_1 e_1, ..., k_n e_n):
///   N_pq = (Delta_{k_p e_p} g_q - Delta_{k_q e_q} g_p) / (2 pi i).
/// Independent of nu; used to check the period-scaling law.
inline IndexMatrix index_from_multipliers(const PlaneDivisor& Z, const std::vector<long>& scales) {
  Z.validate();
  if (scales.size() != Z.n) throw Error(Errc::dimension_mismatch, "one scale per direction required");
  IndexMatrix m(Z.n);
  for (const auto& form : Z.components) {
    if (classify(form).cls == FormClass::L1) continue;
    L2Factor f = make_l2_factor(form);
    std::vector<QuasiPeriodExponent> g;
    for (std::size_t p = 0; p < Z.n; ++p) g.push_back(compose_period(quasi_period_exponent(f, p), scales[p]));
    for (std::size_t p = 0; p < Z.n; ++p)
      for (std::size_t q = 0; q < Z.n; ++q) {
        GaussRat v = g[q].lin[p] * GaussRat(scales[p]) - g[p].lin[q] * GaussRat(scales[q]);
        v *= GaussRat(form.mult);
        if (!v.is_real() || !is_integer(v.re()))
          throw Error(Errc::non_integer_index, "multiplier index is not an integer: " + v.str());
        m(p, q) += numerator_of(v.re());
      }
  }
  return m;
}

enum class Verdict { accept, reject };

struct RejectWitness {
  std::size_t p = 0, q = 0;  // 0-based
  Integer sum;               // N_pq, nonzero
};

struct Decision {
  Verdict verdict = Verdict::accept;
  PlaneDivisor l1_part;  // Z'
  PlaneDivisor l2_part;  // Z''
  IndexMatrix index;
  std::optional<FunctionModel> model;
  std::optional<RejectWitness> witness;
};

inline Decision decide(const PlaneDivisor& Z, double eps = 1e-12) {
  Z.validate();
  Decision d;
  d.l1_part.n = d.l2_part.n = Z.n;
  for (const auto& f : Z.components)
    (classify(f).cls == FormClass::L1 ? d.l1_part : d.l2_part).components.push_back(f);
  d.index = divisor_index(Z);
  IndexMatrix sums = condition_sums(Z);
  bool condition_holds = sums.is_zero();
  if (condition_holds != d.index.is_zero())
    throw Error(Errc::domain, "condition sums and index matrix disagree");
  for (std::size_t p = 0; p < Z.n; ++p)
    for (std::size_t q = 0; q < Z.n; ++q)
      if (sums(p, q) != -d.index(p, q)) throw Error(Errc::domain, "condition sums are not -N");
  if (!condition_holds) {
    d.verdict = Verdict::reject;
    for (std::size_t p = 0; p < Z.n && !d.witness; ++p)
      for (std::size_t q = p + 1; q < Z.n && !d.witness; ++q)
        if (d.index(p, q) != 0) d.witness = RejectWitness{p, q, d.index(p, q)};
    return d;
  }
  d.verdict = Verdict::accept;
  d.model = build_model(Z, eps);
  return d;
}

struct Reflect {
  std::size_t j;  // z_j -> -z_j
};
struct Swap {
  std::size_t p, q;  // exchange z_p and z_q
};
struct ScalePeriod {
  std::size_t p;  // period e_p -> k e_p
  long k;
};
using Transform = std::variant<Reflect, Swap, ScalePeriod>;

inline std::string transform_name(const Transform& t) {
  if (auto* r = std::get_if<Reflect>(&t)) return "beta_" + std::to_string(r->j + 1);
  if (auto* s = std::get_if<Swap>(&t)) return "alpha_" + std::to_string(s->p + 1) + std::to_string(s->q + 1);
  auto& sc = std::get<ScalePeriod>(t);
  return "scale_" + std::to_string(sc.p + 1) + "x" + std::to_string(sc.k);
}

inline LinearForm transform_form(const LinearForm& f, const Transform& t) {
  LinearForm g = f;
  if (auto* r = std::get_if<Reflect>(&t)) {
    g.a.at(r->j) = -g.a.at(r->j);
  } else if (auto* s = std::get_if<Swap>(&t)) {
    std::swap(g.a.at(s->p), g.a.at(s->q));
  }
  return g;
}

struct TransformResult {
  PlaneDivisor divisor;
  IndexMatrix predicted;
};

/// Image of Z under a coordinate map and the index predicted by the
/// transformation laws: beta_j negates row and column j, alpha_pq permutes
/// rows and columns p <-> q (so N*_pq = N_qp = -N_pq), and the period
/// scaling k e_p multiplies row and column p by k. Period scaling leaves
/// the divisor itself unchanged.
inline TransformResult apply_transform(const PlaneDivisor& Z, const Transform& t) {
  Z.validate();
  auto check_index = [&](std::size_t j) {
    if (j >= Z.n) throw Error(Errc::invalid_transform, transform_name(t) + ": coordinate out of range");
  };
  IndexMatrix N = divisor_index(Z);
  TransformResult out;
  out.divisor.n = Z.n;
  out.predicted = IndexMatrix(Z.n);
  if (auto* r = std::get_if<Reflect>(&t)) {
    check_index(r->j);
    for (std::size_t p = 0; p < Z.n; ++p)
      for (std::size_t q = 0; q < Z.n; ++q)
        out.predicted(p, q) = ((p == r->j) != (q == r->j)) ? Integer(-N(p, q)) : N(p, q);
  } else if (auto* s = std::get_if<Swap>(&t)) {
    check_index(s->p);
    check_index(s->q);
    if (s->p == s->q) throw Error(Errc::invalid_transform, "alpha_pq needs p != q");
    auto perm = [&](std::size_t x) { return x == s->p ? s->q : (x == s->q ? s->p : x); };
    for (std::size_t p = 0; p < Z.n; ++p)
      for (std::size_t q = 0; q < Z.n; ++q) out.predicted(p, q) = N(perm(p), perm(q));
  } else {
    auto& sc = std::get<ScalePeriod>(t);
    check_index(sc.p);
    if (sc.k <= 0) throw Error(Errc::invalid_transform, "period scaling needs k > 0");
    for (std::size_t p = 0; p < Z.n; ++p)
      for (std::size_t q = 0; q < Z.n; ++q) {
        Integer v = N(p, q);
        if (p == sc.p) v *= sc.k;
        if (q == sc.p) v *= sc.k;
        out.predicted(p, q) = v;
      }
  }
  for (const auto& f : Z.components) out.divisor.components.push_back(transform_form(f, t));
  return out;
}

/// Index recomputed for the transformed situation without using the laws:
/// the formula route on the image divisor for beta/alpha, the multiplier
/// route with scaled periods for period scaling.
inline IndexMatrix recompute_index(const PlaneDivisor& Z, const Transform& t) {
  if (auto* sc = std::get_if<ScalePeriod>(&t)) {
    std::vector<long> scales(Z.n, 1);
    scales.at(sc->p) = sc->k;
    return index_from_multipliers(Z, scales);
  }
  return divisor_index(apply_transform(Z, t).divisor);
}

/// Multiset of canonical keys, with multiplicities.
inline std::map<std::string, long> key_multiset(const PlaneDivisor& Z) {
  std::map<std::string, long> keys;
  for (const auto& f : Z.components) keys[canonical_key(f).str()] += f.mult;
  return keys;
}

struct SymmetryEvidence {
  bool holds = false;
  bool covered = false;                // every pair p != q meets I or lies in J
  std::vector<std::string> broken;     // transforms under which Z is not invariant
  std::optional<IndexMatrix> index;    // set when holds
};

/// Invariance of Z under beta_k (k in I) and alpha_pq (p, q in J), I and J
/// disjoint. Returns holds = true only when the invariances also cover every
/// index pair, which forces the index to vanish; that conclusion is checked.
inline SymmetryEvidence symmetry_certificate(const PlaneDivisor& Z, const std::vector<std::size_t>& I,
                                             const std::vector<std::size_t>& J) {
  Z.validate();
  std::set<std::size_t> si(I.begin(), I.end()), sj(J.begin(), J.end());
  for (auto k : si)
    if (k >= Z.n || sj.count(k)) throw Error(Errc::domain, "I and J must be disjoint subsets of {1..n}");
  for (auto k : sj)
    if (k >= Z.n) throw Error(Errc::domain, "J index out of range");

  SymmetryEvidence ev;
  const auto base = key_multiset(Z);
  std::vector<Transform> gens;
  for (auto k : si) gens.push_back(Reflect{k});
  for (auto p : sj)
    for (auto q : sj)
      if (p < q) gens.push_back(Swap{p, q});
  for (const auto& t : gens)
    if (key_multiset(apply_transform(Z, t).divisor) != base) ev.broken.push_back(transform_name(t));

  ev.covered = true;
  for (std::size_t p = 0; p < Z.n; ++p)
    for (std::size_t q = p + 1; q < Z.n; ++q)
      if (!si.count(p) && !si.count(q) && !(sj.count(p) && sj.count(q))) ev.covered = false;

  ev.holds = ev.broken.empty() && ev.covered;
  if (ev.holds) {
    ev.index = divisor_index(Z);
    if (!ev.index->is_zero()) throw Error(Errc::domain, "symmetric divisor with nonzero index");
  }
  return ev;
}

}  // namespace pz

// Value lattice A_l = { <a,k> : k in Z^n } of a linear form, its rank-2
// generators, coordinate decompositions and the parallelogram counts nu_pq.

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pz/error.hpp"
#include "pz/gauss_rat.hpp"
#include "pz/intlinalg.hpp"
#include "pz/types.hpp"

namespace pz {

/// Rank-2 discrete subgroup Z*w1 + Z*w2 of C, oriented so Im(w2/w1) > 0.
struct ValueLattice {
  GaussRat w1;
  GaussRat w2;
  GaussRat tau;      // w2 / w1
  Rational covolume; // |Im(conj(w1) * w2)|
};

/// Generators from the lower-triangular Hermite normal form of the
/// denominator-cleared generator pairs (Re a_j, Im a_j):
///   w1 = (h11 + i*h21) / D,  w2 = i*h22 / D.
/// This fixes Im(w2/w1) = h11*h22 / (h11^2 + h21^2) > 0.
inline ValueLattice value_lattice(std::span<const GaussRat> generators) {
  Integer den = 1;
  for (const auto& g : generators) {
    den = lcm(den, denominator_of(g.re()));
    den = lcm(den, denominator_of(g.im()));
  }
  std::vector<std::pair<Integer, Integer>> cols;
  cols.reserve(generators.size());
  for (const auto& g : generators) {
    Rational x = g.re() * den, y = g.im() * den;
    cols.emplace_back(numerator_of(x), numerator_of(y));
  }
  auto h = hermite_normal_form_2(std::move(cols));
  if (!h) throw Error(Errc::degenerate_lattice, "value group has rank < 2");
  ValueLattice lat;
  lat.w1 = GaussRat(Rational(h->h11, den), Rational(h->h21, den));
  lat.w2 = GaussRat(Rational(0), Rational(h->h22, den));
  lat.tau = lat.w2 / lat.w1;
  lat.covolume = real_det(lat.w1, lat.w2);
  if (lat.covolume < 0) lat.covolume = -lat.covolume;
  return lat;
}

inline ValueLattice value_lattice(const LinearForm& form) {
  return value_lattice(std::span<const GaussRat>(form.a));
}

/// Real coordinates (alpha, beta) of v in the basis (u1, u2); u1, u2 must be
/// R-independent.
inline std::pair<Rational, Rational> real_coordinates(const GaussRat& u1, const GaussRat& u2, const GaussRat& v) {
  Rational det = real_det(u1, u2);
  if (det == 0) throw Error(Errc::domain, "real_coordinates: dependent basis");
  return {real_det(v, u2) / det, real_det(u1, v) / det};
}

struct LatticeCoords {
  Integer m1;
  Integer m2;
  friend bool operator==(const LatticeCoords&, const LatticeCoords&) = default;
};

/// Unique integers with v = m1*w1 + m2*w2.
inline LatticeCoords decompose(const ValueLattice& lat, const GaussRat& v) {
  auto [x, y] = real_coordinates(lat.w1, lat.w2, v);
  if (!is_integer(x) || !is_integer(y))
    throw Error(Errc::not_in_lattice, v.str() + " is not in the lattice spanned by " + lat.w1.str() + ", " +
                                          lat.w2.str());
  return {numerator_of(x), numerator_of(y)};
}

inline bool contains(const ValueLattice& lat, const GaussRat& v) {
  auto [x, y] = real_coordinates(lat.w1, lat.w2, v);
  return is_integer(x) && is_integer(y);
}

/// Representative of v modulo the lattice in { s*w1 + t*w2 : 0 <= s,t < 1 }.
inline GaussRat reduce_mod(const ValueLattice& lat, const GaussRat& v) {
  auto [x, y] = real_coordinates(lat.w1, lat.w2, v);
  return GaussRat(frac_of(x)) * lat.w1 + GaussRat(frac_of(y)) * lat.w2;
}

/// True when the parallelogram spanned by a_p, a_q is nondegenerate.
inline bool spans_parallelogram(const LinearForm& form, std::size_t p, std::size_t q) {
  const auto& ap = form.a.at(p);
  const auto& aq = form.a.at(q);
  return !ap.is_zero() && !aq.is_zero() && real_det(ap, aq) != 0;
}

/// Number of value-lattice points in the half-open parallelogram spanned by
/// a_p and a_q, computed as the sublattice index |det(a_p, a_q)| / covolume.
/// Zero when a coefficient vanishes or a_q/a_p is real.
inline Integer nu(const LinearForm& form, std::size_t p, std::size_t q) {
  if (p == q) throw Error(Errc::domain, "nu requires p != q");
  if (!spans_parallelogram(form, p, q)) return 0;
  ValueLattice lat = value_lattice(form);
  Rational det = real_det(form.a[p], form.a[q]);
  if (det < 0) det = -det;
  Rational idx = det / lat.covolume;
  if (!is_integer(idx)) throw Error(Errc::non_integer_index, "nu: sublattice index " + to_string(idx));
  return numerator_of(idx);
}

/// Ordered lattice points x_1 = 0, x_2, ..., x_nu inside P_pq.
struct CosetSystem {
  std::size_t p = 0, q = 0;
  std::vector<GaussRat> points;
};

inline CosetSystem coset_reps(const LinearForm& form, std::size_t p, std::size_t q) {
  if (p == q) throw Error(Errc::domain, "coset_reps requires p != q");
  if (!spans_parallelogram(form, p, q))
    throw Error(Errc::degenerate_parallelogram, "P_pq is degenerate for this pair");
  ValueLattice lat = value_lattice(form);
  const GaussRat& ap = form.a[p];
  const GaussRat& aq = form.a[q];
  LatticeCoords cp = decompose(lat, ap), cq = decompose(lat, aq);
  auto range = [](const Integer& u, const Integer& v) {
    Integer lo = 0, hi = 0;
    if (u < 0) lo += u; else hi += u;
    if (v < 0) lo += v; else hi += v;
    return std::pair{lo, hi};
  };
  auto [lo1, hi1] = range(cp.m1, cq.m1);
  auto [lo2, hi2] = range(cp.m2, cq.m2);

  struct Hit {
    Rational s, t;
    GaussRat x;
  };
  std::vector<Hit> hits;
  for (Integer j1 = lo1; j1 <= hi1; ++j1) {
    for (Integer j2 = lo2; j2 <= hi2; ++j2) {
      GaussRat x = GaussRat(j1) * lat.w1 + GaussRat(j2) * lat.w2;
      auto [s, t] = real_coordinates(ap, aq, x);
      if (s >= 0 && s < 1 && t >= 0 && t < 1) hits.push_back({s, t, x});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& l, const Hit& r) {
    if (l.s != r.s) return l.s < r.s;
    return l.t < r.t;
  });
  CosetSystem cs{p, q, {}};
  for (auto& h : hits) cs.points.push_back(std::move(h.x));
  return cs;
}

}  // namespace pz

#include <gtest/gtest.h>

#include <random>

#include "pz/forms.hpp"
#include "pz/selftest.hpp"

using namespace pz;

namespace {

GaussRat g(long long re, long long im = 0) { return GaussRat(Rational(re), Rational(im)); }
GaussRat q(long long n, long long d) { return GaussRat(Rational(n, d)); }

}  // namespace

TEST(Classify, RealVectorIsL1) {
  ClassifiedForm cf = classify(LinearForm({g(1), g(0)}));
  EXPECT_EQ(cf.cls, FormClass::L1);
  EXPECT_EQ(cf.m, 1);
  EXPECT_EQ(cf.k0, (std::vector<Integer>{1, 0}));
  EXPECT_EQ(cf.lambda, g(1));
}

TEST(Classify, OneAndIIsL2) {
  ClassifiedForm cf = classify(LinearForm({g(1), g(0, 1)}));
  EXPECT_EQ(cf.cls, FormClass::L2);
  EXPECT_EQ(cf.m, 2);
  ASSERT_TRUE(cf.witness);
  EXPECT_EQ(*cf.witness, (IndexPair{0, 1}));
}

TEST(Classify, ComplexMultipleOfIntegerVector) {
  ClassifiedForm cf = classify(LinearForm({g(1, 1), g(2, 2)}));
  EXPECT_EQ(cf.cls, FormClass::L1);
  EXPECT_EQ(cf.k0, (std::vector<Integer>{1, 2}));
  EXPECT_EQ(cf.lambda, g(1, 1));
}

TEST(Classify, ReducedOffset) {
  ClassifiedForm cf = classify(LinearForm({g(-2), g(-4)}, GaussRat(Rational(7, 2), Rational(1))));
  EXPECT_EQ(cf.k0, (std::vector<Integer>{1, 2}));
  EXPECT_EQ(cf.lambda, g(-2));
  // c / lambda = -7/4 - i/2, real part reduced to [0, 1).
  EXPECT_EQ(cf.reduced_c, GaussRat(Rational(1, 4), Rational(-1, 2)));
}

TEST(Classify, RejectsInvalidForms) {
  EXPECT_THROW(classify(LinearForm({g(0), g(0)})), Error);
  EXPECT_THROW(classify(LinearForm({g(1)})), Error);
  EXPECT_THROW(classify(LinearForm({g(1), g(1)}, g(0), 0)), Error);
}

TEST(Certificate, Examples) {
  DivisorCertificate a = divisor_certificate(LinearForm({g(1), g(0, 1)}));
  ASSERT_TRUE(a.witness);
  EXPECT_EQ(*a.witness, (IndexPair{0, 1}));

  DivisorCertificate b = divisor_certificate(LinearForm({g(1), g(2)}, q(1, 2)));
  EXPECT_EQ(b.cls, FormClass::L1);
  ASSERT_EQ(b.perp_basis.size(), 1u);
  EXPECT_EQ(b.perp_basis[0], (std::vector<Integer>{1, 2}));
  EXPECT_FALSE(b.witness);

  DivisorCertificate c = divisor_certificate(LinearForm({g(1), q(1, 2), g(0, 1)}));
  ASSERT_TRUE(c.witness);
  EXPECT_EQ(*c.witness, (IndexPair{0, 2}));
}

TEST(Classify, InvariantsOnRandomForms) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 3;
    LinearForm f = selftest::random_form(rng, n);
    ClassifiedForm cf = classify(f);
    // m = 1 iff Re a and Im a are R-dependent.
    bool dependent = true;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t r = 0; r < n; ++r)
        dependent = dependent && f.a[p].re() * f.a[r].im() == f.a[p].im() * f.a[r].re();
    EXPECT_EQ(cf.m == 1, dependent);
    ASSERT_EQ(cf.basis.size(), n);
    ASSERT_EQ(cf.b.size(), n);
    for (std::size_t j = static_cast<std::size_t>(cf.m); j < n; ++j) EXPECT_TRUE(cf.b[j].is_zero());
    // dual rows invert the basis.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t k = 0; k < n; ++k) s += cf.dual[i][k] * Rational(cf.basis[j][k]);
        EXPECT_EQ(s, i == j ? 1 : 0);
      }
    if (cf.cls == FormClass::L1) {
      Integer gg = 0;
      for (const auto& x : cf.k0) gg = gcd(gg, x);
      EXPECT_EQ(gg, 1);
      for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(cf.lambda * GaussRat(cf.k0[j]), f.a[j]);
    } else {
      EXPECT_FALSE(cf.b[0].is_zero());
      EXPECT_FALSE(cf.b[1].is_zero());
      EXPECT_FALSE((cf.b[1] / cf.b[0]).is_real());
      EXPECT_NO_THROW(divisor_certificate(cf));
    }
    // Scaling by a nonzero lambda keeps class and k0.
    GaussRat lam = selftest::random_gauss(rng);
    if (lam.is_zero()) continue;
    LinearForm h = f;
    for (auto& x : h.a) x *= lam;
    h.c *= lam;
    ClassifiedForm ch = classify(h);
    EXPECT_EQ(ch.cls, cf.cls);
    if (cf.cls == FormClass::L1) EXPECT_EQ(ch.k0, cf.k0);
  }
}

TEST(CanonicalKey, Examples) {
  EXPECT_EQ(canonical_key(LinearForm({g(1), g(0)}, q(1, 3))), canonical_key(LinearForm({g(1), g(0)}, q(4, 3))));
  EXPECT_EQ(canonical_key(LinearForm({g(1), g(0, 1)})), canonical_key(LinearForm({g(0, 1), g(-1)})));
  EXPECT_EQ(canonical_key(LinearForm({g(1), g(0, 1)}, q(1, 3))),
            canonical_key(LinearForm({g(1), g(0, 1)}, q(1, 3) + g(2, 5))));
  EXPECT_NE(canonical_key(LinearForm({g(1), g(0, 1)}, q(1, 3))), canonical_key(LinearForm({g(1), g(0, 1)}, q(1, 2))));
  EXPECT_NE(canonical_key(LinearForm({g(1), g(0, 1)})), canonical_key(LinearForm({g(1), g(0, -1)})));
  // Multiplicity is not part of the set.
  EXPECT_EQ(canonical_key(LinearForm({g(1), g(0, 1)}, g(0), 3)), canonical_key(LinearForm({g(1), g(0, 1)})));
}

// Zeros of l on the reproduction: l(z) + <a,k> = 0 for some integer k. A
// point z with l(z) = -<a,k> lies on the reproduction of l'; it lies on
// that of l iff l(z) is in the value group of l.
namespace {

bool on_reproduction(const LinearForm& f, const std::vector<GaussRat>& z) {
  GaussRat v = f.c;
  for (std::size_t j = 0; j < z.size(); ++j) v += f.a[j] * z[j];
  if (classify(f).cls == FormClass::L2) return contains(value_lattice(f), v);
  ClassifiedForm cf = classify(f);
  GaussRat s = v / cf.lambda;  // must be an integer
  return s.is_real() && is_integer(s.re());
}

std::vector<GaussRat> exact_zero(const LinearForm& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> k(-2, 2);
  const std::size_t piv = f.pivot();
  std::vector<GaussRat> z(f.dim());
  GaussRat rhs = -f.c;
  for (std::size_t j = 0; j < f.dim(); ++j) {
    rhs += f.a[j] * GaussRat(k(rng));
    if (j == piv) continue;
    z[j] = selftest::random_gauss(rng, 4);
    rhs -= f.a[j] * z[j];
  }
  z[piv] = rhs / f.a[piv];
  return z;
}

}  // namespace

TEST(CanonicalKey, AgreesWithSetEqualityBySampling) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 80; ++trial) {
    LinearForm f = selftest::random_form(rng, 2 + trial % 3, 4);
    // Same set: scale and shift c by a value <a,k>.
    LinearForm same = f;
    GaussRat lam = selftest::random_gauss(rng, 4);
    if (lam.is_zero()) lam = g(3);
    std::uniform_int_distribution<int> k(-3, 3);
    GaussRat shift;
    for (const auto& a : f.a) shift += a * GaussRat(k(rng));
    same.c += shift;
    for (auto& x : same.a) x *= lam;
    same.c *= lam;
    ASSERT_EQ(canonical_key(f), canonical_key(same)) << f.str();
    for (int s = 0; s < 5; ++s) {
      EXPECT_TRUE(on_reproduction(f, exact_zero(same, rng)));
      EXPECT_TRUE(on_reproduction(same, exact_zero(f, rng)));
    }
    // Different set: shift c by something outside the value group.
    LinearForm other = f;
    other.c += GaussRat(Rational(1, 97), Rational(1, 89));
    EXPECT_NE(canonical_key(f), canonical_key(other));
    bool separated = false;
    for (int s = 0; s < 5; ++s) separated = separated || !on_reproduction(f, exact_zero(other, rng));
    EXPECT_TRUE(separated);
  }
}

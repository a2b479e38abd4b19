#include <gtest/gtest.h>

#include <random>

#include "pz/lattice.hpp"
#include "pz/oracle.hpp"
#include "pz/selftest.hpp"

using namespace pz;

namespace {

GaussRat g(long long re, long long im = 0) { return GaussRat(Rational(re), Rational(im)); }
const GaussRat half(Rational(1, 2));

}  // namespace

TEST(ValueLattice, UnitLattice) {
  ValueLattice lat = value_lattice(LinearForm({g(1), g(0, 1)}));
  EXPECT_EQ(lat.w1, g(1));
  EXPECT_EQ(lat.w2, g(0, 1));
  EXPECT_EQ(lat.covolume, 1);
}

TEST(ValueLattice, HalfIntegerRealDirection) {
  ValueLattice lat = value_lattice(LinearForm({g(1), g(0, 1), half}));
  EXPECT_EQ(lat.w1, half);
  EXPECT_EQ(lat.w2, g(0, 1));
  EXPECT_EQ(lat.covolume, Rational(1, 2));
}

TEST(ValueLattice, TwoAndOnePlusI) {
  ValueLattice lat = value_lattice(LinearForm({g(2), g(1, 1)}));
  EXPECT_EQ(lat.covolume, 2);
  EXPECT_GT(lat.tau.im(), 0);
  EXPECT_EQ(lat.w1, g(1, 1));
  EXPECT_EQ(lat.w2, g(0, 2));
  EXPECT_EQ(decompose(lat, g(2)), (LatticeCoords{2, -1}));
}

TEST(ValueLattice, RankOneIsDegenerate) {
  try {
    value_lattice(LinearForm({g(1), g(2)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::degenerate_lattice);
  }
}

TEST(Decompose, Examples) {
  ValueLattice unit = value_lattice(LinearForm({g(1), g(0, 1)}));
  EXPECT_EQ(decompose(unit, g(0, 1)), (LatticeCoords{0, 1}));
  ValueLattice h = value_lattice(LinearForm({g(1), g(0, 1), half}));
  EXPECT_EQ(decompose(h, g(1)), (LatticeCoords{2, 0}));
}

TEST(Decompose, RejectsNonMembers) {
  ValueLattice unit = value_lattice(LinearForm({g(1), g(0, 1)}));
  EXPECT_FALSE(contains(unit, half));
  try {
    decompose(unit, half);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_in_lattice);
  }
  EXPECT_EQ(reduce_mod(unit, GaussRat(Rational(7, 3), Rational(-1, 4))), GaussRat(Rational(1, 3), Rational(3, 4)));
}

TEST(Nu, Examples) {
  EXPECT_EQ(nu(LinearForm({g(1), g(0, 1)}), 0, 1), 1);
  EXPECT_EQ(nu(LinearForm({g(1), g(0, 1), half}), 0, 1), 2);
  EXPECT_EQ(nu(LinearForm({g(1), g(0, 1), g(0)}), 0, 2), 0);
  EXPECT_EQ(nu(LinearForm({g(1), g(0, 1), half}), 0, 2), 0);  // real ratio
  EXPECT_EQ(nu(LinearForm({g(2), g(1, 1)}), 0, 1), 1);
}

TEST(Nu, SameIndexIsAnError) {
  EXPECT_THROW(nu(LinearForm({g(1), g(0, 1)}), 1, 1), Error);
}

TEST(CosetReps, Examples) {
  EXPECT_EQ(coset_reps(LinearForm({g(1), g(0, 1)}), 0, 1).points, std::vector<GaussRat>{g(0)});
  EXPECT_EQ(coset_reps(LinearForm({g(1), g(0, 1), half}), 0, 1).points, (std::vector<GaussRat>{g(0), half}));
  EXPECT_EQ(coset_reps(LinearForm({g(1), g(0, 1), half}), 1, 2).points, std::vector<GaussRat>{g(0)});
}

TEST(CosetReps, DegenerateParallelogram) {
  try {
    coset_reps(LinearForm({g(1), g(0, 1), half}), 0, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::degenerate_parallelogram);
  }
}

TEST(LatticeProperties, RandomForms) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    LinearForm f = selftest::random_form(rng, 2 + trial % 3, 5, false);
    ValueLattice lat = value_lattice(f);
    EXPECT_GT(lat.covolume, 0);
    EXPECT_GT(lat.tau.im(), 0);
    // Generators lie in the value group and each a_j decomposes.
    for (const auto& a : f.a) EXPECT_NO_THROW(decompose(lat, a));
    ValueLattice sub = value_lattice(std::span<const GaussRat>(f.a));
    EXPECT_EQ(sub.covolume, lat.covolume);
    for (std::size_t p = 0; p < f.dim(); ++p)
      for (std::size_t q = 0; q < f.dim(); ++q) {
        if (p == q) continue;
        const Integer v = nu(f, p, q);
        EXPECT_EQ(v, nu(f, q, p));
        if (!spans_parallelogram(f, p, q)) continue;
        Rational det = real_det(f.a[p], f.a[q]);
        if (det < 0) det = -det;
        EXPECT_EQ(lat.covolume * Rational(v), det);
        if (p < q) {
          EXPECT_EQ(v, nu_bruteforce(f, p, q));
          auto cs = coset_reps(f, p, q);
          EXPECT_EQ(Integer(cs.points.size()), v);
          EXPECT_EQ(cs.points.front(), g(0));
        }
      }
  }
}

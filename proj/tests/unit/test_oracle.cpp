#include <gtest/gtest.h>

#include <random>

#include "pz/construct.hpp"
#include "pz/indexcalc.hpp"
#include "pz/oracle.hpp"
#include "pz/selftest.hpp"

using namespace pz;

namespace {

GaussRat g(long long re, long long im = 0) { return GaussRat(Rational(re), Rational(im)); }
GaussRat q(long long n, long long d) { return GaussRat(Rational(n, d)); }

PlaneDivisor cancelling_pair() {
  return PlaneDivisor(2, {LinearForm({g(1), g(0, 1)}, q(1, 3)), LinearForm({g(1), g(0, -1)}, q(1, 5))});
}

// Phi_i(z1 + i z2).
cplx phi_plane(std::span<const cplx> z) { return phi_log(cplx(0, 1), z[0] + cplx(0, 1) * z[1], 1e-12); }

}  // namespace

TEST(NumericIndex, SinglePlane) { EXPECT_EQ(numeric_index(phi_plane, 2, 0, 1), -1); }

TEST(NumericIndex, L1FactorIsPeriodic) {
  LinearForm f({g(2), g(-3)}, GaussRat(Rational(1, 7), Rational(1, 2)));
  LogEvaluator ev = selftest::form_evaluator(f);
  EXPECT_EQ(numeric_index(ev, 2, 0, 1), 0);
}

TEST(NumericIndex, CosetProduct) {
  LinearForm form({g(1), g(0, 1), q(1, 2)});
  CosetSystem cs = coset_reps(form, 0, 1);
  LogEvaluator ev = [&](std::span<const cplx> z) { return coset_product_log(form, cs, z, 1e-12); };
  EXPECT_EQ(numeric_index(ev, 3, 0, 1), -2);
  // The constructed factor F_(l) gives the full matrix.
  IndexMatrix N = numeric_index_matrix(selftest::form_evaluator(form), 3);
  EXPECT_EQ(N, component_index_matrix(form));
}

TEST(NumericIndex, BasePointAndRefinementInvariance) {
  LinearForm form({g(2), g(1, 1), GaussRat(Rational(-1, 3), Rational(1, 2))}, q(1, 5));
  LogEvaluator ev = selftest::form_evaluator(form);
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (std::size_t p = 0; p < 3; ++p)
    for (std::size_t r = p + 1; r < 3; ++r) {
      const long want = component_index(form, p, r).convert_to<long>();
      for (int b = 0; b < 5; ++b) {
        ContinuationConfig cfg;
        cfg.z0 = CVec{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
        EXPECT_EQ(numeric_index(ev, 3, p, r, cfg), want);
      }
      for (int steps : {16, 32, 64, 128, 256}) {
        ContinuationConfig cfg;
        cfg.initial_steps = steps;
        EXPECT_EQ(numeric_index(ev, 3, p, r, cfg), want) << steps;
      }
    }
}

TEST(NumericIndex, TransformLawsFromTheEvaluator) {
  LinearForm form({g(1), GaussRat(Rational(1, 2), Rational(2))}, q(1, 3));
  LogEvaluator ev = selftest::form_evaluator(form);
  const long n12 = numeric_index(ev, 2, 0, 1);
  ASSERT_EQ(n12, component_index(form, 0, 1).convert_to<long>());
  // Period scaling: N(k e_1, e_2) = k N.
  for (long k = 1; k <= 3; ++k) {
    EXPECT_EQ(numeric_index(ev, 2, 0, 1, {}, k, 1), k * n12);
    EXPECT_EQ(numeric_index(ev, 2, 0, 1, {}, 1, k), k * n12);
  }
  // beta_2: f(z1, -z2) vanishes on the reflected divisor.
  LogEvaluator refl = [&](std::span<const cplx> z) {
    CVec w(z.begin(), z.end());
    w[1] = -w[1];
    return ev(w);
  };
  EXPECT_EQ(numeric_index(refl, 2, 0, 1), -n12);
  // alpha_12.
  LogEvaluator swp = [&](std::span<const cplx> z) { return ev(CVec{z[1], z[0]}); };
  EXPECT_EQ(numeric_index(swp, 2, 0, 1), -n12);
}

TEST(NumericIndex, GaugeInvariance) {
  LogEvaluator gauged = [](std::span<const cplx> z) {
    return phi_plane(z) + cplx(0.3, -0.2) * z[0] * z[0] * z[1] + cplx(-0.1, 0.25) * z[1] * z[1] + 0.7 * z[0];
  };
  EXPECT_EQ(numeric_index(gauged, 2, 0, 1), -1);
}

TEST(NumericIndex, Errors) {
  LogEvaluator zero = [](std::span<const cplx>) { return cplx(-INFINITY, 0.0); };
  try {
    numeric_index(zero, 2, 0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::path_through_zero);
  }
  // Half of a principal log jumps by pi across branch cuts; no step settles.
  LogEvaluator root = [](std::span<const cplx> z) { return 0.5 * phi_plane(z); };
  EXPECT_THROW(numeric_index(root, 2, 0, 1), Error);
  ContinuationConfig strict;
  strict.residual_tol = 0.0;
  try {
    numeric_index(phi_plane, 2, 0, 1, strict);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::non_integer_result);
  }
  EXPECT_THROW(numeric_index(phi_plane, 2, 0, 2), Error);
  EXPECT_EQ(numeric_index(phi_plane, 2, 1, 1), 0);
}

TEST(NuBruteforce, Examples) {
  EXPECT_EQ(nu_bruteforce(LinearForm({g(1), g(0, 1)}), 0, 1), 1);
  EXPECT_EQ(nu_bruteforce(LinearForm({g(1), g(0, 1), q(1, 2)}), 0, 1), 2);
  EXPECT_EQ(nu_bruteforce(LinearForm({g(2), g(1, 1)}), 0, 1), 1);
  EXPECT_EQ(nu_box_count(LinearForm({g(1), g(0, 1), q(1, 2)}), 0, 1, 4), 2);
  try {
    nu_bruteforce(LinearForm({g(1), g(0, 1), q(1, 2)}), 0, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::degenerate_parallelogram);
  }
}

TEST(NuBruteforce, BoxCountConvergesToClosureCount) {
  std::mt19937_64 rng(43);
  int tested = 0;
  for (int trial = 0; trial < 40; ++trial) {
    LinearForm f = selftest::random_form(rng, 2 + trial % 2, 2, false);
    for (std::size_t p = 0; p < f.dim(); ++p)
      for (std::size_t r = p + 1; r < f.dim(); ++r) {
        if (!spans_parallelogram(f, p, r)) continue;
        const Integer v = nu_bruteforce(f, p, r);
        EXPECT_EQ(v, nu(f, p, r));
        if (v > 12) continue;
        Integer last = 0;
        for (long K = 1; K <= 24; ++K) {
          Integer c = nu_box_count(f, p, r, K);
          EXPECT_LE(c, v);
          EXPECT_GE(c, last);
          last = c;
          if (c == v) break;
        }
        EXPECT_EQ(last, v) << f.str();
        ++tested;
      }
  }
  EXPECT_GT(tested, 10);
}

TEST(Verify, CancellingPair) {
  PlaneDivisor Z = cancelling_pair();
  FunctionModel m = build_model(Z);
  VerifyReport r = verify_model(m, Z, 3);
  EXPECT_TRUE(r.passed());
  EXPECT_LT(r.max_residual(), 1e-8);
  EXPECT_EQ(r.zero_hits.size(), 20u);
  for (const auto& h : r.zero_hits) EXPECT_LT(h.log_abs, h.log_local_scale + std::log(1e-8));
  for (const auto& h : r.displaced) EXPECT_GT(h.log_abs, h.log_local_scale + std::log(1e-3));
  EXPECT_TRUE(r.numeric_index.is_zero());
  EXPECT_TRUE(r.index_error.empty());
}

TEST(Verify, L1OnlyModelIsPeriodicToRounding) {
  PlaneDivisor Z(2, {LinearForm({g(1), g(2)}, q(1, 3)), LinearForm({g(0, 3), g(0, -1)}, GaussRat(Rational(1, 2), Rational(1)))});
  VerifyReport r = verify_model(build_model(Z), Z, 5);
  EXPECT_LT(r.max_residual(), 1e-12);
  EXPECT_TRUE(r.passed());
}

TEST(Verify, TamperedModelIsCaught) {
  PlaneDivisor Z = cancelling_pair();
  FunctionModel m = build_model(Z);
  m.sigma[0][1] += g(1);
  m.sigma[1][0] += g(1);
  m.prepare();
  VerifyReport r = verify_model(m, Z, 3);
  EXPECT_GT(r.max_residual(), 1e-2);
  EXPECT_FALSE(r.passed());
}

TEST(Verify, ReproducibleForFixedSeed) {
  PlaneDivisor Z = cancelling_pair();
  FunctionModel m = build_model(Z);
  VerifyReport a = verify_model(m, Z, 9), b = verify_model(m, Z, 9);
  EXPECT_EQ(a.periodicity_residual, b.periodicity_residual);
  ASSERT_EQ(a.zero_hits.size(), b.zero_hits.size());
  for (std::size_t k = 0; k < a.zero_hits.size(); ++k) {
    EXPECT_EQ(a.zero_hits[k].point, b.zero_hits[k].point);
    EXPECT_EQ(a.displaced[k].log_abs, b.displaced[k].log_abs);
  }
  EXPECT_THROW(verify_model(m, PlaneDivisor(3, {}), 1), Error);
}

// Decide a small divisor, build the periodic function, and check it.

#include <cstdio>

#include "pz/indexcalc.hpp"
#include "pz/oracle.hpp"

int main() {
  using namespace pz;
  // z1 + i z2 + 1/3 and z1 - i z2 + 1/5: the two reproductions carry
  // opposite index and cancel.
  PlaneDivisor Z(2, {LinearForm({GaussRat(1), GaussRat::i()}, GaussRat(Rational(1, 3))),
                     LinearForm({GaussRat(1), -GaussRat::i()}, GaussRat(Rational(1, 5)))});
  for (const auto& f : Z.components)
    std::printf("%s  index %s\n", f.str().c_str(), component_index_matrix(f).str().c_str());

  Decision d = decide(Z);
  std::printf("verdict: %s\n", d.verdict == Verdict::accept ? "accept" : "reject");
  if (!d.model) return 1;

  const CVec z{{0.3, 0.1}, {-0.2, 0.4}};
  cplx v = eval_model(*d.model, z);
  std::printf("F(z) = %.12g %+.12gi\n", v.real(), v.imag());

  VerifyReport r = verify_model(*d.model, Z, 7);
  std::printf("periodicity residual %.3g, numeric index %s, %s\n", r.max_residual(), r.numeric_index.str().c_str(),
              r.passed() ? "verified" : "NOT verified");

  // A single plane z1 + i z2 = 0 is not the divisor of any periodic function.
  Decision s = decide(PlaneDivisor(2, {LinearForm({GaussRat(1), GaussRat::i()})}));
  std::printf("single plane: %s, N%zu%zu = %s\n", s.verdict == Verdict::accept ? "accept" : "reject", s.witness->p + 1,
              s.witness->q + 1, s.witness->sum.str().c_str());
  return r.passed() && s.verdict == Verdict::reject ? 0 : 1;
}

// Acceptance suite: eight property checks run with fixed seeds. Shared by
// the acceptance binary and `pzdiv selftest`.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pz/construct.hpp"
#include "pz/forms.hpp"
#include "pz/indexcalc.hpp"
#include "pz/lattice.hpp"
#include "pz/oracle.hpp"
#include "pz/types.hpp"

namespace pz::selftest {

struct Criterion {
  int id = 0;
  std::string title;
  bool pass = false;
  // The failing part is a documented mathematical impossibility rather than
  // a defect; every other sub-check of the criterion passed.
  bool known_gap = false;
  std::string detail;
  double seconds = 0.0;
};

// ---- random inputs ----

inline Rational random_rational(std::mt19937_64& rng, int bound = 5) {
  std::uniform_int_distribution<int> num(-bound, bound), den(1, bound);
  return Rational(num(rng), den(rng));
}

inline GaussRat random_gauss(std::mt19937_64& rng, int bound = 5) {
  return {random_rational(rng, bound), random_rational(rng, bound)};
}

/// Random form with numerators and denominators bounded by `bound`. About
/// one in five is L1 (a real or purely imaginary rational vector).
inline LinearForm random_form(std::mt19937_64& rng, std::size_t n, int bound = 5, bool allow_l1 = true) {
  std::uniform_int_distribution<int> kind(0, 9);
  while (true) {
    LinearForm f;
    const int k = allow_l1 ? kind(rng) : 9;
    for (std::size_t j = 0; j < n; ++j) {
      if (k == 0) f.a.emplace_back(random_rational(rng, bound));
      else if (k == 1) f.a.emplace_back(Rational(0), random_rational(rng, bound));
      else f.a.push_back(random_gauss(rng, bound));
    }
    f.c = random_gauss(rng, bound);
    if (f.pivot() == n) continue;
    if (!allow_l1 && classify(f).cls == FormClass::L1) continue;
    return f;
  }
}

inline PlaneDivisor random_divisor(std::mt19937_64& rng, std::size_t n, std::size_t comps, int bound = 3) {
  PlaneDivisor Z;
  Z.n = n;
  std::uniform_int_distribution<int> mult(1, 2);
  for (std::size_t k = 0; k < comps; ++k) {
    LinearForm f = random_form(rng, n, bound);
    f.mult = mult(rng);
    Z.components.push_back(std::move(f));
  }
  return Z;
}

/// The constructed evaluator whose zero set is the reproduction of `form`.
inline LogEvaluator form_evaluator(const LinearForm& form, double eps = 1e-12) {
  ClassifiedForm cf = classify(form);
  if (cf.cls == FormClass::L1) {
    L1Factor f = make_l1_factor(cf);
    return [f](std::span<const cplx> z) { return l1_factor_log(f, z); };
  }
  L2Factor f = make_l2_factor(form);
  f.mult = 1;
  return [f, eps](std::span<const cplx> z) { return l2_factor_log(f, z, eps); };
}

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

template <class Body>
Criterion timed(int id, std::string title, Body body) {
  Criterion c;
  c.id = id;
  c.title = std::move(title);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.known_gap = false;
    c.detail += std::string(c.detail.empty() ? "" : "; ") + "exception: " + e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

inline std::vector<LinearForm> corpus(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(2, 4);
  std::vector<LinearForm> forms;
  for (int k = 0; k < count; ++k) forms.push_back(random_form(rng, static_cast<std::size_t>(dim(rng))));
  return forms;
}

/// Closes a set of forms under the group generated by beta_k (k in I) and
/// alpha_pq (p, q in J), one representative per canonical key.
inline PlaneDivisor orbit_closure(const std::vector<LinearForm>& seeds, std::size_t n, const std::vector<std::size_t>& I,
                                  const std::vector<std::size_t>& J) {
  std::vector<Transform> gens;
  for (auto k : I) gens.push_back(Reflect{k});
  for (auto p : J)
    for (auto q : J)
      if (p < q) gens.push_back(Swap{p, q});
  PlaneDivisor Z;
  Z.n = n;
  std::set<std::string> seen;
  std::vector<LinearForm> todo = seeds;
  while (!todo.empty()) {
    LinearForm f = todo.back();
    todo.pop_back();
    if (!seen.insert(canonical_key(f).str()).second) continue;
    Z.components.push_back(f);
    for (const auto& t : gens) todo.push_back(transform_form(f, t));
  }
  return Z;
}

}  // namespace detail

// ---- criteria ----

inline Criterion index_vs_oracle(std::uint64_t seed) {
  return detail::timed(1, "index formula vs continuation oracle", [&](Criterion& c) {
    const auto forms = detail::corpus(seed, 60);
    int pairs = 0, bad = 0, l1 = 0;
    ContinuationConfig cfg;
    cfg.seed = seed;
    for (const auto& f : forms) {
      if (classify(f).cls == FormClass::L1) ++l1;
      LogEvaluator ev = form_evaluator(f);
      for (std::size_t p = 0; p < f.dim(); ++p)
        for (std::size_t q = p + 1; q < f.dim(); ++q) {
          ++pairs;
          const Integer want = component_index(f, p, q);
          long got = 0;
          try {
            got = numeric_index(ev, f.dim(), p, q, cfg);
          } catch (const Error& e) {
            ++bad;
            c.detail += " [" + f.str() + " (" + std::to_string(p + 1) + "," + std::to_string(q + 1) + "): " + e.what() + "]";
            continue;
          }
          if (Integer(got) != want) {
            ++bad;
            c.detail += " [" + f.str() + " (" + std::to_string(p + 1) + "," + std::to_string(q + 1) + "): formula " +
                        want.str() + ", oracle " + std::to_string(got) + "]";
          }
        }
    }
    c.pass = bad == 0 && forms.size() >= 50;
    c.detail = std::to_string(forms.size()) + " forms (" + std::to_string(l1) + " L1), " + std::to_string(pairs) +
               " pairs, " + std::to_string(bad) + " mismatches" + c.detail;
  });
}

inline Criterion nu_agreement(std::uint64_t seed) {
  return detail::timed(2, "lattice-point count vs brute force", [&](Criterion& c) {
    const auto forms = detail::corpus(seed, 60);
    int pairs = 0, bad = 0;
    for (const auto& f : forms)
      for (std::size_t p = 0; p < f.dim(); ++p)
        for (std::size_t q = p + 1; q < f.dim(); ++q) {
          if (!spans_parallelogram(f, p, q)) continue;
          ++pairs;
          if (nu(f, p, q) != nu_bruteforce(f, p, q)) {
            ++bad;
            c.detail += " [" + f.str() + " pair " + std::to_string(p + 1) + "," + std::to_string(q + 1) + "]";
          }
        }
    // a = (1, i, 1/2)
    LinearForm w({GaussRat(1), GaussRat::i(), GaussRat(Rational(1, 2))});
    ContinuationConfig cfg;
    cfg.seed = seed;
    LogEvaluator ev = form_evaluator(w);
    const bool worked = nu(w, 0, 1) == 2 && nu_bruteforce(w, 0, 1) == 2 && component_index(w, 0, 1) == -2 &&
                        component_index(w, 0, 2) == 0 && component_index(w, 1, 2) == 1 &&
                        numeric_index(ev, 3, 0, 1, cfg) == -2 && numeric_index(ev, 3, 0, 2, cfg) == 0 &&
                        numeric_index(ev, 3, 1, 2, cfg) == 1;
    c.pass = bad == 0 && worked;
    c.detail = std::to_string(pairs) + " nondegenerate pairs, " + std::to_string(bad) + " mismatches; (1,i,1/2): " +
               (worked ? "nu12=2 N12=-2 N13=0 N23=1 ok" : "MISMATCH") + c.detail;
  });
}

inline Criterion phi_laws(std::uint64_t seed) {
  return detail::timed(3, "one-variable product functional equations", [&](Criterion& c) {
    const std::vector<GaussRat> Ts = {GaussRat::i(),
                                      -GaussRat::i(),
                                      GaussRat(Rational(1, 2), Rational(1, 2)),
                                      GaussRat(Rational(-1, 3), Rational(-3, 4)),
                                      GaussRat(Rational(2, 5), Rational(2)),
                                      GaussRat(Rational(1), Rational(-1, 2))};
    const double eps = 1e-12;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double r_per = 0, r_lit = 0, r_fixed = 0, r_trunc = 0;
    auto rel = [](cplx lhs_log, cplx rhs_log) {
      // |e^L - e^R| / max(|e^L|, |e^R|), from logs.
      const cplx d = lhs_log - rhs_log;
      const cplx e = std::exp(d);
      return std::abs(e - 1.0) / std::max(1.0, std::abs(e));
    };
    for (const auto& Tq : Ts) {
      const cplx T = Tq.to_complex();
      const double s = T.imag() > 0 ? 1.0 : -1.0;
      for (int k = 0; k < 100; ++k) {
        const cplx w(u(rng), u(rng));
        const cplx base = phi_log(T, w, eps);
        r_per = std::max(r_per, rel(phi_log(T, w + 1.0, eps), base));
        const cplx step = phi_log(T, w + T, eps);
        // As stated: Phi(w + T) = e^{-+2 pi i (w + T)} Phi(w).
        r_lit = std::max(r_lit, rel(step, base - s * two_pi_i * (w + T)));
        // With the factor -1 that the normalized factors carry.
        r_fixed = std::max(r_fixed, rel(step, base + phi_step_exponent(T, w)));
        r_trunc = std::max(r_trunc, rel(phi_log(T, w, eps, 5), base));
      }
    }
    const bool ok_per = r_per < 1e-9, ok_lit = r_lit < 1e-9, ok_fixed = r_fixed < 1e-9, ok_trunc = r_trunc < 1e-12;
    c.pass = ok_per && ok_lit && ok_fixed && ok_trunc;
    c.known_gap = !ok_lit && ok_per && ok_fixed && ok_trunc;
    c.detail = std::to_string(Ts.size()) + " T values x 100 points; period-1 law " + detail::fmt(r_per) +
               ", T-step law as stated " + detail::fmt(r_lit) + ", T-step law with factor -1 " + detail::fmt(r_fixed) +
               ", Q->Q+5 " + detail::fmt(r_trunc);
    if (c.known_gap)
      c.detail += "; the stated T-step law cannot hold for any entire function with simple zeros exactly on Z+TZ "
                  "and period 1 (its multiplier is forced to carry -1)";
  });
}

inline Criterion end_to_end(std::uint64_t seed) {
  return detail::timed(4, "cancelling pair accepted, single plane rejected", [&](Criterion& c) {
    PlaneDivisor pair(2, {LinearForm({GaussRat(1), GaussRat::i()}, GaussRat(Rational(1, 3))),
                          LinearForm({GaussRat(1), -GaussRat::i()}, GaussRat(Rational(1, 5)))});
    Decision d = decide(pair);
    bool ok = d.verdict == Verdict::accept && d.model.has_value();
    double res = 0, worst_hit = -INFINITY, worst_off = INFINITY, worst_off_max = INFINITY;
    bool zeros_ok = false, off_ok = false, idx_ok = false;
    if (ok) {
      VerifyReport r = verify_model(*d.model, pair, seed, 1e-8, 50, 20);
      res = r.max_residual();
      zeros_ok = r.zero_hits.size() == 20;
      off_ok = r.displaced.size() == 20;
      for (const auto& h : r.zero_hits) {
        zeros_ok = zeros_ok && h.ok;
        worst_hit = std::max(worst_hit, h.log_abs - h.log_local_scale);
      }
      for (const auto& h : r.displaced) {
        off_ok = off_ok && h.ok;
        worst_off = std::min(worst_off, h.log_abs - h.log_local_scale);
        worst_off_max = std::min(worst_off_max, h.log_abs - h.log_max_scale);
      }
      idx_ok = r.index_agrees && r.numeric_index.is_zero();
      ok = res < 1e-8 && zeros_ok && off_ok && idx_ok;
    }
    PlaneDivisor single(2, {LinearForm({GaussRat(1), GaussRat::i()})});
    Decision s = decide(single);
    const bool rej = s.verdict == Verdict::reject && s.witness && s.witness->p == 0 && s.witness->q == 1 &&
                     s.witness->sum == -1;
    c.pass = ok && rej;
    c.detail = "pair: " + std::string(d.verdict == Verdict::accept ? "accept" : "reject") + ", periodicity " +
               detail::fmt(res) + ", zero hits " + (zeros_ok ? "ok" : "FAIL") + " (worst log ratio " +
               detail::fmt(worst_hit) + "), displaced " + (off_ok ? "ok" : "FAIL") + " (worst log ratio " +
               detail::fmt(worst_off) + " vs circle mean, " + detail::fmt(worst_off_max) +
               " vs ball max), numeric index " + (idx_ok ? "zero" : "FAIL") + "; single plane: " +
               (rej ? "reject, witness N12 = -1" : "WRONG");
  });
}

inline Criterion transform_laws(std::uint64_t seed) {
  return detail::timed(5, "transformation laws and additivity", [&](Criterion& c) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim(2, 4), comps(1, 3);
    int checks = 0, bad = 0;
    for (int k = 0; k < 20; ++k) {
      const std::size_t n = static_cast<std::size_t>(dim(rng));
      PlaneDivisor Z = random_divisor(rng, n, static_cast<std::size_t>(comps(rng)));
      std::vector<Transform> ts;
      for (std::size_t j = 0; j < n; ++j) ts.push_back(Reflect{j});
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) ts.push_back(Swap{p, q});
      for (std::size_t p = 0; p < n; ++p)
        for (long s = 1; s <= 3; ++s) ts.push_back(ScalePeriod{p, s});
      for (const auto& t : ts) {
        ++checks;
        if (apply_transform(Z, t).predicted != recompute_index(Z, t)) {
          ++bad;
          c.detail += " [" + transform_name(t) + " on divisor " + std::to_string(k) + "]";
        }
      }
      // Additivity: multiplier route on the concatenation vs sum of parts.
      PlaneDivisor W = random_divisor(rng, n, static_cast<std::size_t>(comps(rng)));
      PlaneDivisor U = Z;
      U.components.insert(U.components.end(), W.components.begin(), W.components.end());
      IndexMatrix sum = divisor_index(Z);
      sum += divisor_index(W);
      ++checks;
      if (index_from_multipliers(U, std::vector<long>(n, 1)) != sum || divisor_index(U) != sum) {
        ++bad;
        c.detail += " [additivity on divisor " + std::to_string(k) + "]";
      }
    }
    c.pass = bad == 0;
    c.detail = "20 divisors, " + std::to_string(checks) + " exact checks, " + std::to_string(bad) + " failures" + c.detail;
  });
}

inline Criterion gauge_invariance(std::uint64_t seed) {
  return detail::timed(6, "gauge invariance of the numeric index", [&](Criterion& c) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim(2, 3);
    std::uniform_real_distribution<double> coef(-0.4, 0.4);
    int bad = 0, pairs = 0;
    ContinuationConfig cfg;
    cfg.seed = seed;
    for (int k = 0; k < 10; ++k) {
      const std::size_t n = static_cast<std::size_t>(dim(rng));
      LinearForm f = random_form(rng, n, 3, false);
      LogEvaluator ev = form_evaluator(f);
      // h(z) = sum of monomials z^alpha with |alpha| <= 3.
      std::vector<std::pair<std::vector<int>, cplx>> h;
      std::vector<int> e(n, 0);
      std::function<void(std::size_t, int)> gen = [&](std::size_t j, int left) {
        if (j == n) {
          h.push_back({e, {coef(rng), coef(rng)}});
          return;
        }
        for (int d = 0; d <= left; ++d) {
          e[j] = d;
          gen(j + 1, left - d);
        }
        e[j] = 0;
      };
      gen(0, 3);
      LogEvaluator gauged = [ev, h](std::span<const cplx> z) {
        cplx acc = ev(z);
        for (const auto& [ex, a] : h) {
          cplx m = a;
          for (std::size_t j = 0; j < z.size(); ++j)
            for (int r = 0; r < ex[j]; ++r) m *= z[j];
          acc += m;
        }
        return acc;
      };
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) {
          ++pairs;
          const long a = numeric_index(ev, n, p, q, cfg);
          const long b = numeric_index(gauged, n, p, q, cfg);
          if (a != b || Integer(a) != component_index(f, p, q)) {
            ++bad;
            c.detail += " [" + f.str() + " pair " + std::to_string(p + 1) + "," + std::to_string(q + 1) + ": " +
                        std::to_string(a) + " vs " + std::to_string(b) + "]";
          }
        }
    }
    c.pass = bad == 0;
    c.detail = "10 gauges of degree <= 3, " + std::to_string(pairs) + " pairs, " + std::to_string(bad) + " changes" + c.detail;
  });
}

/// Symmetric divisors used by the soundness and corrector checks.
inline std::vector<PlaneDivisor> symmetric_divisors(std::uint64_t seed, int count = 10) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(2, 4), seeds(1, 2);
  std::vector<PlaneDivisor> out;
  for (int k = 0; k < count; ++k) {
    const std::size_t n = static_cast<std::size_t>(dim(rng));
    std::vector<std::size_t> I, J;
    if (n == 2) I = {0};
    else if (n == 3) I = {0}, J = {1, 2};
    else I = {0, 1}, J = {2, 3};
    std::vector<LinearForm> fs;
    const int m = seeds(rng);
    for (int s = 0; s < m; ++s) fs.push_back(random_form(rng, n, 3));
    out.push_back(detail::orbit_closure(fs, n, I, J));
  }
  return out;
}

inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> symmetry_sets(std::size_t n) {
  if (n == 2) return {{0}, {}};
  if (n == 3) return {{0}, {1, 2}};
  return {{0, 1}, {2, 3}};
}

inline Criterion symmetry_soundness(std::uint64_t seed) {
  return detail::timed(7, "symmetric divisors have zero index", [&](Criterion& c) {
    int bad = 0;
    std::size_t comps = 0;
    for (const auto& Z : symmetric_divisors(seed)) {
      comps += Z.components.size();
      auto [I, J] = symmetry_sets(Z.n);
      SymmetryEvidence ev = symmetry_certificate(Z, I, J);
      if (!ev.holds || !divisor_index(Z).is_zero()) {
        ++bad;
        c.detail += " [n=" + std::to_string(Z.n) + ", " + std::to_string(Z.components.size()) + " components]";
      }
    }
    c.pass = bad == 0;
    c.detail = "10 orbit closures (" + std::to_string(comps) + " components in total), " + std::to_string(bad) +
               " failures" + c.detail;
  });
}

inline Criterion corrector_identity(std::uint64_t seed) {
  return detail::timed(8, "exact corrector identity on accepted builds", [&](Criterion& c) {
    std::vector<PlaneDivisor> cases = symmetric_divisors(seed);
    cases.push_back(PlaneDivisor(2, {LinearForm({GaussRat(1), GaussRat::i()}, GaussRat(Rational(1, 3))),
                                     LinearForm({GaussRat(1), -GaussRat::i()}, GaussRat(Rational(1, 5)))}));
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 10; ++k) {
      // f together with its conjugate-direction partner cancels.
      LinearForm f = random_form(rng, 2, 3, false);
      LinearForm g = f;
      g.a[1] = -g.a[1];
      cases.push_back(PlaneDivisor(2, {f, g}));
    }
    int accepted = 0, bad = 0;
    for (const auto& Z : cases) {
      Decision d = decide(Z);
      if (d.verdict != Verdict::accept) continue;
      ++accepted;
      if (!corrector_identity_holds(*d.model)) ++bad;
    }
    c.pass = bad == 0 && accepted == static_cast<int>(cases.size());
    c.detail = std::to_string(accepted) + "/" + std::to_string(cases.size()) + " accepted, " + std::to_string(bad) +
               " identity failures";
  });
}

inline std::vector<Criterion> run_all(std::uint64_t seed = 20240611, const std::function<void(const Criterion&)>& on_done = {}) {
  std::vector<Criterion> out;
  auto add = [&](Criterion c) {
    if (on_done) on_done(c);
    out.push_back(std::move(c));
  };
  add(index_vs_oracle(seed));
  add(nu_agreement(seed));
  add(phi_laws(seed));
  add(end_to_end(seed));
  add(transform_laws(seed));
  add(gauge_invariance(seed));
  add(symmetry_soundness(seed));
  add(corrector_identity(seed));
  return out;
}

inline std::string status(const Criterion& c) {
  if (c.pass) return "PASS";
  return c.known_gap ? "FAIL (documented)" : "FAIL";
}

}  // namespace pz::selftest

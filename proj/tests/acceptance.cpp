// Acceptance suite: one pass/fail line per criterion, each with its runtime
// budget. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hyperscheme/hyperscheme.hpp"
#include "oracles.hpp"

namespace hs = hyperscheme;
using hs::Rational;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) notes << "first failure: " << what;
      ok = false;
    }
  }
};

// 1. Double cosets of S3 by a transposition.
void criterion_1(Check& c) {
  const auto cs = hs::from_double_cosets(oracle::s3_table(), {0, 1});
  c.require(cs.scheme.n_points() == 3 && cs.scheme.n_relations() == 2, "K3 shape");
  const auto h = hs::from_scheme(cs.scheme);
  c.require(h(1, 1, 0) == Rational(1, 2) && h(1, 1, 1) == Rational(1, 2), "d1*d1 = 1/2 d0 + 1/2 d1");
  const auto w = hs::haar(h).left;
  c.require(w == std::vector<Rational>{Rational(1), Rational(2)}, "haar (1,2)");
  const auto t = hs::characters(h, 0);
  const auto ex = hs::exact_characters(h, t);
  c.require(ex.has_value(), "rational character table");
  if (!ex) return;
  c.require(ex->chars == std::vector<std::vector<Rational>>{{Rational(1), Rational(1)}, {Rational(1), Rational(-1, 2)}},
            "characters {(1,1),(1,-1/2)}");
  c.require(ex->plancherel == std::vector<Rational>{Rational(1, 3), Rational(2, 3)}, "plancherel (1/3,2/3)");
  c.require(hs::dual_convolution(*ex, 1, 1) == std::vector<Rational>{Rational(1, 2), Rational(1, 2)},
            "dual a*a = 1/2 d1 + 1/2 da");
  c.notes << "K3 exact";
}

// 2. Gamma(a,b) polynomial hypergroups.
void criterion_2(Check& c) {
  double worst_special = 0, worst_closed = 0, worst_product = 0;
  for (int a = 2; a <= 6; ++a)
    for (int b = 2; b <= 6; ++b) {
      const hs::DTParams p{a, b};
      for (std::size_t m = 0; m <= 30; ++m)
        for (std::size_t n = 0; n <= 30; ++n) {
          Rational total(0);
          for (const auto& [k, v] : hs::g_coeffs(m, n, p)) total += v;
          if (total != Rational(1)) c.require(false, "unit mass g(" + std::to_string(m) + "," + std::to_string(n) + ")");
        }
      const auto [s0, s1] = hs::special_points(p);
      const auto at1 = hs::poly_eval_all(30, s1, p);
      const auto at0 = hs::poly_eval_all(30, s0, p);
      for (std::size_t n = 0; n <= 30; ++n) {
        worst_special = std::max(worst_special, std::abs(at1[n] - 1.0));
        worst_special = std::max(worst_special, std::abs(at0[n] - std::pow(1.0 - b, -double(n))));
      }
      for (int i = 0; i <= 20; ++i) {
        const double x = s0 + (s1 - s0) * i / 20.0;
        if (std::abs(std::abs(x) - 1.0) > 1e-6) {
          const std::complex<double> z = x + std::sqrt(std::complex<double>(x * x - 1.0));
          const auto vals = hs::poly_eval_all(30, x, p);
          for (std::size_t n = 0; n <= 30; ++n)
            worst_closed = std::max(worst_closed, std::abs(hs::closed_form_eval(n, z, p) - vals[n]));
        }
        for (std::size_t m = 0; m <= 20; ++m)
          for (std::size_t n = 0; n <= 20; ++n)
            worst_product = std::max(worst_product, hs::product_formula_residual(m, n, x, p));
      }
    }
  c.require(worst_special <= 1e-9, "P_n(s1)=1, P_n(s0)=(1-b)^-n");
  c.require(worst_closed <= 1e-8, "closed form vs recurrence");
  c.require(worst_product <= 1e-8, "product formula residual");
  c.notes << "special " << worst_special << ", closed " << worst_closed << ", product " << worst_product;
}

// 3. Orthogonality.
void criterion_3(Check& c) {
  double worst = 0;
  for (const hs::DTParams p : {hs::DTParams{3, 2}, hs::DTParams{2, 2}, hs::DTParams{2, 4}}) {
    for (std::size_t m = 0; m <= 12; ++m)
      for (std::size_t n = 0; n <= m; ++n) {
        const double v = hs::ortho_measure_integrate(
            [&](double x) {
              const auto vals = hs::poly_eval_all(m, x, p);
              return vals[m] * vals[n];
            },
            p);
        worst = std::max(worst, std::abs(v - (m == n ? 1.0 / hs::dt_haar_double(n, p) : 0.0)));
      }
  }
  c.require(worst <= 1e-6, "orthogonality within 1e-6");
  c.notes << "max error " << worst;
}

// 4. Positive definiteness on balls.
void criterion_4(Check& c) {
  for (const hs::DTParams p : {hs::DTParams{3, 2}, hs::DTParams{2, 4}}) {
    const auto [s0, s1] = hs::special_points(p);
    const auto ball = hs::build_ball(p, 4);
    double worst = 0;
    for (int i = 0; i <= 8; ++i) worst = std::min(worst, hs::gram_min_eig(s0 + (s1 - s0) * i / 8.0, ball));
    c.require(worst >= hs::kEigenFloor, "PSD on [s0,s1] at R=4");
    std::size_t found = 0;
    double neg = 0;
    for (std::size_t r = 1; r <= 8 && found == 0; ++r) {
      neg = hs::gram_min_eig(s1 + 0.2, hs::build_ball(p, r));
      if (neg < -1e-6) found = r;
    }
    c.require(found != 0, "negative eigenvalue beyond s1");
    c.notes << "(" << p.a << "," << p.b << "): min " << worst << ", R*=" << found << " eig " << neg << "; ";
  }
}

// 5. Deformation consistency.
void criterion_5(Check& c) {
  const hs::DTParams p{3, 2};
  const auto ball = hs::build_ball(p, 6);
  const hs::BoundaryRay ray(ball);
  for (double cc : {0.0, 0.3, -0.5 * std::log(2.0)}) {
    const auto k = hs::deform_ball_kernels(ball, ray, cc);
    c.require(k.max_row_sum_residual <= 1e-12, "row sums");
    c.require(k.composition_checks > 0 && k.composition_residual <= 1e-10, "composition");
    const auto pf = hs::pushforward_vs_haar(p, cc);
    const double e2c = std::exp(2 * cc);
    const double pf1 = std::exp(-2 * cc) + (p.a - 1) * e2c;
    const double haar1 = std::pow((p.a - 1) * e2c + 1, 2) / (p.a * e2c);
    c.require(std::abs(pf.pf1_ball - pf1) <= 1e-10 && std::abs(pf.pf1_formula - pf1) <= 1e-10, "pushforward formula");
    c.require(std::abs(pf.haar1_deformed - haar1) <= 1e-10 && std::abs(pf.haar1_formula - haar1) <= 1e-10,
              "deformed haar formula");
    c.require(pf.differ == (cc != 0.0) && (std::abs(pf1 - haar1) > 1e-10) == (cc != 0.0), "differ iff c != 0");
    c.notes << "c=" << cc << ": rows " << k.max_row_sum_residual << ", comp " << k.composition_residual << "; ";
  }
}

// 6. Projection of random walks on the ball.
void criterion_6(Check& c) {
  const hs::DTParams p{3, 2};
  const std::size_t radius = 8;
  const auto ball = hs::build_ball(p, radius);
  const hs::BoundaryRay ray(ball);
  const auto mu = hs::StepDistribution::point(1);
  for (double cc : {0.0, 0.3}) {
    const auto k = hs::deform_ball_kernels(ball, ray, cc, false);
    double worst = 0, tv = 0;
    for (std::size_t steps = 1; steps <= 6; ++steps) {
      const auto law = cc == 0.0 ? hs::poly_convolution_law(p, mu, steps, radius + 1)
                                 : hs::ball_convolution_law(p, cc, mu, steps, radius + 1);
      const auto proj = hs::project(k.family, 0, hs::propagate(k.family, mu, 0, steps), radius + 1);
      for (std::size_t i = 0; i <= radius; ++i) worst = std::max(worst, std::abs(proj[i] - law[i]));
      if (steps == 6) {
        const auto walk = hs::simulate_ball_walk(ball, k, mu, steps, 100000, 20240601, 1);
        tv = hs::projection_check(walk, k.family, mu, steps, law).tv;
      }
    }
    c.require(worst <= 1e-10, "propagation vs convolution power");
    c.require(tv <= 0.02, "Monte Carlo TV");
    c.notes << "c=" << cc << ": residual " << worst << ", tv " << tv << "; ";
  }
}

// 7. Rigidity under random perturbation.
void criterion_7(Check& c) {
  for (const auto& [name, part] : {std::pair{"K3", oracle::complete_partition(3)}, std::pair{"Z4", oracle::cyclic_partition(4)}}) {
    const auto r = oracle::perturbation_search(part, 2000, 7);
    c.require(r.attempts >= 1000, "attempt count");
    c.require(r.accepted_noncanonical == 0, "non-canonical family accepted");
    c.require(r.rigidity_false == 0, "rigidity check false on accepted input");
    c.notes << name << ": " << r.attempts << " attempts, " << r.accepted << " accepted; ";
  }
}

// 8. Product and join of K3.
void criterion_8(Check& c) {
  const auto s = hs::verify_scheme(oracle::complete_partition(3)).value();
  const auto h = hs::from_scheme(s);
  c.require(hs::verify_hypergroup(hs::direct_product(h, h)).ok(), "product hypergroup");
  const auto j = hs::join(h, h);
  c.require(hs::verify_hypergroup(j).ok(), "join hypergroup");
  c.require(j(2, 2, 2) == Rational(1, 2) && j(2, 2, 0) == Rational(1, 6) && j(2, 2, 1) == Rational(1, 3),
            "d1*d1 = 1/2 d1 + 1/6 de2 + 1/3 d1'");
  const auto gs = hs::canonical_generalized<Rational>(s);
  for (const auto& built : {hs::direct_product_scheme(gs, gs), hs::join_scheme(gs, gs)}) {
    const auto v = hs::verify_generalized(built);
    c.require(v.ok(), "generalized verification");
    if (!v) continue;
    const auto t2 = hs::t2_reformulation(built, hs::haar(hs::from_generalized(v.value())).left);
    c.require(t2.holds && t2.residual == 0.0, "T2 reformulation exact");
    c.notes << "T2 scale " << hs::to_string(t2.scale) << "; ";
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> all = {
      {1, "double cosets of S3", 1, criterion_1},          {2, "Gamma(a,b) polynomials", 10, criterion_2},
      {3, "orthogonality", 30, criterion_3},               {4, "positive definiteness", 60, criterion_4},
      {5, "deformation consistency", 10, criterion_5},     {6, "random walk projection", 60, criterion_6},
      {7, "rigidity search", 30, criterion_7},             {8, "product and join", 5, criterion_8},
  };
  int failures = 0;
  for (const auto& cr : all) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.require(secs < cr.budget_s, "runtime budget");
    if (!c.ok) ++failures;
    std::printf("criterion %d [%s]: %s (%.3f s of %.0f s) %s\n", cr.id, cr.title, c.ok ? "PASS" : "FAIL", secs,
                cr.budget_s, c.notes.str().c_str());
  }
  return failures == 0 ? 0 : 1;
}

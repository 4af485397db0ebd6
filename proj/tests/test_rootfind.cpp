#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "polybe/backward_error.hpp"
#include "polybe/harness.hpp"
#include "polybe/polynomial.hpp"
#include "polybe/rootfind.hpp"
#include "polybe/tropical.hpp"

using namespace polybe;

namespace {

// Greedy match of computed roots to reference roots; returns the largest
// relative error over the matching.  Adequate when the reference set is
// well separated relative to the tolerance.
double match_error(std::vector<Cplx> got, std::vector<Cplx> want) {
  REQUIRE(got.size() == want.size());
  double worst = 0.0;
  for (const Cplx& w : want) {
    size_t best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < got.size(); ++j) {
      double dj = std::abs(got[j] - w);
      if (dj < dist) {
        dist = dj;
        best = j;
      }
    }
    worst = std::max(worst, dist / std::abs(w));
    got.erase(got.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

}  // namespace

TEST_CASE("initial_guesses: one per tropical root on the expected circles") {
  Polynomial p({Cplx(2), Cplx(-3), Cplx(1)});
  TropicalData t = tropical_roots(p);
  std::vector<Cplx> g = initial_guesses(p, t);
  REQUIRE(g.size() == 2);
  std::vector<double> mods{std::abs(g[0]), std::abs(g[1])};
  std::sort(mods.begin(), mods.end());
  CHECK(mods[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(mods[1] == doctest::Approx(3.0).epsilon(1e-14));

  // running example: moduli follow exp(tau) with the cell multiplicities
  Polynomial f7({Cplx(2.5), Cplx(6), Cplx(3), Cplx(2.5), Cplx(5), Cplx(0.5),
                 Cplx(3), Cplx(0.5)});
  TropicalData t7 = tropical_roots(f7);
  std::vector<Cplx> g7 = initial_guesses(f7, t7);
  REQUIRE(g7.size() == 7);
  std::vector<double> m7;
  for (const Cplx& z : g7) m7.push_back(std::abs(z));
  std::sort(m7.begin(), m7.end());
  const double want[] = {5.0 / 12.0,
                         std::pow(1.2, 1.0 / 3.0),
                         std::pow(1.2, 1.0 / 3.0),
                         std::pow(1.2, 1.0 / 3.0),
                         std::sqrt(5.0 / 3.0),
                         std::sqrt(5.0 / 3.0),
                         6.0};
  for (int i = 0; i < 7; ++i)
    CHECK(m7[static_cast<size_t>(i)] ==
          doctest::Approx(want[i]).epsilon(1e-12));

  // guesses on a shared circle are pairwise distinct
  for (size_t i = 0; i < g7.size(); ++i)
    for (size_t j = i + 1; j < g7.size(); ++j)
      CHECK(std::abs(g7[i] - g7[j]) > 1e-12);
}

TEST_CASE("find_roots: integer quadratic") {
  Polynomial p({Cplx(2), Cplx(-3), Cplx(1)});
  RootSet rs = find_roots(p);
  CHECK(rs.provenance == Provenance::Computed);
  CHECK(match_error(rs.roots, {Cplx(1), Cplx(2)}) <= 1e-14);
}

TEST_CASE("find_roots: widely split quadratic") {
  Polynomial p = from_roots(Cplx(0.2), std::vector<Cplx>{Cplx(1e6), Cplx(1e-6)});
  RootSet rs = find_roots(p);
  CHECK(match_error(rs.roots, {Cplx(1e6), Cplx(1e-6)}) <= 1e-13);
}

TEST_CASE("find_roots: product of ten integer roots") {
  std::vector<Cplx> roots;
  for (int j = 1; j <= 10; ++j) roots.push_back(Cplx(j));
  Polynomial p = from_roots(Cplx(1), roots);
  RootSet rs = find_roots(p);
  CHECK(match_error(rs.roots, roots) <= 1e-9);
}

TEST_CASE("find_roots: roots of unity") {
  for (int d : {5, 12, 31}) {
    std::vector<Cplx> c(static_cast<size_t>(d) + 1, Cplx(0));
    c[0] = Cplx(-1);
    c[static_cast<size_t>(d)] = Cplx(1);
    RootSet rs = find_roots(Polynomial(c));
    REQUIRE(static_cast<int>(rs.roots.size()) == d);
    std::vector<Cplx> want;
    for (int j = 0; j < d; ++j)
      want.push_back(std::polar(1.0, 6.283185307179586 * j / d));
    CHECK(match_error(rs.roots, want) <= 1e-13);
  }
}

TEST_CASE("find_roots: running example residuals") {
  Polynomial f7({Cplx(2.5), Cplx(6), Cplx(3), Cplx(2.5), Cplx(5), Cplx(0.5),
                 Cplx(3), Cplx(0.5)});
  RootSet rs = find_roots(f7);
  REQUIRE(rs.roots.size() == 7);
  for (const Cplx& x : rs.roots)
    CHECK(eval_scaled(f7, x).residual() <= 1e-13);
  // root moduli track the tropical roots within the generic d^2 factor
  TropicalData t = tropical_roots(f7);
  std::vector<Cplx> sorted = sorted_by_modulus(rs.roots);
  for (int i = 0; i < 7; ++i) {
    double ratio =
        std::exp(t.trop_roots[static_cast<size_t>(i)]) / std::abs(sorted[i]);
    CHECK(ratio <= 49.0);
    CHECK(ratio >= 1.0 / 49.0);
  }
}

TEST_CASE("find_roots: degree-20 random instances reach small backward error") {
  TrialStream s(501, 0);
  int checked = 0;
  for (int t = 0; t < 1000; ++t) {
    Polynomial p = random_poly(20, 4.0, s);
    RootSet rs = find_roots(p);
    REQUIRE(rs.roots.size() == 20);
    ErrorReport rep = error_report(p, rs, /*with_embe=*/false);
    CHECK(rep.nbe <= 1e3 * 20.0 * kUnitRoundoff);
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("aberth: permutation of guesses does not change the root set") {
  TrialStream s(88, 1);
  Polynomial p = random_poly(12, 3.0, s);
  TropicalData t = tropical_roots(p);
  std::vector<Cplx> g = initial_guesses(p, t);
  RootSet a = aberth(p, g);
  std::vector<Cplx> rev(g.rbegin(), g.rend());
  RootSet b = aberth(p, rev);
  std::vector<Cplx> sa = sorted_by_modulus(a.roots);
  std::vector<Cplx> sb = sorted_by_modulus(b.roots);
  for (size_t i = 0; i < sa.size(); ++i)
    CHECK(std::abs(sa[i] - sb[i]) <= 1e-15 * std::abs(sa[i]));
}

TEST_CASE("aberth: determinism") {
  TrialStream s(89, 2);
  Polynomial p = random_poly(15, 5.0, s);
  RootSet a = find_roots(p);
  RootSet b = find_roots(p);
  REQUIRE(a.roots.size() == b.roots.size());
  for (size_t i = 0; i < a.roots.size(); ++i)
    CHECK(a.roots[i] == b.roots[i]);
}

TEST_CASE("aberth: validation and degenerate inputs") {
  Polynomial p({Cplx(2), Cplx(-3), Cplx(1)});
  std::vector<Cplx> dup{Cplx(1), Cplx(1)};
  CHECK_THROWS_AS(aberth(p, dup), std::invalid_argument);

  std::vector<Cplx> wrong{Cplx(1)};
  CHECK_THROWS_AS(aberth(p, wrong), std::invalid_argument);

  AberthConfig loose;
  loose.rel_tol = 1e-17;  // below the unit roundoff
  std::vector<Cplx> ok{Cplx(0.5), Cplx(3)};
  CHECK_THROWS_AS(aberth(p, ok, loose), std::invalid_argument);

  Polynomial zero_tail({Cplx(0), Cplx(1)});
  CHECK_THROWS_AS(find_roots(zero_tail), std::domain_error);

  Polynomial constant({Cplx(5)});
  CHECK_THROWS_AS(find_roots(constant), std::domain_error);
}

TEST_CASE("aberth: clustered roots still converge") {
  // triple-ish cluster at 1 with spacing 1e-5 plus a far root
  std::vector<Cplx> roots{Cplx(1), Cplx(1.00001), Cplx(0.99999, 1e-5),
                          Cplx(50)};
  Polynomial p = from_roots(Cplx(1), roots, PrecisionMode::Extended);
  RootSet rs = find_roots(p);
  // cluster conditioning ~ (gap)^-2, so only ~1e-6 relative accuracy is
  // achievable there; the far root stays sharp
  CHECK(match_error(rs.roots, roots) <= 1e-4);
  std::vector<Cplx> sorted = sorted_by_modulus(rs.roots);
  CHECK(std::abs(sorted[3] - Cplx(50)) <= 1e-12 * 50.0);
}

TEST_CASE("sorted_by_modulus: canonical order") {
  std::vector<Cplx> z{Cplx(0, 2), Cplx(1), Cplx(-1), Cplx(0.5, 0)};
  std::vector<Cplx> s = sorted_by_modulus(z);
  CHECK(s[0] == Cplx(0.5, 0));
  // |1| == |-1|: argument breaks the tie, arg(1) = 0 < arg(-1) = pi
  CHECK(s[1] == Cplx(1));
  CHECK(s[2] == Cplx(-1));
  CHECK(s[3] == Cplx(0, 2));
}

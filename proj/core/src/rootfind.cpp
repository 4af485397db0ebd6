#include "polybe/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace polybe {

namespace {

// 2*pi*(2 - golden ratio): irrational rotation, keeps per-cell phase offsets
// from ever lining up.
constexpr double kGoldenAngle = 2.399963229728653;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double unit_from(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

AberthFailure::AberthFailure(std::vector<Cplx> b, std::vector<double> r)
    : std::runtime_error("aberth: no convergence after all restart rounds"),
      best(std::move(b)),
      residuals(std::move(r)) {}

std::vector<Cplx> initial_guesses(const Polynomial& p, const TropicalData& t) {
  std::vector<Cplx> g;
  g.reserve(static_cast<size_t>(p.degree()));
  for (size_t l = 0; l < t.subdivision.size(); ++l) {
    int m = t.multiplicities[l];
    double tau = t.trop_roots[static_cast<size_t>(t.subdivision[l].first)];
    double rho = std::exp(tau);
    double base = kGoldenAngle * static_cast<double>(l + 1);
    for (int j = 0; j < m; ++j) {
      double phi = base + 2.0 * std::numbers::pi * j / m;
      g.push_back(std::polar(rho, phi));
    }
  }
  return g;
}

RootSet aberth(const Polynomial& p, std::span<const Cplx> guesses,
               const AberthConfig& cfg) {
  const int d = p.degree();
  if (d < 1) throw std::invalid_argument("aberth: degree must be at least 1");
  if (guesses.size() != static_cast<size_t>(d))
    throw std::invalid_argument("aberth: need exactly one guess per root");
  if (!(cfg.rel_tol >= kUnitRoundoff))
    throw std::invalid_argument("aberth: rel_tol must be at least the unit roundoff");
  if (cfg.max_iter < 1 || cfg.restart_phases < 0)
    throw std::invalid_argument("aberth: bad iteration limits");
  for (size_t j = 0; j < guesses.size(); ++j)
    for (size_t k = j + 1; k < guesses.size(); ++k)
      if (guesses[j] == guesses[k])
        throw std::invalid_argument("aberth: guesses must be pairwise distinct");

  std::vector<Cplx> x(guesses.begin(), guesses.end());
  std::vector<bool> done(static_cast<size_t>(d), false);
  std::vector<Cplx> xn(static_cast<size_t>(d));

  // An iterate whose scaled residual reaches the Horner evaluation-noise
  // floor is a root to working precision: it cannot be improved by further
  // double-precision steps, and the step-size test alone never fires for
  // roots whose correction wanders inside that noise ball.
  const double res_floor = 4.0 * static_cast<double>(d) * kUnitRoundoff;
  constexpr int kGraceSweeps = 3;  // extra in-floor samples before accepting
  std::vector<Cplx> best_x = x;
  std::vector<double> best_res(static_cast<size_t>(d),
                               std::numeric_limits<double>::infinity());
  std::vector<int> grace(static_cast<size_t>(d), kGraceSweeps);

  auto consider = [&](size_t j, const Cplx& pt, double res) {
    if (res < best_res[j]) {
      best_res[j] = res;
      best_x[j] = pt;
    }
  };

  auto sweep_round = [&](int iters) -> bool {
    for (int it = 0; it < iters; ++it) {
      // Separate near-coincident iterates before forming the Aberth sums.
      for (size_t j = 0; j < x.size(); ++j)
        for (size_t k = j + 1; k < x.size(); ++k) {
          double scale = std::max(std::abs(x[j]), std::abs(x[k]));
          if (std::abs(x[j] - x[k]) < 1e-30 * scale) {
            double phi = kGoldenAngle * static_cast<double>(k + 1);
            x[k] += std::polar(std::max(1e-6 * scale, 1e-300), phi);
            done[k] = false;
          }
        }

      bool all = true;
      for (size_t j = 0; j < x.size(); ++j) {
        if (done[j]) {
          xn[j] = x[j];
          continue;
        }
        HornerScaled h = eval_scaled(p, x[j]);
        if (h.f_is_zero()) {
          consider(j, x[j], 0.0);
          xn[j] = best_x[j];
          done[j] = true;
          continue;
        }
        double res = h.residual();
        consider(j, x[j], res);
        if (res <= res_floor && --grace[j] < 0) {
          xn[j] = best_x[j];
          done[j] = true;
          continue;
        }
        if (h.df_is_zero()) {
          // Critical point: nudge off it rather than divide.
          double s = std::max(std::abs(x[j]), 1.0);
          xn[j] = x[j] + std::polar(1e-6 * s, kGoldenAngle * (j + 1.0));
          all = false;
          continue;
        }
        Cplx w = h.newton_ratio();
        Cplx sum = 0.0;
        for (size_t k = 0; k < x.size(); ++k)
          if (k != j) sum += 1.0 / (x[j] - x[k]);
        Cplx denom = 1.0 - w * sum;
        Cplx delta = (denom == 0.0) ? w : w / denom;
        xn[j] = x[j] - delta;
        double ax = std::abs(xn[j]);
        if (std::abs(delta) <= cfg.rel_tol * ax) {
          consider(j, xn[j], eval_scaled(p, xn[j]).residual());
          xn[j] = best_x[j];
          done[j] = true;
        } else {
          all = false;
        }
      }
      x.swap(xn);
      if (all) return true;
    }
    return false;
  };

  for (int round = 0; round <= cfg.restart_phases; ++round) {
    if (sweep_round(cfg.max_iter))
      return {std::move(x), Provenance::Computed};
    if (round == cfg.restart_phases) break;
    // Keep the moduli, redraw the phases of unconverged iterates.
    std::uint64_t key = mix64(0x9E3779B97F4A7C15ull * (round + 1ull));
    for (size_t j = 0; j < x.size(); ++j) {
      if (done[j]) continue;
      double u = unit_from(mix64(key + j + 1));
      x[j] = std::polar(std::abs(x[j]), 2.0 * std::numbers::pi * u);
    }
  }

  throw AberthFailure(std::move(best_x), std::move(best_res));
}

RootSet find_roots(const Polynomial& p, const AberthConfig& cfg) {
  if (p.degree() < 1)
    throw std::domain_error("find_roots: constant polynomial has no roots");
  TropicalData t = tropical_roots(p);
  return aberth(p, initial_guesses(p, t), cfg);
}

std::vector<Cplx> sorted_by_modulus(std::span<const Cplx> z) {
  std::vector<Cplx> s(z.begin(), z.end());
  std::sort(s.begin(), s.end(), [](const Cplx& a, const Cplx& b) {
    double ma = std::abs(a);
    double mb = std::abs(b);
    if (ma != mb) return ma < mb;
    return std::arg(a) < std::arg(b);
  });
  return s;
}

}  // namespace polybe

#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "polybe/polynomial.hpp"
#include "polybe/tropical.hpp"

namespace polybe {

enum class Provenance { Computed, Supplied, Refined };

struct RootSet {
  std::vector<Cplx> roots;
  Provenance provenance = Provenance::Supplied;
};

struct AberthConfig {
  int max_iter = 200;
  double rel_tol = 4.440892098500626e-16;  // 4u; must be >= u
  int restart_phases = 3;
};

// Thrown when the iteration fails to converge after all restart rounds;
// carries the best iterates and their relative residuals |f(x)|/max|c_i x^i|.
struct AberthFailure : std::runtime_error {
  std::vector<Cplx> best;
  std::vector<double> residuals;
  AberthFailure(std::vector<Cplx> b, std::vector<double> r);
};

// One guess per tropical root: for each subdivision cell of multiplicity m,
// m points of modulus exp(tau) with equispaced phases, rotated per cell so
// distinct cells never collide.
std::vector<Cplx> initial_guesses(const Polynomial& p, const TropicalData& t);

// Ehrlich-Aberth simultaneous iteration, synchronized sweeps from the given
// pairwise-distinct guesses.  Deterministic: identical inputs produce
// identical iterates.
RootSet aberth(const Polynomial& p, std::span<const Cplx> guesses,
               const AberthConfig& cfg = {});

// tropical_roots + initial_guesses + aberth.
RootSet find_roots(const Polynomial& p, const AberthConfig& cfg = {});

// Sort by modulus, breaking ties by argument; the canonical order used for
// pairing and comparison.
std::vector<Cplx> sorted_by_modulus(std::span<const Cplx> z);

}  // namespace polybe

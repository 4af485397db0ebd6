#pragma once

#include "polybe/polynomial.hpp"
#include "polybe/xprec.hpp"

namespace polybe {

struct NewtonConfig {
  int max_iter = 64;
  double rel_tol = kUnitRoundoffSq;   // must lie in (0, u)
  double divergence_factor = 1e3;
};

enum class NewtonStatus { Converged, MaxIter, Diverged };

struct NewtonResult {
  XComplex root;
  NewtonStatus status = NewtonStatus::MaxIter;
  int iterations = 0;
};

// Newton iteration in double-double against the original coefficients of p,
// started from x0.  The variable is rescaled by an exact power of two so
// intermediate terms stay inside the double range even when |x0|^d would
// not.  Converged means the relative step dropped below rel_tol, or reached
// the rounding floor of the iteration (step at most the unit roundoff and no
// longer decreasing).  Diverged means a vanishing derivative or an iterate
// beyond divergence_factor * (1 + |x0|).
NewtonResult newton_refine(const Polynomial& p, Cplx x0,
                           const NewtonConfig& cfg = {});

}  // namespace polybe

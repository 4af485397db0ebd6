#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "polybe/newton.hpp"
#include "polybe/polynomial.hpp"
#include "polybe/rootfind.hpp"

namespace polybe {

// Normwise backward error ||c - c_hat||_2 / ||c||_2, the numerator running
// over i = 0..d-1 (the leading coefficients agree by construction).
double nbe(std::span<const Cplx> c, std::span<const Cplx> c_hat);

// Elementwise backward error max_i |c_i - c_hat_i| / |c_i| over i = 0..d-1;
// +inf when some c_i = 0 gains a nonzero c_hat_i, and a vanishing pair
// contributes 0.
double ebe(std::span<const Cplx> c, std::span<const Cplx> c_hat);

struct CoeffError {
  int index = 0;
  double abs_err = 0.0;   // |c_i - c_hat_i|, extended-precision difference
  double rel_err = 0.0;   // abs_err / |c_i|; +inf when c_i = 0 != c_hat_i
  double r_scaled = 0.0;  // abs_err / (r_i |c_i|), or |c_hat_i| / r_i when c_i = 0
};

struct TbeResult {
  double value = 0.0;  // max_i r_scaled over i = 0..d-1
  std::vector<CoeffError> per_coeff;
};

// Tropical backward error of x_hat as roots of p: the coefficient errors of
// the exact reconstruction lead * prod(x - x_hat_j), each scaled by the
// tropical tolerance r_i |c_i|.  Requires nonzero roots and the same
// preconditions as tropical_roots.
TbeResult tbe(const Polynomial& p, const RootSet& x_hat);

struct RootRefinement {
  Cplx x_hat;
  Cplx x_tilde;
  double rel_move = 0.0;  // |x_hat - x_tilde| / |x_tilde|
  NewtonStatus status = NewtonStatus::MaxIter;
};

struct EmbeResult {
  // Certified upper bound on the elementwise mixed backward error, or empty
  // when some refinement diverged and no witness is available.
  std::optional<double> bound;
  RootSet refined;
  double forward_part = 0.0;
  double coeff_part = 0.0;
  std::vector<RootRefinement> refinement;
  bool pairing_collision = false;
};

// Witness construction by Newton refinement: polish each x_hat_j to x_tilde_j
// in extended precision, bound the forward part by the relative moves and the
// coefficient part by the reconstruction error of the polished roots.
EmbeResult embe_upper_bound(const Polynomial& p, const RootSet& x_hat,
                            const NewtonConfig& cfg = {});

struct WitnessFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadraticWitness {
  RootSet x_tilde;
  double epsilon = 0.0;    // achieved certificate value
  double b_rel_err = 0.0;  // achieved error in the middle coefficient
  double r_b = 1.0;
};

// Closed-form witness for quadratics ax^2 + bx + c, c != 0: when the middle
// coefficient sits strictly below the hull (r_b > 1), correct the smaller
// root so the reconstructed b matches exactly, leaving only the relative
// movement of that root and the rounding of c in the certificate.
QuadraticWitness quadratic_witness(const Polynomial& p, const RootSet& x_hat);

struct GeneralWitness {
  Polynomial tilde_f;
  RootSet x_tilde;
  double epsilon = 0.0;
  bool pairing_collision = false;
};

// Witness by coefficient surgery: replace well-conditioned coefficients
// (r_i <= r_cap) of the reconstruction by their computed values, keep the
// original c_i elsewhere, re-root the surgered polynomial, and pair its roots
// greedily against x_hat in modulus order.
GeneralWitness general_witness(const Polynomial& p, const RootSet& x_hat,
                               double r_cap = 1e3);

// First-order movement of the root x_j of p under the coefficient
// perturbation delta: -delta_f(x_j) / (f + delta_f)'(x_j), evaluated in
// extended precision.  Throws std::domain_error when the denominator
// vanishes.
Cplx perturbation_estimate(const Polynomial& p, Cplx x_j,
                           std::span<const Cplx> delta_coeffs);

struct ErrorReport {
  double nbe = 0.0;
  double ebe = 0.0;
  double tbe = 0.0;
  std::optional<double> embe_ub;
  std::vector<CoeffError> per_coeff;
  std::vector<RootRefinement> refinement;
  bool pairing_collision = false;
};

ErrorReport error_report(const Polynomial& p, const RootSet& x_hat,
                         bool with_embe = true, const NewtonConfig& cfg = {});

}  // namespace polybe

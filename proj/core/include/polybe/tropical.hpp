#pragma once

#include <span>
#include <utility>
#include <vector>

#include "polybe/polynomial.hpp"

namespace polybe {

// Tropicalization of a polynomial: coefficient valuations, the upper convex
// hull of the lifted exponent points, the induced subdivision, the tropical
// roots with multiplicities, and the hull-distance constants r_i.
struct TropicalData {
  std::vector<double> valuations;                // v_i = ln|c_i|, -inf iff c_i = 0
  std::vector<int> hull_vertices;                // 0 = beta_0 < ... < beta_s = d
  std::vector<std::pair<int, int>> subdivision;  // consecutive vertex pairs
  std::vector<double> trop_roots;                // tau_1..tau_d, non-decreasing
  std::vector<int> multiplicities;               // cell widths beta_l - beta_{l-1}
  std::vector<double> r;                         // length d+1, all >= 1
};

// Requires nonzero constant and leading coefficients (deflate exact zero
// roots first).
std::vector<double> valuations(const Polynomial& p);

// Indices of the upper-hull vertices of (i, v_i); points with v_i = -inf are
// never vertices, and neither are points merely on a hull edge.  Requires
// finite first and last entries.
std::vector<int> upper_hull(std::span<const double> v);

TropicalData tropical_roots(const Polynomial& p);

// r_i = exp(hull_i - v_i) clamped to >= 1, where hull_i is the hull height
// above i; for c_i = 0 the error scale is absolute, r_i = max(1, exp(hull_i)).
std::vector<double> r_constants(const Polynomial& p, const TropicalData& t);

// w_i = ln sigma_{d-i}(moduli) - sum of the d-i largest tropical roots,
// i = 0..d-1.  Requires strictly positive moduli, one per tropical root.
std::vector<double> assumption_w(const TropicalData& t,
                                 std::span<const double> moduli);

}  // namespace polybe

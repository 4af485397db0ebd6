#include "polybe/newton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace polybe {

namespace {

int clamp_exp(std::int64_t e) {
  return static_cast<int>(std::clamp<std::int64_t>(e, -3000, 3000));
}

// |z| from the hi components; adequate wherever only the leading 53 bits
// matter (step-size tests, divergence tests).
double mag_hi(const XComplex& z) { return std::hypot(z.re.hi, z.im.hi); }

XComplex ldexp_exact(const XComplex& z, int e) {
  return {{std::ldexp(z.re.hi, e), std::ldexp(z.re.lo, e)},
          {std::ldexp(z.im.hi, e), std::ldexp(z.im.lo, e)}};
}

}  // namespace

NewtonResult newton_refine(const Polynomial& p, Cplx x0,
                           const NewtonConfig& cfg) {
  if (p.degree() < 1)
    throw std::domain_error("newton_refine: constant polynomial has no roots");
  if (!(cfg.rel_tol > 0.0) || !(cfg.rel_tol < kUnitRoundoff))
    throw std::invalid_argument("newton_refine: rel_tol must lie in (0, u)");
  if (cfg.max_iter < 1)
    throw std::invalid_argument("newton_refine: max_iter must be positive");
  if (!(cfg.divergence_factor >= 1.0))
    throw std::invalid_argument("newton_refine: divergence_factor must be >= 1");

  const int d = p.degree();
  const double ax0 = std::abs(x0);
  if (!std::isfinite(ax0))
    throw std::domain_error("newton_refine: non-finite starting point");

  // Substitute x = 2^m y and divide by 2^E: g(y) = 2^-E f(2^m y) has
  // coefficients g_i = c_i 2^{i m - E}.  Both scalings are exact, and E is
  // chosen so the largest scaled coefficient has binary exponent 0; Horner
  // on g then stays far from the double range for the |y| ~ 1 iterates.
  const int m = (ax0 > 0.0) ? std::ilogb(ax0) : 0;
  std::int64_t E = std::numeric_limits<std::int64_t>::min();
  for (int i = 0; i <= d; ++i) {
    const Cplx& ci = p[i];
    double mag = std::max(std::fabs(ci.real()), std::fabs(ci.imag()));
    if (mag != 0.0)
      E = std::max(E, static_cast<std::int64_t>(std::ilogb(mag)) +
                          static_cast<std::int64_t>(i) * m);
  }

  std::vector<XComplex> g(static_cast<size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) {
    int s = clamp_exp(static_cast<std::int64_t>(i) * m - E);
    const Cplx& ci = p[i];
    g[static_cast<size_t>(i)] =
        XComplex(Cplx(std::ldexp(ci.real(), s), std::ldexp(ci.imag(), s)));
  }

  XComplex y(Cplx(std::ldexp(x0.real(), -m), std::ldexp(x0.imag(), -m)));
  const double div_log2 =
      std::log2(cfg.divergence_factor * (1.0 + ax0));
  double prev_step = std::numeric_limits<double>::infinity();

  for (int it = 1; it <= cfg.max_iter; ++it) {
    XComplex f = g[static_cast<size_t>(d)];
    XComplex df;
    for (int i = d - 1; i >= 0; --i) {
      df = df * y + f;
      f = f * y + g[static_cast<size_t>(i)];
    }
    if (is_zero(f))
      return {ldexp_exact(y, m), NewtonStatus::Converged, it};
    if (is_zero(df))
      return {ldexp_exact(y, m), NewtonStatus::Diverged, it};

    XComplex dy = f / df;
    y = y - dy;

    double ay = mag_hi(y);
    double rel = (ay > 0.0) ? mag_hi(dy) / ay : mag_hi(dy);
    if (rel <= cfg.rel_tol)
      return {ldexp_exact(y, m), NewtonStatus::Converged, it};
    // Rounding floor: once steps are below u and stop shrinking, further
    // sweeps only churn the last bits.
    if (rel <= kUnitRoundoff && rel >= prev_step)
      return {ldexp_exact(y, m), NewtonStatus::Converged, it};
    if (ay > 0.0 &&
        std::log2(ay) + static_cast<double>(m) > div_log2)
      return {ldexp_exact(y, m), NewtonStatus::Diverged, it};
    prev_step = rel;
  }
  return {ldexp_exact(y, m), NewtonStatus::MaxIter, cfg.max_iter};
}

}  // namespace polybe

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "polybe/scaled_real.hpp"
#include "polybe/xprec.hpp"

namespace polybe {

using Cplx = std::complex<double>;

enum class PrecisionMode { Working, Extended };

// Dense univariate polynomial c_0 + c_1 x + ... + c_d x^d over complex
// doubles, coefficients in ascending power order.
class Polynomial {
 public:
  // Degree >= 1 requires a nonzero leading coefficient.  The degree-0 zero
  // polynomial is permitted so repeated derivatives stay closed.
  explicit Polynomial(std::vector<Cplx> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Cplx>& coeffs() const { return coeffs_; }
  const Cplx& operator[](int i) const { return coeffs_[static_cast<size_t>(i)]; }

 private:
  std::vector<Cplx> coeffs_;
};

// Horner evaluation in working precision.
Cplx eval(const Polynomial& p, Cplx x);

// f(x) and f'(x) as normalized complex mantissa * 2^exponent, plus the
// largest term magnitude max_i |c_i x^i| in the same representation.  Immune
// to overflow/underflow of |x|^i for any representable x.
struct HornerScaled {
  Cplx f;
  std::int64_t f_exp = 0;
  Cplx df;
  std::int64_t df_exp = 0;
  double max_term = 0.0;
  std::int64_t max_term_exp = 0;

  bool f_is_zero() const { return f.real() == 0.0 && f.imag() == 0.0; }
  bool df_is_zero() const { return df.real() == 0.0 && df.imag() == 0.0; }

  // f/f' descaled to double; inf/NaN components when f' vanishes.
  Cplx newton_ratio() const;

  // |f(x)| / max_i |c_i x^i|, the relative residual; saturates at the double
  // range and is 0 for an exact root.
  double residual() const;
};
HornerScaled eval_scaled(const Polynomial& p, Cplx x);

// k-th derivative; k larger than the degree yields the zero polynomial.
Polynomial derivative(const Polynomial& p, int k = 1);

// Monic-style expansion lead * prod (x - roots[j]).  The leading coefficient
// is reproduced exactly in both modes; Extended expands in double-double and
// rounds once at the end.
Polynomial from_roots(Cplx lead, std::span<const Cplx> roots,
                      PrecisionMode precision = PrecisionMode::Working);

// Unrounded double-double expansion, ascending order, length roots.size()+1.
std::vector<XComplex> from_roots_x(const XComplex& lead,
                                   std::span<const XComplex> roots);

// Elementary symmetric functions sigma_0..sigma_n of non-negative values,
// overflow-safe.
std::vector<ScaledReal> elem_sym_abs(std::span<const double> values);

}  // namespace polybe

#include "polybe/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polybe {

namespace {

bool is_zero(const Cplx& z) { return z.real() == 0.0 && z.imag() == 0.0; }

// Complex mantissa with a detached binary exponent; the mantissa magnitude is
// renormalized into [2^-256, 2^256] so products and sums never leave the
// double range.
struct MC {
  Cplx m{0.0, 0.0};
  std::int64_t e = 0;
};

void renorm(MC& a) {
  double mag = std::max(std::fabs(a.m.real()), std::fabs(a.m.imag()));
  if (mag == 0.0) {
    a.e = 0;
    return;
  }
  int k = std::ilogb(mag);
  if (k > 256 || k < -256) {
    a.m = {std::ldexp(a.m.real(), -k), std::ldexp(a.m.imag(), -k)};
    a.e += k;
  }
}

MC mc_from(const Cplx& z) {
  MC a{z, 0};
  renorm(a);
  return a;
}

MC mc_add(const MC& x, const MC& y) {
  if (is_zero(y.m)) return x;
  if (is_zero(x.m)) return y;
  const MC& a = (x.e >= y.e) ? x : y;
  const MC& b = (x.e >= y.e) ? y : x;
  std::int64_t diff = a.e - b.e;
  if (diff > 1400) return a;  // b is below a's underflow horizon
  int s = -static_cast<int>(diff);
  MC r{a.m + Cplx(std::ldexp(b.m.real(), s), std::ldexp(b.m.imag(), s)), a.e};
  renorm(r);
  return r;
}

MC mc_mul(const MC& a, const MC& b) {
  MC r{a.m * b.m, a.e + b.e};
  renorm(r);
  return r;
}

int clamp_exp(std::int64_t e) {
  return static_cast<int>(std::clamp<std::int64_t>(e, -3000, 3000));
}

// mag * 2^e as double, saturating.
double descale(double mag, std::int64_t e) { return std::ldexp(mag, clamp_exp(e)); }

}  // namespace

Polynomial::Polynomial(std::vector<Cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty())
    throw std::invalid_argument("Polynomial: empty coefficient list");
  if (coeffs_.size() > 1 && is_zero(coeffs_.back()))
    throw std::invalid_argument("Polynomial: leading coefficient is zero");
}

Cplx eval(const Polynomial& p, Cplx x) {
  const auto& c = p.coeffs();
  Cplx acc = c.back();
  for (size_t i = c.size() - 1; i-- > 0;) acc = acc * x + c[i];
  return acc;
}

Cplx HornerScaled::newton_ratio() const {
  Cplx q = f / df;
  int e = clamp_exp(f_exp - df_exp);
  return {std::ldexp(q.real(), e), std::ldexp(q.imag(), e)};
}

double HornerScaled::residual() const {
  if (max_term == 0.0) return 0.0;
  return descale(std::abs(f) / max_term, f_exp - max_term_exp);
}

HornerScaled eval_scaled(const Polynomial& p, Cplx x) {
  const auto& c = p.coeffs();
  const int d = p.degree();

  MC xm = mc_from(x);
  MC f = mc_from(c.back());
  MC df;
  for (int i = d - 1; i >= 0; --i) {
    df = mc_add(mc_mul(df, xm), f);
    f = mc_add(mc_mul(f, xm), mc_from(c[static_cast<size_t>(i)]));
  }

  // Largest term magnitude, ascending powers.
  double pm = 1.0;          // |x|^i mantissa
  std::int64_t pe = 0;      // ... * 2^pe
  double mt = 0.0;
  std::int64_t mte = 0;
  double axm = std::abs(xm.m);
  for (int i = 0; i <= d; ++i) {
    double am = std::abs(c[static_cast<size_t>(i)]);
    if (am != 0.0) {
      int k = 0;
      am = std::frexp(am, &k);
      double tm = am * pm;
      std::int64_t te = pe + k;
      if (mt == 0.0 || te > mte + 2 ||
          (te >= mte - 2 && std::ldexp(tm, clamp_exp(te - mte)) > mt)) {
        mt = tm;
        mte = te;
      }
    }
    pm *= axm;
    pe += xm.e;
    int k = 0;
    pm = std::frexp(pm, &k);
    pe += k;
    if (pm == 0.0) break;  // x == 0: only i = 0 contributes
  }

  HornerScaled out;
  out.f = f.m;
  out.f_exp = f.e;
  out.df = df.m;
  out.df_exp = df.e;
  out.max_term = mt;
  out.max_term_exp = mte;
  return out;
}

Polynomial derivative(const Polynomial& p, int k) {
  if (k < 1) throw std::invalid_argument("derivative: order must be positive");
  const int d = p.degree();
  if (k > d) return Polynomial({Cplx(0.0, 0.0)});
  std::vector<Cplx> out(static_cast<size_t>(d - k) + 1);
  for (int i = k; i <= d; ++i) {
    double fac = 1.0;
    for (int j = 0; j < k; ++j) fac *= static_cast<double>(i - j);
    out[static_cast<size_t>(i - k)] = p[i] * fac;
  }
  return Polynomial(std::move(out));
}

Polynomial from_roots(Cplx lead, std::span<const Cplx> roots,
                      PrecisionMode precision) {
  if (is_zero(lead))
    throw std::invalid_argument("from_roots: leading coefficient is zero");
  if (precision == PrecisionMode::Extended) {
    std::vector<XComplex> xroots(roots.begin(), roots.end());
    std::vector<XComplex> xc = from_roots_x(XComplex(lead), xroots);
    std::vector<Cplx> c(xc.size());
    std::transform(xc.begin(), xc.end(), c.begin(),
                   [](const XComplex& z) { return z.to_std(); });
    return Polynomial(std::move(c));
  }
  // Ascending-order shift-multiply: appending root r maps the partial
  // product's coefficients via new[i] = old[i-1] - r * old[i].
  std::vector<Cplx> c{lead};
  for (const Cplx& r : roots) {
    c.push_back(c.back());
    for (size_t i = c.size() - 2; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = -r * c[0];
  }
  return Polynomial(std::move(c));
}

std::vector<XComplex> from_roots_x(const XComplex& lead,
                                   std::span<const XComplex> roots) {
  if (is_zero(lead))
    throw std::invalid_argument("from_roots_x: leading coefficient is zero");
  std::vector<XComplex> c{lead};
  for (const XComplex& r : roots) {
    c.push_back(c.back());
    for (size_t i = c.size() - 2; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = -(r * c[0]);
  }
  return c;
}

std::vector<ScaledReal> elem_sym_abs(std::span<const double> values) {
  for (double v : values)
    if (!(v >= 0.0) || std::isinf(v))
      throw std::domain_error("elem_sym_abs: values must be finite and non-negative");
  std::vector<ScaledReal> sig(values.size() + 1);
  sig[0] = ScaledReal::from(1.0);
  size_t t = 0;
  for (double v : values) {
    ++t;
    ScaledReal sv = ScaledReal::from(v);
    for (size_t k = t; k >= 1; --k) sig[k] = sig[k] + sig[k - 1] * sv;
  }
  return sig;
}

}  // namespace polybe

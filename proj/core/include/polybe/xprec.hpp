#pragma once

#include <cmath>
#include <complex>

namespace polybe {

inline constexpr double kUnitRoundoff = 1.1102230246251565e-16;   // 2^-53
inline constexpr double kUnitRoundoffSq = 1.2325951644078309e-32; // 2^-106

// Double-double real: the unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
// Promotion from double is exact; arithmetic is built on the error-free
// transformations below and carries relative error O(2^-106).
struct XReal {
  double hi = 0.0;
  double lo = 0.0;

  constexpr XReal() = default;
  constexpr XReal(double h) : hi(h) {}
  constexpr XReal(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

namespace xp {

inline XReal two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

// Requires |a| >= |b| or a == 0.
inline XReal fast_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline XReal two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace xp

inline XReal operator+(const XReal& a, const XReal& b) {
  XReal s = xp::two_sum(a.hi, b.hi);
  XReal t = xp::two_sum(a.lo, b.lo);
  XReal v = xp::fast_two_sum(s.hi, s.lo + t.hi);
  return xp::fast_two_sum(v.hi, v.lo + t.lo);
}

inline XReal operator-(const XReal& a) { return {-a.hi, -a.lo}; }
inline XReal operator-(const XReal& a, const XReal& b) { return a + (-b); }

inline XReal operator*(const XReal& a, const XReal& b) {
  XReal p = xp::two_prod(a.hi, b.hi);
  double t = std::fma(a.hi, b.lo, a.lo * b.hi);
  return xp::fast_two_sum(p.hi, p.lo + t);
}

inline XReal operator/(const XReal& a, const XReal& b) {
  double q1 = a.hi / b.hi;
  XReal r = a - b * XReal(q1);
  double q2 = (r.hi + r.lo) / (b.hi + b.lo);
  return xp::fast_two_sum(q1, q2);
}

inline bool operator==(const XReal& a, const XReal& b) {
  return a.hi == b.hi && a.lo == b.lo;
}
inline bool operator<(const XReal& a, const XReal& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const XReal& a, const XReal& b) { return b < a; }
inline bool operator<=(const XReal& a, const XReal& b) { return !(b < a); }
inline bool operator>=(const XReal& a, const XReal& b) { return !(a < b); }

inline bool is_zero(const XReal& a) { return a.hi == 0.0 && a.lo == 0.0; }

inline XReal abs(const XReal& a) {
  return (a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0)) ? -a : a;
}

inline XReal sqrt(const XReal& a) {
  if (is_zero(a)) return {};
  double s = std::sqrt(a.hi + a.lo);
  XReal s2 = xp::two_prod(s, s);
  double e = (((a.hi - s2.hi) - s2.lo) + a.lo) / (2.0 * s);
  return xp::fast_two_sum(s, e);
}

// Double-double complex with componentwise storage.
struct XComplex {
  XReal re;
  XReal im;

  constexpr XComplex() = default;
  constexpr XComplex(XReal r, XReal i) : re(r), im(i) {}
  constexpr XComplex(double r) : re(r) {}
  XComplex(const std::complex<double>& z) : re(z.real()), im(z.imag()) {}

  std::complex<double> to_std() const { return {re.to_double(), im.to_double()}; }
};

inline XComplex operator+(const XComplex& a, const XComplex& b) {
  return {a.re + b.re, a.im + b.im};
}
inline XComplex operator-(const XComplex& a, const XComplex& b) {
  return {a.re - b.re, a.im - b.im};
}
inline XComplex operator-(const XComplex& a) { return {-a.re, -a.im}; }

inline XComplex operator*(const XComplex& a, const XComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline XComplex operator*(const XComplex& a, const XReal& b) {
  return {a.re * b, a.im * b};
}

inline XComplex conj(const XComplex& a) { return {a.re, -a.im}; }

inline XReal norm(const XComplex& a) { return a.re * a.re + a.im * a.im; }
inline XReal abs(const XComplex& a) { return sqrt(norm(a)); }

inline XComplex operator/(const XComplex& a, const XComplex& b) {
  XReal n = norm(b);
  XComplex t = a * conj(b);
  return {t.re / n, t.im / n};
}

inline bool is_zero(const XComplex& a) { return is_zero(a.re) && is_zero(a.im); }

// Aliases used at API boundaries.
inline XReal x_add(const XReal& a, const XReal& b) { return a + b; }
inline XReal x_mul(const XReal& a, const XReal& b) { return a * b; }
inline XReal x_div(const XReal& a, const XReal& b) { return a / b; }
inline XComplex x_add(const XComplex& a, const XComplex& b) { return a + b; }
inline XComplex x_mul(const XComplex& a, const XComplex& b) { return a * b; }
inline XComplex x_div(const XComplex& a, const XComplex& b) { return a / b; }
inline XReal x_abs(const XComplex& a) { return abs(a); }

}  // namespace polybe

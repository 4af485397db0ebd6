#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace polybe {

// Non-negative magnitude stored as mantissa * 2^exponent with the mantissa
// normalized to [1, 2) (or exactly 0).  The exponent is a separate 64-bit
// integer, so products like sigma_k of widely spread moduli stay
// representable long after a plain double would have over- or underflowed.
class ScaledReal {
 public:
  ScaledReal() = default;

  static ScaledReal from(double v) {
    if (!(v >= 0.0))
      throw std::domain_error("ScaledReal: value must be non-negative");
    ScaledReal s;
    if (v == 0.0) return s;
    if (std::isinf(v))
      throw std::domain_error("ScaledReal: value must be finite");
    int e = 0;
    s.mant_ = 2.0 * std::frexp(v, &e);  // frexp lands in [0.5, 1)
    s.exp_ = e - 1;
    return s;
  }

  bool is_zero() const { return mant_ == 0.0; }
  double mantissa() const { return mant_; }
  std::int64_t exponent() const { return exp_; }

  // Natural log; -inf for zero.
  double log() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(mant_) + static_cast<double>(exp_) * kLn2;
  }

  // Nearest double, saturating to +inf above the range, flushing to 0 below.
  double to_double() const {
    if (is_zero()) return 0.0;
    if (exp_ > 1024) return std::numeric_limits<double>::infinity();
    if (exp_ < -1200) return 0.0;
    return std::ldexp(mant_, static_cast<int>(exp_));
  }

  friend ScaledReal operator+(const ScaledReal& a, const ScaledReal& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const ScaledReal& hi = (a.exp_ >= b.exp_) ? a : b;
    const ScaledReal& lo = (a.exp_ >= b.exp_) ? b : a;
    std::int64_t diff = hi.exp_ - lo.exp_;
    if (diff > 1074) return hi;  // addend entirely below hi's last bit
    ScaledReal s;
    s.mant_ = hi.mant_ + std::ldexp(lo.mant_, -static_cast<int>(diff));
    s.exp_ = hi.exp_;
    s.normalize();
    return s;
  }

  friend ScaledReal operator*(const ScaledReal& a, const ScaledReal& b) {
    if (a.is_zero() || b.is_zero()) return {};
    ScaledReal s;
    s.mant_ = a.mant_ * b.mant_;  // in [1, 4)
    s.exp_ = a.exp_ + b.exp_;
    s.normalize();
    return s;
  }

  friend bool operator<(const ScaledReal& a, const ScaledReal& b) {
    if (a.is_zero()) return !b.is_zero();
    if (b.is_zero()) return false;
    if (a.exp_ != b.exp_) return a.exp_ < b.exp_;
    return a.mant_ < b.mant_;
  }
  friend bool operator>(const ScaledReal& a, const ScaledReal& b) { return b < a; }
  friend bool operator==(const ScaledReal& a, const ScaledReal& b) {
    return a.mant_ == b.mant_ && (a.is_zero() || a.exp_ == b.exp_);
  }

 private:
  static constexpr double kLn2 = 0.6931471805599453;

  void normalize() {
    if (mant_ == 0.0) { exp_ = 0; return; }
    int e = 0;
    mant_ = 2.0 * std::frexp(mant_, &e);
    exp_ += e - 1;
  }

  double mant_ = 0.0;
  std::int64_t exp_ = 0;
};

}  // namespace polybe

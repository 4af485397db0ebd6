#include "polybe/tropical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace polybe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_zero(const Cplx& z) { return z.real() == 0.0 && z.imag() == 0.0; }

}  // namespace

std::vector<double> valuations(const Polynomial& p) {
  const auto& c = p.coeffs();
  if (is_zero(c.front()) || is_zero(c.back()))
    throw std::domain_error(
        "valuations: constant and leading coefficients must be nonzero "
        "(deflate exact zero roots first)");
  std::vector<double> v(c.size());
  for (size_t i = 0; i < c.size(); ++i) {
    double a = std::abs(c[i]);
    v[i] = (a == 0.0) ? -kInf : std::log(a);
  }
  return v;
}

std::vector<int> upper_hull(std::span<const double> v) {
  if (v.empty() || std::isinf(v.front()) || std::isinf(v.back()))
    throw std::domain_error("upper_hull: endpoints must be finite");
  std::vector<int> h;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == -kInf) continue;
    // Pop b whenever it lies on or below the chord from a to i: strict
    // left turns only, so edge-interior points are never vertices.
    while (h.size() >= 2) {
      int a = h[h.size() - 2];
      int b = h.back();
      double cross = (v[static_cast<size_t>(b)] - v[static_cast<size_t>(a)]) *
                         static_cast<double>(static_cast<int>(i) - a) -
                     (v[i] - v[static_cast<size_t>(a)]) *
                         static_cast<double>(b - a);
      if (cross <= 0.0)
        h.pop_back();
      else
        break;
    }
    h.push_back(static_cast<int>(i));
  }
  return h;
}

TropicalData tropical_roots(const Polynomial& p) {
  TropicalData t;
  t.valuations = valuations(p);
  t.hull_vertices = upper_hull(t.valuations);
  const int d = p.degree();
  t.trop_roots.resize(static_cast<size_t>(d));
  for (size_t l = 1; l < t.hull_vertices.size(); ++l) {
    int a = t.hull_vertices[l - 1];
    int b = t.hull_vertices[l];
    int m = b - a;
    double tau = (t.valuations[static_cast<size_t>(a)] -
                  t.valuations[static_cast<size_t>(b)]) /
                 static_cast<double>(m);
    t.subdivision.emplace_back(a, b);
    t.multiplicities.push_back(m);
    for (int i = a; i < b; ++i) t.trop_roots[static_cast<size_t>(i)] = tau;
  }
  t.r = r_constants(p, t);
  return t;
}

std::vector<double> r_constants(const Polynomial& p, const TropicalData& t) {
  const int d = p.degree();
  std::vector<double> r(static_cast<size_t>(d) + 1, 1.0);
  for (size_t l = 1; l < t.hull_vertices.size(); ++l) {
    int a = t.hull_vertices[l - 1];
    int b = t.hull_vertices[l];
    double tau = t.trop_roots[static_cast<size_t>(a)];
    for (int i = a + 1; i < b; ++i) {
      // Hull height above i, anchored at the right vertex of the cell.
      double hull_i =
          t.valuations[static_cast<size_t>(b)] + static_cast<double>(b - i) * tau;
      double vi = t.valuations[static_cast<size_t>(i)];
      double ri = is_zero(p[i]) ? std::exp(hull_i) : std::exp(hull_i - vi);
      r[static_cast<size_t>(i)] = std::max(1.0, ri);
    }
  }
  return r;
}

std::vector<double> assumption_w(const TropicalData& t,
                                 std::span<const double> moduli) {
  const size_t d = t.trop_roots.size();
  if (moduli.size() != d)
    throw std::invalid_argument("assumption_w: need one modulus per tropical root");
  for (double m : moduli)
    if (!(m > 0.0) || std::isinf(m))
      throw std::domain_error("assumption_w: moduli must be finite and positive");

  std::vector<double> sorted(moduli.begin(), moduli.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<ScaledReal> sig = elem_sym_abs(sorted);

  // suffix[t] = sum of the t largest tropical roots.
  std::vector<double> suffix(d + 1, 0.0);
  for (size_t k = 1; k <= d; ++k)
    suffix[k] = suffix[k - 1] + t.trop_roots[d - k];

  std::vector<double> w(d);
  for (size_t i = 0; i < d; ++i)
    w[i] = sig[d - i].log() - suffix[d - i];
  return w;
}

}  // namespace polybe

#include "polybe/backward_error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polybe/tropical.hpp"

namespace polybe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool zero(const Cplx& z) { return z.real() == 0.0 && z.imag() == 0.0; }

void check_roots(const Polynomial& p, const RootSet& x_hat) {
  if (x_hat.roots.size() != static_cast<size_t>(p.degree()))
    throw std::domain_error("root set size does not match the degree");
  for (const Cplx& x : x_hat.roots)
    if (zero(x)) throw std::domain_error("root sets must not contain zero");
}

std::vector<XComplex> promote(std::span<const Cplx> z) {
  return {z.begin(), z.end()};
}

// Coefficients of lead * prod (x - roots_j) in double-double.
std::vector<XComplex> reconstruct(const Polynomial& p,
                                  std::span<const XComplex> roots) {
  return from_roots_x(XComplex(p[p.degree()]), roots);
}

double xabs(const XComplex& z) { return abs(z).to_double(); }

// Elementwise reconstruction error over i = 0..d-1: relative against |c_i|
// where c_i != 0, absolute where c_i = 0.
double coeff_certificate(const Polynomial& p,
                         std::span<const XComplex> c_tilde) {
  double worst = 0.0;
  for (int i = 0; i < p.degree(); ++i) {
    const Cplx& ci = p[i];
    double err = xabs(c_tilde[static_cast<size_t>(i)] - XComplex(ci));
    worst = std::max(worst, zero(ci) ? err : err / std::abs(ci));
  }
  return worst;
}

// Largest |a - b| over matched pairs relative to |b|, pairs formed greedily
// in modulus order; flags pairs of witnesses that coincide while their
// partners do not.
struct Pairing {
  double forward = 0.0;
  bool collision = false;
};

Pairing pair_roots(std::span<const Cplx> x_hat,
                   std::span<const XComplex> x_tilde) {
  std::vector<Cplx> tilde_d(x_tilde.size());
  for (size_t j = 0; j < x_tilde.size(); ++j) tilde_d[j] = x_tilde[j].to_std();

  std::vector<size_t> order(x_tilde.size());
  for (size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    double ma = std::abs(tilde_d[a]);
    double mb = std::abs(tilde_d[b]);
    if (ma != mb) return ma < mb;
    return std::arg(tilde_d[a]) < std::arg(tilde_d[b]);
  });

  Pairing out;
  std::vector<bool> used(x_hat.size(), false);
  std::vector<size_t> partner(x_tilde.size());
  for (size_t j : order) {
    size_t best = x_hat.size();
    double best_d = kInf;
    for (size_t k = 0; k < x_hat.size(); ++k) {
      if (used[k]) continue;
      double dist = std::abs(x_hat[k] - tilde_d[j]);
      if (dist < best_d) {
        best_d = dist;
        best = k;
      }
    }
    used[best] = true;
    partner[j] = best;
    double denom = xabs(x_tilde[j]);
    double move = xabs(x_tilde[j] - XComplex(x_hat[best]));
    out.forward = std::max(out.forward, (denom > 0.0) ? move / denom : move);
  }

  for (size_t j = 0; j < x_tilde.size(); ++j)
    for (size_t k = j + 1; k < x_tilde.size(); ++k) {
      double scale_t = std::max(std::abs(tilde_d[j]), std::abs(tilde_d[k]));
      double scale_h = std::max(std::abs(x_hat[partner[j]]),
                                std::abs(x_hat[partner[k]]));
      bool tilde_close = std::abs(tilde_d[j] - tilde_d[k]) < 1e-20 * scale_t;
      bool hat_close =
          std::abs(x_hat[partner[j]] - x_hat[partner[k]]) < 1e-20 * scale_h;
      if (tilde_close && !hat_close) out.collision = true;
    }
  return out;
}

}  // namespace

double nbe(std::span<const Cplx> c, std::span<const Cplx> c_hat) {
  if (c.size() != c_hat.size())
    throw std::domain_error("nbe: coefficient lists differ in length");
  if (c.empty()) throw std::domain_error("nbe: empty coefficient list");
  double scale = 0.0;
  for (const Cplx& ci : c) scale = std::max(scale, std::abs(ci));
  if (scale == 0.0) throw std::domain_error("nbe: zero polynomial");
  double num = 0.0;
  double den = 0.0;
  for (size_t i = 0; i < c.size(); ++i) {
    double a = std::abs(c[i]) / scale;
    den += a * a;
    if (i + 1 < c.size()) {
      double e = std::abs(c[i] - c_hat[i]) / scale;
      num += e * e;
    }
  }
  return std::sqrt(num / den);
}

double ebe(std::span<const Cplx> c, std::span<const Cplx> c_hat) {
  if (c.size() != c_hat.size())
    throw std::domain_error("ebe: coefficient lists differ in length");
  if (c.empty()) throw std::domain_error("ebe: empty coefficient list");
  double worst = 0.0;
  for (size_t i = 0; i + 1 < c.size(); ++i) {
    if (zero(c[i])) {
      if (!zero(c_hat[i])) return kInf;
    } else {
      worst = std::max(worst, std::abs(c[i] - c_hat[i]) / std::abs(c[i]));
    }
  }
  return worst;
}

TbeResult tbe(const Polynomial& p, const RootSet& x_hat) {
  check_roots(p, x_hat);
  TropicalData t = tropical_roots(p);
  std::vector<XComplex> c_hat = reconstruct(p, promote(x_hat.roots));

  TbeResult out;
  out.per_coeff.reserve(static_cast<size_t>(p.degree()));
  for (int i = 0; i < p.degree(); ++i) {
    const Cplx& ci = p[i];
    double ri = t.r[static_cast<size_t>(i)];
    CoeffError e;
    e.index = i;
    e.abs_err = xabs(c_hat[static_cast<size_t>(i)] - XComplex(ci));
    if (zero(ci)) {
      double a_hat = xabs(c_hat[static_cast<size_t>(i)]);
      e.rel_err = (a_hat > 0.0) ? kInf : 0.0;
      e.r_scaled = a_hat / ri;
    } else {
      double a = std::abs(ci);
      e.rel_err = e.abs_err / a;
      e.r_scaled = e.abs_err / (ri * a);
    }
    out.value = std::max(out.value, e.r_scaled);
    out.per_coeff.push_back(e);
  }
  return out;
}

EmbeResult embe_upper_bound(const Polynomial& p, const RootSet& x_hat,
                            const NewtonConfig& cfg) {
  check_roots(p, x_hat);
  tropical_roots(p);  // enforce the same preconditions as tbe

  EmbeResult out;
  std::vector<XComplex> x_tilde;
  x_tilde.reserve(x_hat.roots.size());
  bool diverged = false;
  for (const Cplx& xj : x_hat.roots) {
    NewtonResult nr = newton_refine(p, xj, cfg);
    diverged = diverged || nr.status == NewtonStatus::Diverged;
    RootRefinement ref;
    ref.x_hat = xj;
    ref.x_tilde = nr.root.to_std();
    double denom = xabs(nr.root);
    double move = xabs(nr.root - XComplex(xj));
    ref.rel_move = (denom > 0.0) ? move / denom : move;
    ref.status = nr.status;
    out.refinement.push_back(ref);
    x_tilde.push_back(nr.root);
  }

  out.refined.roots.resize(x_tilde.size());
  for (size_t j = 0; j < x_tilde.size(); ++j)
    out.refined.roots[j] = x_tilde[j].to_std();
  out.refined.provenance = Provenance::Refined;

  for (size_t j = 0; j < x_tilde.size(); ++j)
    for (size_t k = j + 1; k < x_tilde.size(); ++k) {
      double scale_t =
          std::max(xabs(x_tilde[j]), xabs(x_tilde[k]));
      double scale_h = std::max(std::abs(x_hat.roots[j]), std::abs(x_hat.roots[k]));
      bool tilde_close = xabs(x_tilde[j] - x_tilde[k]) < 1e-20 * scale_t;
      bool hat_close = std::abs(x_hat.roots[j] - x_hat.roots[k]) < 1e-20 * scale_h;
      if (tilde_close && !hat_close) out.pairing_collision = true;
    }

  if (diverged) return out;  // no witness; refinement table still reported

  for (const RootRefinement& ref : out.refinement)
    out.forward_part = std::max(out.forward_part, ref.rel_move);
  out.coeff_part = coeff_certificate(p, reconstruct(p, x_tilde));
  out.bound = std::max(out.forward_part, out.coeff_part);
  return out;
}

QuadraticWitness quadratic_witness(const Polynomial& p, const RootSet& x_hat) {
  if (p.degree() != 2)
    throw std::invalid_argument("quadratic_witness: degree must be 2");
  if (zero(p[0]))
    throw std::domain_error("quadratic_witness: constant coefficient is zero");
  check_roots(p, x_hat);

  const Cplx a = p[2];
  const Cplx b = p[1];
  const Cplx c = p[0];

  Cplx x1 = x_hat.roots[0];
  Cplx x2 = x_hat.roots[1];
  if (std::abs(x1) > std::abs(x2)) std::swap(x1, x2);

  double r_b;
  if (zero(b)) {
    r_b = std::max(1.0, std::sqrt(std::abs(a)) * std::sqrt(std::abs(c)));
  } else {
    r_b = std::max(1.0, std::sqrt(std::abs(a)) * std::sqrt(std::abs(c)) /
                            std::abs(b));
  }

  QuadraticWitness out;
  out.r_b = r_b;

  const XComplex A(a), B(b), C(c);
  const XComplex X1(x1), X2(x2);
  const XComplex S = X1 + X2;

  if (r_b == 1.0) {
    // b sits on the hull: the plain reconstruction is already the witness.
    out.x_tilde = {{x1, x2}, Provenance::Refined};
    XComplex b_hat = -(A * S);
    XComplex c_hat = A * X1 * X2;
    double fwd = 0.0;
    double db = zero(b) ? xabs(b_hat) : xabs(b_hat - B) / std::abs(b);
    double dc = xabs(c_hat - C) / std::abs(c);
    out.b_rel_err = db;
    out.epsilon = std::max({fwd, db, dc});
    return out;
  }

  // Move the smaller root by t so the reconstructed middle coefficient
  // matches b exactly: -a(x1 + t + x2) = b.  The sum is re-expanded around
  // the already-cancelled S, which keeps the certificate at the 2^-106 level
  // even when |t| ~ |S|.
  XComplex b_hat = -(A * S);
  XComplex t = (zero(b) ? b_hat : b_hat - B) / A;
  XComplex X1t = X1 + t;
  if (is_zero(X1t))
    throw WitnessFailure("quadratic_witness: corrected root collapsed to zero");

  XComplex b_tilde = -(A * (S + t));
  XComplex c_tilde = A * X1t * X2;

  double fwd = xabs(t) / xabs(X1t);
  double db = zero(b) ? xabs(b_tilde) : xabs(b_tilde - B) / std::abs(b);
  double dc = xabs(c_tilde - C) / std::abs(c);

  out.x_tilde = {{X1t.to_std(), x2}, Provenance::Refined};
  out.b_rel_err = db;
  out.epsilon = std::max({fwd, db, dc});
  return out;
}

GeneralWitness general_witness(const Polynomial& p, const RootSet& x_hat,
                               double r_cap) {
  if (!(r_cap >= 1.0))
    throw std::invalid_argument("general_witness: r_cap must be at least 1");
  check_roots(p, x_hat);
  TropicalData t = tropical_roots(p);
  std::vector<XComplex> c_hat = reconstruct(p, promote(x_hat.roots));

  // Surgery: adopt the computed coefficient wherever the tropical scale says
  // a relative perturbation of that size is benign, keep the original
  // elsewhere.
  const int d = p.degree();
  std::vector<Cplx> ct(static_cast<size_t>(d) + 1);
  ct[static_cast<size_t>(d)] = p[d];
  for (int i = 0; i < d; ++i)
    ct[static_cast<size_t>(i)] = (t.r[static_cast<size_t>(i)] <= r_cap)
                                     ? c_hat[static_cast<size_t>(i)].to_std()
                                     : p[i];
  Polynomial tilde_f(std::move(ct));

  RootSet raw = find_roots(tilde_f);  // AberthFailure propagates diagnostics
  std::vector<XComplex> x_tilde;
  x_tilde.reserve(raw.roots.size());
  for (const Cplx& xj : raw.roots) {
    NewtonResult nr = newton_refine(tilde_f, xj);
    x_tilde.push_back(nr.status == NewtonStatus::Diverged ? XComplex(xj)
                                                          : nr.root);
  }

  Pairing pr = pair_roots(x_hat.roots, x_tilde);

  // Coefficient part: the surgery's own backward distance from f.
  double coef = 0.0;
  for (int i = 0; i < d; ++i) {
    const Cplx& ci = p[i];
    double err = xabs(XComplex(tilde_f[i]) - XComplex(ci));
    coef = std::max(coef, zero(ci) ? err : err / std::abs(ci));
  }

  GeneralWitness out{std::move(tilde_f), RootSet{}, 0.0, false};
  out.x_tilde.roots.resize(x_tilde.size());
  for (size_t j = 0; j < x_tilde.size(); ++j)
    out.x_tilde.roots[j] = x_tilde[j].to_std();
  out.x_tilde.provenance = Provenance::Computed;
  out.epsilon = std::max(pr.forward, coef);
  out.pairing_collision = pr.collision;
  return out;
}

Cplx perturbation_estimate(const Polynomial& p, Cplx x_j,
                           std::span<const Cplx> delta_coeffs) {
  auto horner_pair = [](std::span<const Cplx> c,
                        const XComplex& x) -> std::pair<XComplex, XComplex> {
    XComplex f, df;
    if (c.empty()) return {f, df};
    f = XComplex(c.back());
    for (size_t i = c.size() - 1; i-- > 0;) {
      df = df * x + f;
      f = f * x + XComplex(c[i]);
    }
    return {f, df};
  };

  XComplex x(x_j);
  auto [f, df] = horner_pair(p.coeffs(), x);
  auto [g, dg] = horner_pair(delta_coeffs, x);
  (void)f;
  XComplex denom = df + dg;
  if (is_zero(denom))
    throw std::domain_error("perturbation_estimate: stationary denominator");
  return (-(g / denom)).to_std();
}

ErrorReport error_report(const Polynomial& p, const RootSet& x_hat,
                         bool with_embe, const NewtonConfig& cfg) {
  ErrorReport rep;
  TbeResult tb = tbe(p, x_hat);
  rep.tbe = tb.value;
  rep.per_coeff = std::move(tb.per_coeff);

  // Normwise and elementwise measures from the same extended-precision
  // coefficient differences.
  double scale = 0.0;
  for (const Cplx& ci : p.coeffs()) scale = std::max(scale, std::abs(ci));
  double num = 0.0;
  double den = 0.0;
  for (const Cplx& ci : p.coeffs()) {
    double a = std::abs(ci) / scale;
    den += a * a;
  }
  for (const CoeffError& e : rep.per_coeff) {
    double a = e.abs_err / scale;
    num += a * a;
    rep.ebe = std::max(rep.ebe, e.rel_err);
  }
  rep.nbe = std::sqrt(num / den);

  if (with_embe) {
    EmbeResult em = embe_upper_bound(p, x_hat, cfg);
    rep.embe_ub = em.bound;
    rep.refinement = std::move(em.refinement);
    rep.pairing_collision = em.pairing_collision;
  }
  return rep;
}

}  // namespace polybe

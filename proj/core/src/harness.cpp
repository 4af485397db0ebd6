#include "polybe/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "polybe/tropical.hpp"

namespace polybe {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Polynomial trial_poly(const ExperimentConfig& cfg, std::uint64_t trial) {
  if (cfg.poly_source) return cfg.poly_source(trial);
  TrialStream stream(cfg.seed, trial);
  return random_poly(cfg.d, cfg.k, stream);
}

void check_config(const ExperimentConfig& cfg) {
  if (cfg.d < 1) throw std::invalid_argument("experiment: d must be positive");
  if (!(cfg.k >= 0.0))
    throw std::invalid_argument("experiment: k must be non-negative");
  if (cfg.trials < 0)
    throw std::invalid_argument("experiment: trials must be non-negative");
}

}  // namespace

TrialStream::TrialStream(std::uint64_t seed, std::uint64_t trial)
    : key_(mix64(seed + kGamma * (trial + 1))) {}

std::uint64_t TrialStream::next_u64() { return mix64(key_ + kGamma * ++counter_); }

double TrialStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

Polynomial random_poly(int d, double k, TrialStream& stream) {
  if (d < 1) throw std::invalid_argument("random_poly: d must be positive");
  if (!(k >= 0.0)) throw std::invalid_argument("random_poly: k must be non-negative");
  std::vector<Cplx> c(static_cast<size_t>(d) + 1);
  for (size_t i = 0; i < c.size(); ++i) {
    double e = -k + 2.0 * k * stream.next_unit();
    double phi = 2.0 * std::numbers::pi * stream.next_unit();
    c[i] = std::polar(std::pow(10.0, e), phi);
  }
  return Polynomial(std::move(c));
}

Exp1Result experiment1(const ExperimentConfig& cfg) {
  check_config(cfg);
  Exp1Result res;
  res.records.reserve(static_cast<size_t>(cfg.trials));
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Polynomial p = trial_poly(cfg, static_cast<std::uint64_t>(trial));
    RootSet roots{{}, Provenance::Computed};
    try {
      roots = find_roots(p, cfg.aberth);
    } catch (const AberthFailure& fail) {
      // Score the best iterates honestly rather than dropping the trial.
      roots.roots = fail.best;
      ++res.rootfind_failed;
    }
    TbeResult tb = tbe(p, roots);
    EmbeResult em = embe_upper_bound(p, roots, cfg.newton);
    if (!em.bound) ++res.unavailable;

    Exp1Record rec;
    rec.trial = static_cast<std::uint64_t>(trial);
    rec.seed = cfg.seed;
    rec.d = cfg.d;
    rec.k = cfg.k;
    rec.tbe = tb.value;
    rec.embe_ub = em.bound;
    rec.collision = em.pairing_collision;
    res.records.push_back(rec);
  }
  return res;
}

Exp2Result experiment2(const ExperimentConfig& cfg) {
  check_config(cfg);
  Exp2Result res;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Polynomial p = trial_poly(cfg, static_cast<std::uint64_t>(trial));
    TropicalData t = tropical_roots(p);
    std::vector<double> moduli;
    bool ok = true;
    try {
      RootSet roots = find_roots(p, cfg.aberth);
      moduli.reserve(roots.roots.size());
      for (const Cplx& xj : roots.roots) {
        NewtonResult nr = newton_refine(p, xj, cfg.newton);
        if (nr.status == NewtonStatus::Diverged) {
          ok = false;
          break;
        }
        moduli.push_back(abs(nr.root).to_double());
      }
    } catch (const AberthFailure&) {
      ok = false;
    }
    if (!ok) {
      res.skipped_trials.push_back(static_cast<std::uint64_t>(trial));
      continue;
    }
    std::sort(moduli.begin(), moduli.end());
    for (int i = 0; i < cfg.d; ++i) {
      Exp2Record rec;
      rec.trial = static_cast<std::uint64_t>(trial);
      rec.root_index = i;
      rec.ratio =
          std::exp(t.trop_roots[static_cast<size_t>(i)]) / moduli[static_cast<size_t>(i)];
      res.records.push_back(rec);
    }
  }
  return res;
}

void write_exp1_csv(const Exp1Result& res, std::ostream& os) {
  os << "trial,seed,d,k,tbe,embe_ub,embe_status,collision\n";
  for (const Exp1Record& r : res.records) {
    os << r.trial << ',' << r.seed << ',' << r.d << ',' << fmt17(r.k) << ','
       << fmt17(r.tbe) << ',';
    if (r.embe_ub)
      os << fmt17(*r.embe_ub) << ",ok,";
    else
      os << "nan,unavailable,";
    os << (r.collision ? 1 : 0) << '\n';
  }
}

void write_exp2_csv(const Exp2Result& res, std::ostream& os) {
  os << "trial,root_index,exp_tau_over_abs_root\n";
  for (const Exp2Record& r : res.records)
    os << r.trial << ',' << r.root_index << ',' << fmt17(r.ratio) << '\n';
}

std::string exp1_plot_script() {
  return R"(# Tropical backward error vs certified witness bound, one point per trial.
set datafile separator ","
set logscale xy
set xlabel "TBE"
set ylabel "EMBE upper bound"
set key top left
set grid
plot "exp1.csv" every ::1 using 5:6 with points pt 7 ps 0.5 lc rgb "#1f6feb" title "trials", \
     x with lines dt 2 lc rgb "gray40" title "y = x"
)";
}

std::string exp2_plot_script() {
  return R"(# Distribution of exp(tau_i)/|x_i| over all trials and root indices.
set datafile separator ","
binwidth = 0.02
bin(v) = binwidth * (floor(v / binwidth) + 0.5)
set boxwidth binwidth
set style fill solid 0.6
set xlabel "exp(tau_i) / |x_i|"
set ylabel "count"
set xrange [0:3]
set grid
plot "exp2.csv" every ::1 using (bin($3)):(1.0) smooth freq with boxes lc rgb "#1f6feb" notitle
)";
}

}  // namespace polybe

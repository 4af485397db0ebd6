#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polybe/backward_error.hpp"
#include "polybe/newton.hpp"
#include "polybe/polynomial.hpp"
#include "polybe/rootfind.hpp"

namespace polybe {

// Counter-based per-trial random stream: draw k of trial t under seed s is a
// pure function of (s, t, k), so trials are reproducible independently of
// execution order.
class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next_u64();
  double next_unit();  // uniform in [0, 1), 53 random bits

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Random coefficients c_i = 10^{e_i} e^{i phi_i}, e_i uniform in [-k, k],
// phi_i uniform in [0, 2pi); for each i = 0..d the exponent is drawn before
// the phase.
Polynomial random_poly(int d, double k, TrialStream& stream);

struct ExperimentConfig {
  int d = 20;
  double k = 8.0;
  int trials = 200;
  std::uint64_t seed = 42;
  NewtonConfig newton;
  AberthConfig aberth;
  // Test hook: when set, supplies the polynomial of each trial instead of
  // random_poly.
  std::function<Polynomial(std::uint64_t trial)> poly_source;
};

struct Exp1Record {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  int d = 0;
  double k = 0.0;
  double tbe = 0.0;
  std::optional<double> embe_ub;  // empty -> "unavailable"
  bool collision = false;
};

struct Exp1Result {
  std::vector<Exp1Record> records;  // exactly cfg.trials rows
  int unavailable = 0;              // trials whose refinement diverged
  int rootfind_failed = 0;          // trials served from best iterates
};

struct Exp2Record {
  std::uint64_t trial = 0;
  int root_index = 0;  // 0-based, roots sorted by increasing modulus
  double ratio = 0.0;  // exp(tau_i) / |x_i|
};

struct Exp2Result {
  std::vector<Exp2Record> records;
  std::vector<std::uint64_t> skipped_trials;  // rootfinding failures
};

// Tropical backward error of the computed roots versus the certified
// witness bound, one polynomial per trial.
Exp1Result experiment1(const ExperimentConfig& cfg);

// Quality of tropical roots as modulus predictors: exp(tau_i)/|x_i| for
// refined roots paired by sorted modulus.
Exp2Result experiment2(const ExperimentConfig& cfg);

void write_exp1_csv(const Exp1Result& res, std::ostream& os);
void write_exp2_csv(const Exp2Result& res, std::ostream& os);

// gnuplot scripts reading the CSVs above from the working directory.
std::string exp1_plot_script();
std::string exp2_plot_script();

}  // namespace polybe

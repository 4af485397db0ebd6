// polybe: tropical data, rootfinding, and backward-error reports for
// complex univariate polynomials.
//
// Exit codes: 0 success; 1 command-line or file parse/IO error; 2 numerical
// failure (rootfinder or witness construction); 3 precondition violation.
// Errors go to stderr only.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "polybe/backward_error.hpp"
#include "polybe/harness.hpp"
#include "polybe/newton.hpp"
#include "polybe/poly_io.hpp"
#include "polybe/polynomial.hpp"
#include "polybe/rootfind.hpp"
#include "polybe/tropical.hpp"

namespace fs = std::filesystem;
using namespace polybe;

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* status_name(NewtonStatus s) {
  switch (s) {
    case NewtonStatus::Converged: return "converged";
    case NewtonStatus::MaxIter: return "max-iter";
    case NewtonStatus::Diverged: return "diverged";
  }
  return "?";
}

struct TropView {
  TropicalData t;
  std::vector<int> cell_of_tau;  // cell index per tau position 0..d-1
  std::vector<bool> is_vertex;   // per coefficient index 0..d
};

TropView trop_view(const Polynomial& p) {
  TropView view;
  view.t = tropical_roots(p);
  const int d = p.degree();
  view.cell_of_tau.assign(static_cast<size_t>(d), 0);
  view.is_vertex.assign(static_cast<size_t>(d) + 1, false);
  for (int v : view.t.hull_vertices) view.is_vertex[static_cast<size_t>(v)] = true;
  for (size_t l = 0; l < view.t.subdivision.size(); ++l)
    for (int i = view.t.subdivision[l].first; i < view.t.subdivision[l].second; ++i)
      view.cell_of_tau[static_cast<size_t>(i)] = static_cast<int>(l);
  return view;
}

int cmd_trop(const std::string& poly_path, bool csv) {
  Polynomial p = read_polynomial(poly_path);
  TropView view = trop_view(p);
  const TropicalData& t = view.t;
  const int d = p.degree();

  if (csv) {
    std::cout << "i,abs_coeff,valuation,is_vertex,tau,multiplicity,r\n";
    for (int i = 0; i <= d; ++i) {
      std::cout << i << ',' << g17(std::abs(p[i])) << ','
                << g17(t.valuations[static_cast<size_t>(i)]) << ','
                << (view.is_vertex[static_cast<size_t>(i)] ? 1 : 0) << ',';
      if (i >= 1) {
        int l = view.cell_of_tau[static_cast<size_t>(i - 1)];
        std::cout << g17(t.trop_roots[static_cast<size_t>(i - 1)]) << ','
                  << t.multiplicities[static_cast<size_t>(l)] << ',';
      } else {
        std::cout << ",,";
      }
      std::cout << g17(t.r[static_cast<size_t>(i)]) << '\n';
    }
    return 0;
  }

  std::printf("degree %d, %zu subdivision cell(s)\n\n", d, t.subdivision.size());
  std::printf("%4s  %14s  %14s  %6s  %14s  %3s  %12s\n", "i", "|c_i|", "v_i",
              "vertex", "tau_i", "m", "r_i");
  for (int i = 0; i <= d; ++i) {
    std::printf("%4d  %14.6g  %14.6g  %6s", i, std::abs(p[i]),
                t.valuations[static_cast<size_t>(i)],
                view.is_vertex[static_cast<size_t>(i)] ? "*" : "");
    if (i >= 1) {
      int l = view.cell_of_tau[static_cast<size_t>(i - 1)];
      std::printf("  %14.6g  %3d", t.trop_roots[static_cast<size_t>(i - 1)],
                  t.multiplicities[static_cast<size_t>(l)]);
    } else {
      std::printf("  %14s  %3s", "", "");
    }
    std::printf("  %12.6g\n", t.r[static_cast<size_t>(i)]);
  }
  std::printf("\ncells (left vertex -> right vertex, multiplicity, tau):\n");
  for (size_t l = 0; l < t.subdivision.size(); ++l)
    std::printf("  %d -> %d   m=%d   tau=%.17g\n", t.subdivision[l].first,
                t.subdivision[l].second, t.multiplicities[l],
                t.trop_roots[static_cast<size_t>(t.subdivision[l].first)]);
  return 0;
}

int cmd_roots(const std::string& poly_path, const std::string& out_path,
              bool csv) {
  Polynomial p = read_polynomial(poly_path);
  RootSet rs = find_roots(p);
  if (!out_path.empty()) write_complex_file(out_path, rs.roots);

  if (csv) {
    std::cout << "index,re,im\n";
    for (size_t j = 0; j < rs.roots.size(); ++j)
      std::cout << j << ',' << g17(rs.roots[j].real()) << ','
                << g17(rs.roots[j].imag()) << '\n';
  } else {
    for (const Cplx& z : rs.roots)
      std::printf("%.17g %.17g\n", z.real(), z.imag());
  }
  return 0;
}

int cmd_be(const std::string& poly_path, const std::string& roots_path,
           const std::string& measures_arg, bool csv) {
  std::set<std::string> want;
  std::stringstream ss(measures_arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item != "nbe" && item != "ebe" && item != "tbe" && item != "embe")
      throw ParseError("--measures", 0,
                       "unknown measure '" + item +
                           "' (expected nbe, ebe, tbe, embe)");
    want.insert(item);
  }
  if (want.empty())
    throw ParseError("--measures", 0, "no measures requested");

  Polynomial p = read_polynomial(poly_path);
  RootSet x_hat{read_complex_file(roots_path), Provenance::Supplied};

  ErrorReport rep = error_report(p, x_hat, want.count("embe") > 0);

  auto value_of = [&](const std::string& m) -> std::string {
    if (m == "nbe") return g17(rep.nbe);
    if (m == "ebe") return g17(rep.ebe);
    if (m == "tbe") return g17(rep.tbe);
    return rep.embe_ub ? g17(*rep.embe_ub) : "unavailable";
  };

  const char* names[] = {"nbe", "ebe", "tbe", "embe"};
  if (csv) {
    std::cout << "measure,value\n";
    for (const char* m : names)
      if (want.count(m)) std::cout << m << ',' << value_of(m) << '\n';
    return 0;
  }

  for (const char* m : names)
    if (want.count(m)) std::printf("%-8s %s\n", m, value_of(m).c_str());
  if (want.count("embe")) {
    std::printf("collision %s\n", rep.pairing_collision ? "yes" : "no");
    std::printf("\nrefinement (x_hat -> x_tilde):\n");
    std::printf("%4s  %22s  %22s  %12s  %s\n", "j", "x_hat", "x_tilde",
                "rel_move", "status");
    for (size_t j = 0; j < rep.refinement.size(); ++j) {
      const RootRefinement& r = rep.refinement[j];
      char bh[64], bt[64];
      std::snprintf(bh, sizeof bh, "%.6g%+.6gi", r.x_hat.real(), r.x_hat.imag());
      std::snprintf(bt, sizeof bt, "%.6g%+.6gi", r.x_tilde.real(),
                    r.x_tilde.imag());
      std::printf("%4zu  %22s  %22s  %12.6g  %s\n", j, bh, bt, r.rel_move,
                  status_name(r.status));
    }
  }
  if (want.count("tbe")) {
    std::printf("\nper-coefficient errors:\n");
    std::printf("%4s  %14s  %14s  %14s\n", "i", "abs", "rel", "r-scaled");
    for (const CoeffError& e : rep.per_coeff)
      std::printf("%4d  %14.6g  %14.6g  %14.6g\n", e.index, e.abs_err,
                  e.rel_err, e.r_scaled);
  }
  return 0;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError(path.string(), 0, "cannot open file for writing");
  out << text;
  out.flush();
  if (!out) throw ParseError(path.string(), 0, "write failure");
}

ExperimentConfig make_config(int d, double k, int trials, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.d = d;
  cfg.k = k;
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

int cmd_exp1(const ExperimentConfig& cfg, const std::string& outdir, bool csv) {
  Exp1Result res = experiment1(cfg);
  fs::path dir(outdir);
  fs::create_directories(dir);
  std::ostringstream body;
  write_exp1_csv(res, body);
  write_text_file(dir / "exp1.csv", body.str());
  write_text_file(dir / "exp1.plt", exp1_plot_script());
  if (csv) {
    std::cout << body.str();
  } else {
    std::printf("wrote %s and %s\n", (dir / "exp1.csv").c_str(),
                (dir / "exp1.plt").c_str());
    std::printf("%zu trials, %d without witness bound, %d rootfind failures\n",
                res.records.size(), res.unavailable, res.rootfind_failed);
  }
  return 0;
}

int cmd_exp2(const ExperimentConfig& cfg, const std::string& outdir, bool csv) {
  Exp2Result res = experiment2(cfg);
  fs::path dir(outdir);
  fs::create_directories(dir);
  std::ostringstream body;
  write_exp2_csv(res, body);
  write_text_file(dir / "exp2.csv", body.str());
  write_text_file(dir / "exp2.plt", exp2_plot_script());
  if (csv) {
    std::cout << body.str();
  } else {
    std::printf("wrote %s and %s\n", (dir / "exp2.csv").c_str(),
                (dir / "exp2.plt").c_str());
    std::printf("%zu rows, %zu skipped trial(s)\n", res.records.size(),
                res.skipped_trials.size());
  }
  return 0;
}

constexpr const char* kFileGrammar =
    "File format (polynomials and root lists):\n"
    "  one complex number per line as two whitespace-separated decimal\n"
    "  fields \"re im\" (C strtod syntax, e.g. \"1.5e-3 -0.25\");\n"
    "  blank lines and lines whose first non-blank character is '#' are\n"
    "  ignored; polynomial files list coefficients in ascending power\n"
    "  order, constant term first, one coefficient per degree with no\n"
    "  gaps; written files carry 17 significant digits per field.";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical backward-error toolkit for polynomial roots"};
  app.require_subcommand(1);
  app.footer(kFileGrammar);

  std::string poly_path;
  std::string roots_path;
  std::string out_path;
  std::string measures = "nbe,ebe,tbe,embe";
  bool csv = false;
  int d = 20;
  double k = 8.0;
  int trials = 200;
  std::uint64_t seed = 42;

  CLI::App* trop = app.add_subcommand("trop", "Tropical roots, hull, and r constants");
  trop->add_option("--poly", poly_path, "polynomial file")->required();
  trop->add_flag("--csv", csv, "machine-readable CSV on stdout");

  CLI::App* roots = app.add_subcommand("roots", "Compute all roots");
  roots->add_option("--poly", poly_path, "polynomial file")->required();
  roots->add_option("--out", out_path, "also write the roots to this file");
  roots->add_flag("--csv", csv, "machine-readable CSV on stdout");

  CLI::App* be = app.add_subcommand("be", "Backward-error report for supplied roots");
  be->add_option("--poly", poly_path, "polynomial file")->required();
  be->add_option("--roots", roots_path, "roots file")->required();
  be->add_option("--measures", measures,
                 "comma-separated subset of nbe,ebe,tbe,embe");
  be->add_flag("--csv", csv, "machine-readable CSV on stdout");

  CLI::App* exp1 = app.add_subcommand("exp1", "Backward-error experiment over random polynomials");
  exp1->add_option("--d", d, "degree");
  exp1->add_option("--k", k, "coefficient exponent half-range");
  exp1->add_option("--trials", trials, "number of trials");
  exp1->add_option("--seed", seed, "random seed");
  exp1->add_option("--out", out_path, "output directory")->required();
  exp1->add_flag("--csv", csv, "stream the CSV to stdout as well");

  CLI::App* exp2 = app.add_subcommand("exp2", "Tropical modulus-prediction experiment");
  exp2->add_option("--d", d, "degree");
  exp2->add_option("--k", k, "coefficient exponent half-range");
  exp2->add_option("--trials", trials, "number of trials");
  exp2->add_option("--seed", seed, "random seed");
  exp2->add_option("--out", out_path, "output directory")->required();
  exp2->add_flag("--csv", csv, "stream the CSV to stdout as well");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*trop) return cmd_trop(poly_path, csv);
    if (*roots) return cmd_roots(poly_path, out_path, csv);
    if (*be) return cmd_be(poly_path, roots_path, measures, csv);
    if (*exp1) return cmd_exp1(make_config(d, k, trials, seed), out_path, csv);
    if (*exp2) return cmd_exp2(make_config(d, k, trials, seed), out_path, csv);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const AberthFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    for (size_t j = 0; j < e.best.size(); ++j)
      std::cerr << "  iterate " << j << ": " << g17(e.best[j].real()) << ' '
                << g17(e.best[j].imag()) << "  residual "
                << g17(e.residuals[j]) << '\n';
    return 2;
  } catch (const WitnessFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

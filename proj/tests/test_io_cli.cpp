#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "polybe/poly_io.hpp"
#include "polybe/polynomial.hpp"

using namespace polybe;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "polybe_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path out = scratch_dir() / ("stdout." + std::to_string(counter));
  fs::path err = scratch_dir() / ("stderr." + std::to_string(counter));
  ++counter;
  std::string cmd = std::string(POLYBE_CLI_PATH) + " " + args + " >" +
                    out.string() + " 2>" + err.string();
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> f;
  size_t pos = 0;
  while (true) {
    size_t c = line.find(sep, pos);
    f.push_back(line.substr(pos, c - pos));
    if (c == std::string::npos) break;
    pos = c + 1;
  }
  return f;
}

}  // namespace

TEST_CASE("complex file round trip preserves every bit") {
  std::vector<Cplx> values{Cplx(1.0 / 3.0, -2.0 / 7.0), Cplx(1e-300, 1e300),
                           Cplx(-0.0, 0.0), Cplx(6.02214076e23, -1.5e-3)};
  fs::path p = scratch_dir() / "roundtrip.txt";
  write_complex_file(p, values);
  std::vector<Cplx> back = read_complex_file(p);
  REQUIRE(back.size() == values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    CHECK(back[i].real() == values[i].real());
    CHECK(back[i].imag() == values[i].imag());
  }
}

TEST_CASE("read_complex_file: grammar") {
  fs::path p = scratch_dir() / "grammar.txt";
  spit(p,
       "# leading comment\n"
       "\n"
       "1.5e-3 -0.25\n"
       "   # indented comment\n"
       "\t2 3\n");
  std::vector<Cplx> v = read_complex_file(p);
  REQUIRE(v.size() == 2);
  CHECK(v[0] == Cplx(1.5e-3, -0.25));
  CHECK(v[1] == Cplx(2, 3));
}

TEST_CASE("read_complex_file: errors carry file and line") {
  fs::path p = scratch_dir() / "bad.txt";
  spit(p, "1 2\n2 3\nthree four\n");
  try {
    read_complex_file(p);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.file == p.string());
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }

  spit(p, "1 2 3\n");
  try {
    read_complex_file(p);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
  }

  spit(p, "1\n");
  CHECK_THROWS_AS(read_complex_file(p), ParseError);

  spit(p, "# nothing but comments\n\n");
  CHECK_THROWS_AS(read_complex_file(p), ParseError);

  try {
    read_complex_file(scratch_dir() / "does_not_exist.txt");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 0);
  }
}

TEST_CASE("read_polynomial: ascending coefficients") {
  fs::path p = scratch_dir() / "poly.txt";
  spit(p, "# x^2 - 3x + 2\n2 0\n-3 0\n1 0\n");
  Polynomial q = read_polynomial(p);
  REQUIRE(q.degree() == 2);
  CHECK(q[0] == Cplx(2));
  CHECK(q[1] == Cplx(-3));
  CHECK(q[2] == Cplx(1));

  spit(p, "1 0\n0 0\n");  // zero leading coefficient
  CHECK_THROWS_AS(read_polynomial(p), std::invalid_argument);
}

TEST_CASE("cli: trop --csv on the running example") {
  fs::path p = scratch_dir() / "fig.txt";
  spit(p, "2.5 0\n6 0\n3 0\n2.5 0\n5 0\n0.5 0\n3 0\n0.5 0\n");
  RunResult r = run_cli("trop --poly " + p.string() + " --csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.err.empty());
  std::vector<std::string> rows = lines_of(r.out);
  REQUIRE(rows.size() == 9);  // header + 8 coefficients
  CHECK(rows[0] == "i,abs_coeff,valuation,is_vertex,tau,multiplicity,r");
  const int want_vertex[] = {1, 1, 0, 0, 1, 0, 1, 1};
  for (int i = 0; i <= 7; ++i) {
    std::vector<std::string> f = split(rows[static_cast<size_t>(i) + 1], ',');
    REQUIRE(f.size() == 7);
    CHECK(std::stoi(f[0]) == i);
    CHECK(std::stoi(f[3]) == want_vertex[i]);
  }
  // interior r values
  std::vector<std::string> r2 = split(rows[3], ',');
  CHECK(std::stod(r2[6]) ==
        doctest::Approx((5.0 / 3.0) * std::pow(1.2, 2.0 / 3.0)).epsilon(1e-12));
  std::vector<std::string> r5 = split(rows[6], ',');
  CHECK(std::stod(r5[6]) ==
        doctest::Approx(6.0 * std::sqrt(5.0 / 3.0)).epsilon(1e-12));
  // tau column empty for i = 0
  std::vector<std::string> row0 = split(rows[1], ',');
  CHECK(row0[4].empty());
  CHECK(row0[5].empty());
}

TEST_CASE("cli: roots, with and without --out") {
  fs::path p = scratch_dir() / "quad.txt";
  spit(p, "2 0\n-3 0\n1 0\n");
  fs::path out = scratch_dir() / "roots_out.txt";
  RunResult r = run_cli("roots --poly " + p.string() + " --out " + out.string());
  REQUIRE(r.exit_code == 0);
  std::vector<std::string> rows = lines_of(r.out);
  REQUIRE(rows.size() == 2);

  std::vector<Cplx> written = read_complex_file(out);
  REQUIRE(written.size() == 2);
  std::vector<double> mods{std::abs(written[0]), std::abs(written[1])};
  std::sort(mods.begin(), mods.end());
  CHECK(mods[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(mods[1] == doctest::Approx(2.0).epsilon(1e-13));

  // stdout lines match the file contents field for field
  for (size_t j = 0; j < rows.size(); ++j) {
    std::istringstream in(rows[j]);
    double re = 0.0, im = 0.0;
    REQUIRE((in >> re >> im));
    CHECK(re == written[j].real());
    CHECK(im == written[j].imag());
  }

  RunResult rc = run_cli("roots --poly " + p.string() + " --csv");
  REQUIRE(rc.exit_code == 0);
  std::vector<std::string> crows = lines_of(rc.out);
  REQUIRE(crows.size() == 3);
  CHECK(crows[0] == "index,re,im");
}

TEST_CASE("cli: be report on exact roots") {
  fs::path p = scratch_dir() / "cubic.txt";
  spit(p, "-6 0\n11 0\n-6 0\n1 0\n");
  fs::path roots = scratch_dir() / "cubic_roots.txt";
  spit(roots, "1 0\n2 0\n3 0\n");
  RunResult r = run_cli("be --poly " + p.string() + " --roots " +
                        roots.string() + " --csv");
  REQUIRE(r.exit_code == 0);
  std::vector<std::string> rows = lines_of(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "measure,value");
  const char* names[] = {"nbe", "ebe", "tbe", "embe"};
  for (int i = 0; i < 4; ++i) {
    std::vector<std::string> f = split(rows[static_cast<size_t>(i) + 1], ',');
    REQUIRE(f.size() == 2);
    CHECK(f[0] == names[i]);
    CHECK(std::stod(f[1]) <= 1e3 * 1.1102230246251565e-16);
  }

  RunResult sub = run_cli("be --poly " + p.string() + " --roots " +
                          roots.string() + " --measures tbe --csv");
  REQUIRE(sub.exit_code == 0);
  std::vector<std::string> srows = lines_of(sub.out);
  REQUIRE(srows.size() == 2);
  CHECK(split(srows[1], ',')[0] == "tbe");

  RunResult human = run_cli("be --poly " + p.string() + " --roots " +
                            roots.string());
  REQUIRE(human.exit_code == 0);
  CHECK(human.out.find("collision no") != std::string::npos);
  CHECK(human.out.find("refinement") != std::string::npos);
  CHECK(human.out.find("converged") != std::string::npos);
}

TEST_CASE("cli: exit codes") {
  fs::path p = scratch_dir() / "quad2.txt";
  spit(p, "2 0\n-3 0\n1 0\n");
  fs::path roots = scratch_dir() / "zero_root.txt";
  spit(roots, "0 0\n1 0\n");

  // 1: command-line error (missing required option)
  CHECK(run_cli("trop").exit_code == 1);
  // 1: unreadable input file
  RunResult nf = run_cli("trop --poly " + scratch_dir().string() + "/nope.txt");
  CHECK(nf.exit_code == 1);
  CHECK(nf.out.empty());
  CHECK(!nf.err.empty());
  // 1: unknown measure name
  RunResult um = run_cli("be --poly " + p.string() + " --roots " +
                         roots.string() + " --measures tbe,bogus");
  CHECK(um.exit_code == 1);
  CHECK(um.err.find("unknown measure") != std::string::npos);
  // 3: precondition violation (zero root supplied)
  RunResult zr =
      run_cli("be --poly " + p.string() + " --roots " + roots.string());
  CHECK(zr.exit_code == 3);
  // 3: zero constant coefficient
  fs::path zp = scratch_dir() / "zero_c0.txt";
  spit(zp, "0 0\n1 0\n1 0\n");
  RunResult zc = run_cli("trop --poly " + zp.string());
  CHECK(zc.exit_code == 3);
  CHECK(zc.err.find("deflate") != std::string::npos);
  // 0: help
  RunResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("File format") != std::string::npos);
}

TEST_CASE("cli: exp1 writes deterministic artifacts") {
  fs::path dir1 = scratch_dir() / "exp1_a";
  fs::path dir2 = scratch_dir() / "exp1_b";
  std::string base = "exp1 --d 6 --k 3 --trials 4 --seed 5 --out ";
  RunResult a = run_cli(base + dir1.string());
  REQUIRE(a.exit_code == 0);
  CHECK(a.out.find("exp1.csv") != std::string::npos);
  REQUIRE(fs::exists(dir1 / "exp1.csv"));
  REQUIRE(fs::exists(dir1 / "exp1.plt"));

  RunResult b = run_cli(base + dir2.string() + " --csv");
  REQUIRE(b.exit_code == 0);
  std::string csv1 = slurp(dir1 / "exp1.csv");
  std::string csv2 = slurp(dir2 / "exp1.csv");
  CHECK(csv1 == csv2);       // identical bytes across reruns
  CHECK(b.out == csv2);      // --csv streams exactly the file body
  CHECK(lines_of(csv1).size() == 5);
}

TEST_CASE("cli: exp2 writes csv and plot script") {
  fs::path dir = scratch_dir() / "exp2_out";
  RunResult r =
      run_cli("exp2 --d 4 --k 2 --trials 3 --seed 9 --out " + dir.string());
  REQUIRE(r.exit_code == 0);
  REQUIRE(fs::exists(dir / "exp2.csv"));
  REQUIRE(fs::exists(dir / "exp2.plt"));
  std::vector<std::string> rows = lines_of(slurp(dir / "exp2.csv"));
  REQUIRE(rows.size() == 13);  // header + 3 trials * 4 roots
  CHECK(rows[0] == "trial,root_index,exp_tau_over_abs_root");
  std::string plt = slurp(dir / "exp2.plt");
  CHECK(plt.find("exp2.csv") != std::string::npos);
}

TEST_CASE("cli: root files written by roots feed be") {
  fs::path p = scratch_dir() / "feed.txt";
  spit(p, "-6 0\n11 0\n-6 0\n1 0\n");
  fs::path rf = scratch_dir() / "feed_roots.txt";
  RunResult r = run_cli("roots --poly " + p.string() + " --out " + rf.string());
  REQUIRE(r.exit_code == 0);
  RunResult be = run_cli("be --poly " + p.string() + " --roots " + rf.string() +
                         " --measures nbe --csv");
  REQUIRE(be.exit_code == 0);
  std::vector<std::string> rows = lines_of(be.out);
  REQUIRE(rows.size() == 2);
  CHECK(std::stod(split(rows[1], ',')[1]) <= 1e-13);
}

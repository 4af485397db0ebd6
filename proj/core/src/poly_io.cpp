#include "polybe/poly_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace polybe {

namespace {

std::string compose(const std::string& file, int line, const std::string& msg) {
  std::ostringstream os;
  os << file;
  if (line > 0) os << ':' << line;
  os << ": " << msg;
  return os.str();
}

}  // namespace

ParseError::ParseError(std::string f, int ln, const std::string& msg)
    : std::runtime_error(compose(f, ln, msg)), file(std::move(f)), line(ln) {}

std::vector<Cplx> read_complex_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");

  std::vector<Cplx> out;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    size_t pos = text.find_first_not_of(" \t\r");
    if (pos == std::string::npos || text[pos] == '#') continue;

    std::istringstream fields(text);
    double re = 0.0;
    double im = 0.0;
    if (!(fields >> re >> im))
      throw ParseError(path.string(), line,
                       "expected two decimal fields \"re im\"");
    std::string rest;
    if (fields >> rest)
      throw ParseError(path.string(), line, "trailing content after \"re im\"");
    out.emplace_back(re, im);
  }
  if (in.bad()) throw ParseError(path.string(), line, "read failure");
  if (out.empty()) throw ParseError(path.string(), line, "no values in file");
  return out;
}

Polynomial read_polynomial(const std::filesystem::path& path) {
  return Polynomial(read_complex_file(path));
}

void write_complex_file(const std::filesystem::path& path,
                        std::span<const Cplx> values) {
  std::ofstream out(path);
  if (!out) throw ParseError(path.string(), 0, "cannot open file for writing");
  char buf[96];
  for (const Cplx& z : values) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", z.real(), z.imag());
    out << buf;
  }
  out.flush();
  if (!out) throw ParseError(path.string(), 0, "write failure");
}

}  // namespace polybe

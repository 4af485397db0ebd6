#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "polybe/polynomial.hpp"

namespace polybe {

struct ParseError : std::runtime_error {
  std::string file;
  int line;  // 1-based; 0 when the file could not be opened
  ParseError(std::string f, int ln, const std::string& msg);
};

// File grammar, shared by coefficient and root files: one complex number per
// line as two whitespace-separated decimal fields "re im" (strtod syntax);
// blank lines and lines whose first non-blank character is '#' are ignored.
// Polynomial files list coefficients in ascending power order.
std::vector<Cplx> read_complex_file(const std::filesystem::path& path);

Polynomial read_polynomial(const std::filesystem::path& path);

// Writes 17 significant digits per field; reading back reproduces every
// double exactly.
void write_complex_file(const std::filesystem::path& path,
                        std::span<const Cplx> values);

}  // namespace polybe

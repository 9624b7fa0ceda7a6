#pragma once

// Plain-text matrix format:
//
//   # comment lines start with '#'
//   rows cols
//   a11 a12 ...
//   ...
//
// Each entry is `a`, `a+bi`, `a-bi` or `bi` with decimal binary64 literals.
// Writers emit 17 significant digits, so write/read round trips are exact.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "kronq/matrix.hpp"

namespace kronq {

Complex parse_complex(std::string_view token);
std::string format_complex(Complex z);
std::string format_real(double x);

Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::filesystem::path& path);
Matrix parse_matrix(std::string_view text);

void write_matrix(std::ostream& out, const Matrix& M);
void write_matrix_file(const std::filesystem::path& path, const Matrix& M);
std::string format_matrix(const Matrix& M);

}  // namespace kronq

#include "kronq/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace kronq {

namespace {

double parse_real(std::string_view text, std::string_view token) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  // A bare "i" / "-i" has an implicit unit magnitude.
  if (text.empty()) return 1.0;
  if (text == "-") return -1.0;
  if (text.front() == '+' || (text.size() > 1 && text[0] == '-' && text[1] == '+')) {
    throw ParseError("malformed number in token '" + std::string(token) + "'");
  }
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError("malformed number in token '" + std::string(token) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError("non-finite number in token '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos > start) out.push_back(line.substr(start, pos - start));
  }
  return out;
}

bool is_content(std::string_view line) {
  for (char ch : line) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch != '#';
  }
  return false;
}

std::size_t parse_dimension(std::string_view text) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
    throw ParseError("invalid matrix dimension '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Complex parse_complex(std::string_view token) {
  if (token.empty()) throw ParseError("empty matrix entry");
  if (token.back() != 'i') return {parse_real(token, token), 0.0};

  const std::string_view body = token.substr(0, token.size() - 1);
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_real(body, token)};
  return {parse_real(body.substr(0, split), token), parse_real(body.substr(split), token)};
}

std::string format_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  if (ec != std::errc{}) throw ValueError("cannot format number");
  return std::string(buf, ptr);
}

std::string format_complex(Complex z) {
  const double im = z.imag();
  if (im == 0.0 && !std::signbit(im)) return format_real(z.real());
  std::string out = format_real(z.real());
  out += std::signbit(im) ? '-' : '+';
  out += format_real(std::abs(im));
  out += 'i';
  return out;
}

Matrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_content = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (is_content(line)) return true;
    }
    return false;
  };

  if (!next_content()) throw ParseError("missing 'rows cols' header");
  const auto header = split_ws(line);
  if (header.size() != 2) {
    throw ParseError("line " + std::to_string(line_no) + ": header must be 'rows cols'");
  }
  const std::size_t rows = parse_dimension(header[0]);
  const std::size_t cols = parse_dimension(header[1]);

  std::vector<Complex> entries;
  entries.reserve(Matrix::checked_size(rows, cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!next_content()) {
      throw ParseError("expected " + std::to_string(rows) + " rows, got " + std::to_string(r));
    }
    const auto tokens = split_ws(line);
    if (tokens.size() != cols) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(cols) + " entries, got " +
                       std::to_string(tokens.size()));
    }
    for (auto token : tokens) entries.push_back(parse_complex(token));
  }
  if (next_content()) {
    throw ParseError("line " + std::to_string(line_no) + ": unexpected trailing data");
  }
  return Matrix(rows, cols, std::move(entries));
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return read_matrix(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Matrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const Matrix& M) {
  out << M.rows() << ' ' << M.cols() << '\n';
  for (std::size_t r = 0; r < M.rows(); ++r) {
    for (std::size_t c = 0; c < M.cols(); ++c) {
      if (c > 0) out << ' ';
      out << format_complex(M(r, c));
    }
    out << '\n';
  }
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& M) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
  write_matrix(out, M);
  if (!out) throw ParseError("failed writing '" + path.string() + "'");
}

std::string format_matrix(const Matrix& M) {
  std::ostringstream out;
  write_matrix(out, M);
  return out.str();
}

}  // namespace kronq

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pptkit/mpstate.hpp"
#include "pptkit/sign_matrix.hpp"
#include "pptkit/solvability.hpp"

namespace pptkit {

/// Malformed input. line and column are 1-based; 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

std::string read_text_file(const std::filesystem::path& path);

/// `a+bi`, `a-bi`, `a`, `bi`, `i`, `-i` with decimal literals.
/// Throws std::invalid_argument on anything else, including nan and inf.
Complex parse_complex(std::string_view text);
/// Shortest round-trip form, always `a+bi` or `a-bi`.
std::string format_complex(Complex z);
std::string format_double(double x);

/// Lines of '+' and '-'; blank lines and '#' comments ignored.
SignMatrix parse_sign_matrix(std::string_view text);
/// Matrices separated by blank lines; lines `key: value` are skipped.
std::vector<SignMatrix> parse_sign_matrices(std::string_view text);
std::string format_sign_matrix(const SignMatrix& m);

/// {"dims": [...], "constraints": [{"subset": [1-based], "codim": k,
///  "complement_basis": [["a+bi", ...], ...]}]}. Validated; repeated or
/// complementary subsets are kept as given.
ProblemSpec parse_spec(std::string_view text);
std::string format_spec(const ProblemSpec& spec);

/// `dims: d1 ... dn`, then one `row col re im` line per entry, 0-based.
/// Every entry must appear exactly once. The trace is normalized.
DensityMatrix parse_density_matrix(std::string_view text);
std::string format_density_matrix(const DensityMatrix& rho);

}  // namespace pptkit

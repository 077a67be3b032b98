#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace meemi {

// Row-major so that row i of an embedding matrix is contiguous.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowVector = Eigen::RowVectorXd;

// Runtime or data error. The command line front end maps it to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; carries the 1-based line number of the offending line.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Shortest decimal rendering that parses back to the identical double.
std::string format_real(double value);

// Strict parse of a whole field; rejects trailing garbage. Non-finite values
// are returned as parsed so callers can report them separately.
std::optional<double> parse_real(std::string_view text);

std::vector<std::string_view> split_whitespace(std::string_view line);
std::vector<std::string_view> split_tabs(std::string_view line);

// ASCII-only lowercase fold; bytes >= 0x80 (UTF-8 continuation) pass through.
std::string fold_lower(std::string_view text);

// Removes a trailing '\r' left by CRLF files.
std::string_view strip_cr(std::string_view line);

bool is_comment_or_blank(std::string_view line);

}  // namespace meemi

#pragma once

// Minimal comma-separated reader/writer for the tool's own flat schemas (no
// quoting: none of our fields can contain commas or newlines).

#include <charconv>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mrpsim/types.hpp"

namespace mrpsim::csv {

/// Shortest representation that parses back to the identical double.
std::string format_double(double v);

class Row {
 public:
  Row(std::vector<std::string> fields, std::size_t line, const std::vector<std::string>* header,
      const std::string* source)
      : fields_(std::move(fields)), line_(line), header_(header), source_(source) {}

  const std::string& str(std::size_t i) const { return fields_.at(i); }
  int get_int(std::size_t i) const;
  std::int64_t get_int64(std::size_t i) const;
  std::uint64_t get_uint64(std::size_t i) const;
  double get_double(std::size_t i) const;
  std::size_t line() const { return line_; }
  [[noreturn]] void fail(std::size_t i, const std::string& why) const;

 private:
  std::vector<std::string> fields_;
  std::size_t line_;
  const std::vector<std::string>* header_;
  const std::string* source_;
};

class Reader {
 public:
  Reader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  /// Reads the header line; throws ParseError naming the first mismatching column.
  void expect_header(const std::vector<std::string>& columns);
  std::optional<Row> next();

 private:
  std::istream& in_;
  std::string source_;
  std::vector<std::string> header_;
  std::size_t line_ = 0;
};

std::vector<std::string> split(std::string_view line);

}  // namespace mrpsim::csv

#include "csv.hpp"

#include <array>

namespace mrpsim::csv {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void Row::fail(std::size_t i, const std::string& why) const {
  std::string col = (header_ && i < header_->size()) ? (*header_)[i] : std::to_string(i);
  throw ParseError(*source_ + ":" + std::to_string(line_) + ": column '" + col + "': " + why);
}

namespace {

template <typename T>
T parse_number(const Row& row, std::size_t i, const std::string& text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) row.fail(i, "not a number: '" + text + "'");
  return value;
}

}  // namespace

int Row::get_int(std::size_t i) const { return parse_number<int>(*this, i, str(i)); }
std::int64_t Row::get_int64(std::size_t i) const { return parse_number<std::int64_t>(*this, i, str(i)); }
std::uint64_t Row::get_uint64(std::size_t i) const { return parse_number<std::uint64_t>(*this, i, str(i)); }
double Row::get_double(std::size_t i) const { return parse_number<double>(*this, i, str(i)); }

void Reader::expect_header(const std::vector<std::string>& columns) {
  std::string line;
  if (!std::getline(in_, line)) throw ParseError(source_ + ": empty file, expected header");
  ++line_;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  header_ = split(line);
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i >= header_.size())
      throw ParseError(source_ + ":1: header is missing column '" + columns[i] + "'");
    if (header_[i] != columns[i])
      throw ParseError(source_ + ":1: header column " + std::to_string(i + 1) + " is '" + header_[i] +
                       "', expected '" + columns[i] + "'");
  }
  if (header_.size() != columns.size())
    throw ParseError(source_ + ":1: unexpected extra header column '" + header_[columns.size()] + "'");
}

std::optional<Row> Reader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line);
    if (!header_.empty() && fields.size() != header_.size())
      throw ParseError(source_ + ":" + std::to_string(line_) + ": expected " + std::to_string(header_.size()) +
                       " fields, got " + std::to_string(fields.size()));
    return Row(std::move(fields), line_, &header_, &source_);
  }
  return std::nullopt;
}

}  // namespace mrpsim::csv

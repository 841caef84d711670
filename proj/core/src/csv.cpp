#include "crsim/csv.hpp"

#include <array>
#include <charconv>

#include "crsim/errors.hpp"

namespace crsim {

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::string_view schema,
                     std::initializer_list<std::string_view> columns, int version)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw IoError("cannot create " + path.string());
  out_ << "# schema: " << schema << " v" << version << '\n';
  bool first = true;
  for (const auto c : columns) {
    if (!first) out_ << ',';
    out_ << c;
    first = false;
  }
  out_ << '\n';
}

void CsvWriter::close() {
  out_.flush();
  if (!out_) throw IoError("write failed for " + path_.string());
  out_.close();
}

void CsvWriter::Row::sep() {
  if (!first_) line_ += ',';
  first_ = false;
}

CsvWriter::Row& CsvWriter::Row::operator<<(double v) {
  sep();
  line_ += format_double(v);
  return *this;
}

CsvWriter::Row& CsvWriter::Row::operator<<(std::int64_t v) {
  sep();
  line_ += std::to_string(v);
  return *this;
}

CsvWriter::Row& CsvWriter::Row::operator<<(std::uint64_t v) {
  sep();
  line_ += std::to_string(v);
  return *this;
}

CsvWriter::Row& CsvWriter::Row::operator<<(std::string_view v) {
  sep();
  line_ += v;
  return *this;
}

CsvWriter::Row::~Row() { writer_.out_ << line_ << '\n'; }

}  // namespace crsim

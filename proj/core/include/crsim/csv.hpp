#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace crsim {

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

/// CSV with a `# schema: <name> v<version>` first row and a column header.
class CsvWriter {
 public:
  /// Throws IoError if the file cannot be created.
  CsvWriter(const std::filesystem::path& path, std::string_view schema,
            std::initializer_list<std::string_view> columns, int version = 1);

  class Row {
   public:
    Row& operator<<(double v);
    Row& operator<<(std::int64_t v);
    Row& operator<<(std::uint64_t v);
    Row& operator<<(int v) { return *this << static_cast<std::int64_t>(v); }
    Row& operator<<(std::string_view v);
    ~Row();

    Row(const Row&) = delete;
    Row& operator=(const Row&) = delete;

   private:
    friend class CsvWriter;
    explicit Row(CsvWriter& w) : writer_(w) {}
    void sep();
    CsvWriter& writer_;
    std::string line_;
    bool first_ = true;
  };

  Row row() { return Row(*this); }
  /// Flushes and throws IoError if any write failed.
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace crsim

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <type_traits>

// Deterministic CSV assembly: RFC-4180 quoting, '\n' line endings, '.'
// decimal separator, 17 significant digits for reals. Files are built in
// memory so the emitted bytes can be digested before they hit disk.

namespace cogsense {

std::string format_double(double value);
std::string csv_escape(std::string_view field);

class CsvBuilder {
 public:
  template <typename... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    (append_cell(to_cell(cells), first), ...);
    out_ += '\n';
  }

  const std::string& str() const { return out_; }

 private:
  static std::string to_cell(double v) { return format_double(v); }
  static std::string to_cell(const std::string& v) { return csv_escape(v); }
  static std::string to_cell(std::string_view v) { return csv_escape(v); }
  static std::string to_cell(const char* v) { return csv_escape(v); }
  template <typename T, typename = std::enable_if_t<std::is_integral_v<T>>>
  static std::string to_cell(T v) {
    return std::to_string(v);
  }

  void append_cell(const std::string& cell, bool& first) {
    if (!first) {
      out_ += ',';
    }
    first = false;
    out_ += cell;
  }

  std::string out_;
};

// FNV-1a over the raw bytes; cheap content fingerprint for the manifest.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

// Writes the full content, throwing IoError on any failure.
void write_file(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace cogsense

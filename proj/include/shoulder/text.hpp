#pragma once

// Strict text helpers shared by the file readers and writers.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace shoulder::text {

/// Shortest decimal rendering that parses back to the identical double.
std::string format_real(double v);

/// False unless the whole field parses.
bool parse_real(std::string_view field, double& out);
bool parse_index(std::string_view field, std::uint64_t& out);

/// Splits on LF, dropping one trailing CR per line (CRLF input). A final
/// empty line after the last LF is not returned.
std::vector<std::string_view> split_lines(std::string_view text);
std::vector<std::string_view> split_fields(std::string_view line, char sep = ',');
std::string_view trim(std::string_view s);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

/// `key = value` lines; blank lines and `#` comments ignored. Duplicate or
/// malformed keys throw Error(Format) with the line number.
class KeyValueFile {
 public:
  static KeyValueFile parse(std::string_view text, std::string_view origin);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  /// Throws Error(Format) naming the key when absent.
  const std::string& get(const std::string& key) const;
  double get_real(const std::string& key) const;
  std::uint64_t get_index(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const { return values_; }
  /// Keys not in `known` raise Error(Format).
  void reject_unknown(const std::vector<std::string>& known) const;

 private:
  std::string origin_;
  std::map<std::string, std::string> values_;
};

}  // namespace shoulder::text

#pragma once

// Deterministic CSV output: fixed column order, 17 significant digits.

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace eitqhe {

/// Shortest-form general notation with 17 significant digits (round-trip exact).
/// NaN and infinities print as nan, inf, -inf.
std::string format_double(double x);

class CsvWriter {
 public:
  /// Opens `path` for writing and emits the header; throws Error on I/O failure.
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> header);

  CsvWriter& field(double x);
  CsvWriter& field(const std::string& s);
  CsvWriter& field(long long n);
  /// Ends the row; throws Error if the field count differs from the header.
  void end_row();

 private:
  std::ofstream out_;
  std::filesystem::path path_;
  std::size_t columns_;
  std::size_t pending_ = 0;
};

}  // namespace eitqhe

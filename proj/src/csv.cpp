#include "eitqhe/csv.hpp"

#include <charconv>
#include <cmath>

#include "eitqhe/error.hpp"

namespace eitqhe {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> header)
    : out_(path, std::ios::binary | std::ios::trunc), path_(path), columns_(header.size()) {
  if (!out_) throw Error("cannot open " + path.string() + " for writing");
  for (const auto& h : header) field(h);
  end_row();
}

CsvWriter& CsvWriter::field(double x) { return field(format_double(x)); }

CsvWriter& CsvWriter::field(long long n) { return field(std::to_string(n)); }

CsvWriter& CsvWriter::field(const std::string& s) {
  if (pending_ > 0) out_ << ',';
  out_ << s;
  ++pending_;
  return *this;
}

void CsvWriter::end_row() {
  if (pending_ != columns_)
    throw Error(path_.string() + ": row has " + std::to_string(pending_) + " fields, expected " +
                std::to_string(columns_));
  out_ << '\n';
  pending_ = 0;
  if (!out_) throw Error("write failed: " + path_.string());
}

}  // namespace eitqhe

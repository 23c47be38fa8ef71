#include "kdvlab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "kdvlab/errors.hpp"

namespace kdvlab {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> columns)
    : columns_(std::move(columns)) {
  if (columns_.empty()) throw InputError("csv: need at least one column");
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size())
    throw InputError("csv: row width does not match header");
  rows_.push_back(cells);
}

void CsvWriter::add_numeric_row(const std::vector<double>& cells) {
  std::vector<std::string> row;
  row.reserve(cells.size());
  for (double v : cells) row.push_back(format_double(v));
  add_row(row);
}

std::string CsvWriter::to_string() const {
  std::string out;
  for (size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ',';
    out += columns_[i];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

void CsvWriter::write(const std::filesystem::path& path) const {
  write_text_file_atomic(path, to_string());
}

void write_text_file_atomic(const std::filesystem::path& path,
                            const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.parent_path().empty() ? "." : path.parent_path();
  const fs::path tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("rename to " + path.string() + " failed: " + ec.message());
  }
}

}  // namespace kdvlab

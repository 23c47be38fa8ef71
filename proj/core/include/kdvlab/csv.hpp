#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace kdvlab {

// Deterministic CSV: every double is printed with %.17g so a value survives
// a write/read round trip bit for bit and reruns produce byte-identical
// files. Writes go to a temp file in the target directory and land by
// rename.
std::string format_double(double v);

struct CsvWriter {
  explicit CsvWriter(std::vector<std::string> columns);

  void add_row(const std::vector<std::string>& cells);
  // convenience for all-numeric rows
  void add_numeric_row(const std::vector<double>& cells);

  std::string to_string() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

void write_text_file_atomic(const std::filesystem::path& path,
                            const std::string& content);

}  // namespace kdvlab

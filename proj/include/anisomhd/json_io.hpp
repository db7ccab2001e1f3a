#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

namespace anisomhd {

using Json = nlohmann::json;

// Deterministic serialization: keys sorted (nlohmann's ordered map), floating
// point rendered with %.17g so files round-trip bit-exactly and never depend
// on locale or library version. NaN/Inf become null, as in standard JSON.
std::string dump_json(const Json& j, int indent = 2);

void write_text_file(const std::string& path, const std::string& content);
void write_json_file(const std::string& path, const Json& j);

// Numeric CSV with %.17g cells and '\n' line endings.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);
  CsvWriter& cell(double v);
  CsvWriter& cell(int v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(const std::string& s);
  void endrow();
  const std::string& str() const { return buf_; }
  void write(const std::string& path) const;

 private:
  std::string buf_;
  std::size_t ncols_ = 0, col_ = 0;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::size_t col(const std::string& name) const;  // throws when absent
};

// Parses a numeric CSV produced by CsvWriter (non-numeric cells throw).
CsvTable read_csv(const std::string& path);

}  // namespace anisomhd

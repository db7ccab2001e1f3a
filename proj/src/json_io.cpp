#include "anisomhd/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace anisomhd {
namespace {

std::string fmt_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void escape_string(const std::string& s, std::string& out) {
  out += '"';
  for (unsigned char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (ch < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += char(ch);
        }
    }
  }
  out += '"';
}

void dump_rec(const Json& j, int indent, int depth, std::string& out) {
  const std::string pad(std::size_t(indent) * (depth + 1), ' ');
  const std::string pad_close(std::size_t(indent) * depth, ' ');
  switch (j.type()) {
    case Json::value_t::null: out += "null"; break;
    case Json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
    case Json::value_t::number_integer: out += std::to_string(j.get<long long>()); break;
    case Json::value_t::number_unsigned: out += std::to_string(j.get<unsigned long long>()); break;
    case Json::value_t::number_float: out += fmt_double(j.get<double>()); break;
    case Json::value_t::string: escape_string(j.get<std::string>(), out); break;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump_rec(e, indent, depth + 1, out);
      }
      out += "\n" + pad_close + "]";
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        escape_string(it.key(), out);
        out += ": ";
        dump_rec(it.value(), indent, depth + 1, out);
      }
      out += "\n" + pad_close + "}";
      break;
    }
    default: out += "null";
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_rec(j, indent, 0, out);
  out += '\n';
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os.write(content.data(), std::streamsize(content.size()));
  if (!os) throw std::runtime_error("write failed: " + path);
}

void write_json_file(const std::string& path, const Json& j) {
  write_text_file(path, dump_json(j));
}

CsvWriter::CsvWriter(const std::vector<std::string>& header) : ncols_(header.size()) {
  if (header.empty()) throw std::invalid_argument("CsvWriter: empty header");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) buf_ += ',';
    buf_ += header[i];
  }
  buf_ += '\n';
}

CsvWriter& CsvWriter::cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return cell(std::string(buf));
}

CsvWriter& CsvWriter::cell(int v) { return cell(std::to_string(v)); }
CsvWriter& CsvWriter::cell(long long v) { return cell(std::to_string(v)); }

CsvWriter& CsvWriter::cell(const std::string& s) {
  if (col_ >= ncols_) throw std::logic_error("CsvWriter: row too wide");
  if (col_) buf_ += ',';
  buf_ += s;
  ++col_;
  return *this;
}

void CsvWriter::endrow() {
  if (col_ != ncols_) throw std::logic_error("CsvWriter: row width mismatch");
  buf_ += '\n';
  col_ = 0;
}

void CsvWriter::write(const std::string& path) const {
  if (col_ != 0) throw std::logic_error("CsvWriter: unfinished row");
  write_text_file(path, buf_);
}

std::size_t CsvTable::col(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::runtime_error("csv column not found: " + name);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open csv: " + path);
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      cells.push_back(line.substr(pos, comma == std::string::npos ? comma : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (first) {
      t.header = cells;
      first = false;
      continue;
    }
    if (cells.size() != t.header.size())
      throw std::runtime_error("csv row width mismatch in " + path);
    std::vector<double> row(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      char* end = nullptr;
      row[i] = std::strtod(cells[i].c_str(), &end);
      if (end == cells[i].c_str() || *end != '\0')
        throw std::runtime_error("non-numeric csv cell '" + cells[i] + "' in " + path);
    }
    t.rows.push_back(std::move(row));
  }
  if (first) throw std::runtime_error("empty csv: " + path);
  return t;
}

}  // namespace anisomhd

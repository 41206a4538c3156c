#include "scalebench/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "scalebench/error.hpp"

namespace scalebench::report {

Format parse_format(std::string_view s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "table") return Format::Table;
  throw Error(ErrorKind::InvalidArgument, "unknown format '" + std::string(s) + "' (json, csv, table)");
}

const char* to_string(Format f) {
  switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Table: return "table";
  }
  return "json";
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

Json to_json(const Certificate& c) {
  Json j;
  j["check"] = c.check;
  j["inputs-digest"] = c.inputs_digest;
  j["measured"] = number(c.measured);
  j["bound"] = number(c.bound);
  j["slack"] = number(c.slack);
  j["pass"] = c.pass;
  j["details"] = c.details;
  return j;
}

std::string cell_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return v.dump();
  if (v.is_number_float()) {
    char buf[64];
    const double x = v.get<double>();
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
  }
  if (v.is_null()) return "";
  return v.dump();
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string aligned(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t k = 0; k < header.size(); ++k) width[k] = header[k].size();
  for (const auto& r : rows)
    for (std::size_t k = 0; k < r.size() && k < width.size(); ++k) width[k] = std::max(width[k], r[k].size());
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      out << cells[k];
      if (k + 1 < cells.size()) out << std::string(width[k] - cells[k].size() + 2, ' ');
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

}  // namespace

std::string render(const std::vector<Certificate>& certs, Format f) {
  if (f == Format::Json) {
    Json arr = Json::array();
    for (const auto& c : certs) arr.push_back(to_json(c));
    return arr.dump(2) + "\n";
  }
  const std::vector<std::string> header{"check", "inputs-digest", "measured", "bound", "slack", "pass"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : certs)
    rows.push_back({c.check, c.inputs_digest, cell_text(number(c.measured)), cell_text(number(c.bound)),
                    cell_text(number(c.slack)), c.pass ? "pass" : "FAIL"});
  if (f == Format::Table) return aligned(header, rows);
  std::string out;
  for (std::size_t k = 0; k < header.size(); ++k) out += (k ? "," : "") + header[k];
  out += '\n';
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) out += (k ? "," : "") + csv_escape(r[k]);
    out += '\n';
  }
  return out;
}

std::string render(const Table& t, Format f) {
  if (f == Format::Json) {
    Json arr = Json::array();
    for (const auto& r : t.rows) {
      Json obj = Json::object();
      for (std::size_t k = 0; k < t.columns.size() && k < r.size(); ++k) obj[t.columns[k]] = r[k];
      arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : t.rows) {
    std::vector<std::string> cells;
    for (const auto& v : r) cells.push_back(cell_text(v));
    rows.push_back(std::move(cells));
  }
  if (f == Format::Table) return aligned(t.columns, rows);
  std::string out;
  for (std::size_t k = 0; k < t.columns.size(); ++k) out += (k ? "," : "") + t.columns[k];
  out += '\n';
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) out += (k ? "," : "") + csv_escape(r[k]);
    out += '\n';
  }
  return out;
}

}  // namespace scalebench::report

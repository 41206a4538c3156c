#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "scalebench/linalg.hpp"

namespace scalebench::report {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv, Table };
Format parse_format(std::string_view s);
const char* to_string(Format f);

// FNV-1a 64-bit, lowercase hex.
std::string fnv1a_hex(std::string_view data);

// Non-finite doubles become the strings "inf", "-inf", "nan".
Json number(double x);
Json matrix_json(const Matrix& m);
Json vector_json(const Vector& v);

struct Certificate {
  std::string check;
  std::string inputs_digest;
  double measured = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  bool pass = false;
  Json details = Json::object();
  double runtime_seconds = 0.0;
};

Json to_json(const Certificate& c);
std::string render(const std::vector<Certificate>& certs, Format f);

// A table with named columns rendered as CSV or aligned text; JSON gives an
// array of row objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};
std::string render(const Table& t, Format f);

// Shortest round-trip text for doubles; integers and strings verbatim.
std::string cell_text(const Json& v);

}  // namespace scalebench::report

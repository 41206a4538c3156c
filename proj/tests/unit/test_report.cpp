#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <limits>

#include "scalebench/error.hpp"
#include "scalebench/report.hpp"

using namespace scalebench;
using namespace scalebench::report;

TEST_CASE("FNV-1a reference vectors") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("non-finite numbers become strings") {
  CHECK(number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(number(std::nan("")) == "nan");
  CHECK(number(0.25) == 0.25);
}

TEST_CASE("formats") {
  CHECK(parse_format("json") == Format::Json);
  CHECK(parse_format("csv") == Format::Csv);
  CHECK(std::string(to_string(Format::Table)) == "table");
  CHECK_THROWS_AS(parse_format("xml"), Error);
}

TEST_CASE("certificate JSON keys and order") {
  Certificate c{"demo", "abc", 0.5, 1.0, 0.5, true, Json{{"k", 1}}, 3.0};
  const Json j = to_json(c);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"check", "inputs-digest", "measured", "bound", "slack", "pass", "details"});
  const std::string text = render({c}, Format::Json);
  CHECK(Json::parse(text).size() == 1);
  CHECK(render({c}, Format::Csv).find("demo") != std::string::npos);
}

TEST_CASE("tables") {
  Table t{{"a", "b"}, {{1, 0.1}, {2, "x"}}};
  CHECK(render(t, Format::Csv) == "a,b\n1,0.1\n2,x\n");
  const Json j = Json::parse(render(t, Format::Json));
  CHECK(j[1]["b"] == "x");
  const std::string tab = render(t, Format::Table);
  CHECK(tab.find("a  b") == 0);
}

TEST_CASE("cell text is the shortest round trip") {
  CHECK(cell_text(0.1) == "0.1");
  CHECK(cell_text(1.0 / 3.0) == "0.3333333333333333");
  CHECK(cell_text(Json(7)) == "7");
  CHECK(cell_text(Json(true)) == "true");
}

TEST_CASE("matrix and vector JSON") {
  Matrix m(2, 2);
  m << 1, 2, 3, 4;
  CHECK(matrix_json(m).dump() == "[[1.0,2.0],[3.0,4.0]]");
  Vector v(2);
  v << 0.5, 1.5;
  CHECK(vector_json(v).dump() == "[0.5,1.5]");
}

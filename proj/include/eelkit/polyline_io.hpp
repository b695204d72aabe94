#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "eelkit/core.hpp"
#include "eelkit/curve.hpp"

namespace eelkit {

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline double parse_double(std::string_view field, std::size_t line) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ParseError("malformed number '" + std::string(field) + "'", line);
  return v;
}

}  // namespace detail

// CSV polyline: header "t,x1,...,xd", one row per sample, 17 significant
// digits, LF line endings.
inline void write_polyline_csv(std::ostream& os, const SampledCurve& c) {
  validate_curve(c);
  os << "t";
  for (std::size_t j = 1; j <= c.dim; ++j) os << ",x" << j;
  os << "\n";
  for (std::size_t i = 0; i < c.count(); ++i) {
    os << detail::format_double(c.params[i]);
    auto p = c.point(i);
    for (std::size_t j = 0; j < c.dim; ++j) os << "," << detail::format_double(p[j]);
    os << "\n";
  }
}

inline void write_polyline_csv(const std::string& path, const SampledCurve& c) {
  std::ofstream os(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!os) throw DomainError("cannot open for writing: " + path);
  write_polyline_csv(os, c);
  if (!os) throw DomainError("write failed: " + path);
}

inline SampledCurve read_polyline_csv(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;

  auto split = [](const std::string& s, std::vector<std::string_view>& out) {
    out.clear();
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = s.find(',', start);
      if (comma == std::string::npos) {
        out.emplace_back(s.data() + start, s.size() - start);
        return;
      }
      out.emplace_back(s.data() + start, comma - start);
      start = comma + 1;
    }
  };

  if (!std::getline(is, line)) throw ParseError("empty input, header required", 1);
  ++lineno;
  if (!line.empty() && line.back() == '\r')
    throw ParseError("CRLF line ending, expected LF", lineno);
  std::vector<std::string_view> fields;
  split(line, fields);
  if (fields.size() < 2 || fields[0] != "t")
    throw ParseError("header must be t,x1,...,xd", lineno);
  for (std::size_t j = 1; j < fields.size(); ++j) {
    if (fields[j] != "x" + std::to_string(j))
      throw ParseError("header must be t,x1,...,xd", lineno);
  }
  SampledCurve c;
  c.dim = fields.size() - 1;

  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      throw ParseError("CRLF line ending, expected LF", lineno);
    if (line.empty()) {
      // Only a trailing blank (EOF after final newline) is tolerated.
      if (is.peek() == std::char_traits<char>::eof()) break;
      throw ParseError("blank line", lineno);
    }
    split(line, fields);
    if (fields.size() != c.dim + 1)
      throw ParseError("expected " + std::to_string(c.dim + 1) + " fields, got " +
                           std::to_string(fields.size()),
                       lineno);
    const double t = detail::parse_double(fields[0], lineno);
    Vec p(c.dim);
    for (std::size_t j = 0; j < c.dim; ++j) p[j] = detail::parse_double(fields[j + 1], lineno);
    if (!c.params.empty() && !(t > c.params.back()))
      throw ParseError("parameters must be strictly increasing", lineno);
    c.push(t, p);
  }
  validate_curve(c);
  return c;
}

inline SampledCurve read_polyline_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DomainError("cannot open for reading: " + path);
  return read_polyline_csv(is);
}

}  // namespace eelkit

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ippsim::toml {

// Minimal TOML subset: [section] headers (dotted allowed), key = value lines
// with string/integer/float/boolean scalars, and # comments. Enough for flat
// scenario files; arrays, inline tables, dates, and multiline strings are
// rejected with a located error.

struct Value {
  enum class Kind { string, integer, floating, boolean };
  Kind kind = Kind::string;
  std::string str;
  long long integer = 0;
  double number = 0.0;  // also set for integers
  bool boolean = false;
  int line = 0;
  int col = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int col);
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

// Keys are flattened to "section.key" form.
using Table = std::map<std::string, Value>;

Table parse(std::string_view text);
Table parse_file(const std::string& path);

}  // namespace ippsim::toml

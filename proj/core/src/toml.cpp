#include "ippsim/toml.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ippsim::toml {
namespace {

bool is_bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Comment start: first '#' outside a quoted string.
std::size_t comment_pos(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) quoted = !quoted;
    else if (line[i] == '#' && !quoted) return i;
  }
  return std::string_view::npos;
}

std::string parse_basic_string(std::string_view body, int line_no, int col) {
  std::string out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] != '\\') {
      out.push_back(body[i]);
      continue;
    }
    if (++i >= body.size())
      throw ParseError("dangling escape in string", line_no, col + static_cast<int>(i));
    switch (body[i]) {
      case '"': out.push_back('"'); break;
      case '\\': out.push_back('\\'); break;
      case 'n': out.push_back('\n'); break;
      case 't': out.push_back('\t'); break;
      case 'r': out.push_back('\r'); break;
      default:
        throw ParseError("unsupported escape in string", line_no, col + static_cast<int>(i));
    }
  }
  return out;
}

Value parse_scalar(std::string_view token, int line_no, int col) {
  Value v;
  v.line = line_no;
  v.col = col;
  if (token.empty()) throw ParseError("missing value", line_no, col);

  if (token.front() == '"') {
    if (token.size() < 2 || token.back() != '"')
      throw ParseError("unterminated string", line_no, col);
    v.kind = Value::Kind::string;
    v.str = parse_basic_string(token.substr(1, token.size() - 2), line_no, col + 1);
    return v;
  }
  if (token == "true" || token == "false") {
    v.kind = Value::Kind::boolean;
    v.boolean = token == "true";
    return v;
  }

  const std::string owned(token);
  char* end = nullptr;
  errno = 0;
  const long long as_int = std::strtoll(owned.c_str(), &end, 10);
  if (errno == 0 && end == owned.c_str() + owned.size() &&
      owned.find_first_of(".eE") == std::string::npos) {
    v.kind = Value::Kind::integer;
    v.integer = as_int;
    v.number = static_cast<double>(as_int);
    return v;
  }
  errno = 0;
  const double as_double = std::strtod(owned.c_str(), &end);
  if (errno == 0 && end == owned.c_str() + owned.size()) {
    v.kind = Value::Kind::floating;
    v.number = as_double;
    return v;
  }
  throw ParseError("value is not a string, number, or boolean", line_no, col);
}

}  // namespace

ParseError::ParseError(const std::string& message, int line, int col)
    : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                         ": " + message),
      line_(line),
      col_(col) {}

Table parse(std::string_view text) {
  Table table;
  std::string prefix;
  int line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                          : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const std::size_t hash = comment_pos(raw);
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const int indent = static_cast<int>(line.data() - raw.data()) + 1;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_no, indent);
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) throw ParseError("empty section name", line_no, indent);
      for (char c : name)
        if (!is_bare_key_char(c))
          throw ParseError("invalid character in section name", line_no, indent);
      prefix = std::string(name) + ".";
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected key = value", line_no, indent);
    const std::string_view key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("empty key", line_no, indent);
    for (char c : key)
      if (!is_bare_key_char(c)) throw ParseError("invalid character in key", line_no, indent);

    const std::string_view value_token = trim(line.substr(eq + 1));
    const int value_col = value_token.empty()
                              ? static_cast<int>(line.data() - raw.data() + eq) + 2
                              : static_cast<int>(value_token.data() - raw.data()) + 1;
    Value value = parse_scalar(value_token, line_no, value_col);

    const std::string full_key = prefix + std::string(key);
    if (table.count(full_key))
      throw ParseError("duplicate key '" + full_key + "'", line_no, indent);
    table.emplace(full_key, std::move(value));
  }
  return table;
}

Table parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace ippsim::toml

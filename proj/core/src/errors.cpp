#include "renyi/errors.hpp"

namespace renyi {

namespace {

std::string format_parse_message(const std::string& message, int line,
                                 const std::string& key) {
  std::string out;
  if (line > 0) out += "line " + std::to_string(line) + ": ";
  if (!key.empty()) out += "key '" + key + "': ";
  out += message;
  return out;
}

}  // namespace

ParseError::ParseError(const std::string& message, int line, std::string key)
    : Error(format_parse_message(message, line, key)),
      line_(line),
      key_(std::move(key)) {}

}  // namespace renyi

#pragma once
// Strict JSON reading shared by the file loaders.

#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bdi/common.hpp"

namespace bdi::detail {

using Json = nlohmann::ordered_json;

/// Parses text, mapping syntax errors to ParseError with line and column.
inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    int line = 1;
    int column = 1;
    std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    auto colon = what.rfind(": ");
    throw ParseError(colon == std::string::npos ? what : what.substr(colon + 2), line, column);
  }
}

inline void expect(bool ok, const std::string& context, std::string_view message) {
  if (!ok) throw ParseError(context + ": " + std::string(message));
}

inline const Json& object(const Json& j, const std::string& context) {
  expect(j.is_object(), context, "expected an object");
  return j;
}

inline const Json& array(const Json& j, const std::string& context) {
  expect(j.is_array(), context, "expected an array");
  return j;
}

/// Rejects keys outside `allowed`.
inline void only_keys(const Json& j, std::initializer_list<std::string_view> allowed,
                      const std::string& context) {
  object(j, context);
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    expect(known, context, "unknown field '" + key + "'");
  }
}

inline const Json& field(const Json& j, const std::string& key, const std::string& context) {
  object(j, context);
  auto it = j.find(key);
  expect(it != j.end(), context, "missing field '" + key + "'");
  return *it;
}

inline std::string string_of(const Json& j, const std::string& context) {
  expect(j.is_string(), context, "expected a string");
  return j.get<std::string>();
}

inline double number_of(const Json& j, const std::string& context) {
  expect(j.is_number(), context, "expected a number");
  return j.get<double>();
}

/// A probability written as an exact decimal string ("0.42").
inline double decimal_of(const Json& j, const std::string& context) {
  expect(j.is_string(), context, "expected a decimal string");
  auto value = parse_number(j.get<std::string>());
  expect(value.has_value(), context, "malformed decimal '" + j.get<std::string>() + "'");
  return *value;
}

}  // namespace bdi::detail

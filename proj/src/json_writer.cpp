#include "termdata/json_writer.hpp"

#include <cstdio>

namespace termdata {

std::string json_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 2);
  for (unsigned char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

void JsonWriter::indent() {
  out_ += '\n';
  out_.append(stack_.size() * 2, ' ');
}

void JsonWriter::before_value() {
  if (expecting_value_) {
    expecting_value_ = false;
    return;
  }
  if (!stack_.empty()) {
    if (scope_has_items_) out_ += ',';
    indent();
  }
  scope_has_items_ = true;
}

JsonWriter& JsonWriter::begin_object() {
  before_value();
  out_ += '{';
  stack_ += '{';
  scope_has_items_ = false;
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  before_value();
  out_ += '[';
  stack_ += '[';
  scope_has_items_ = false;
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  const bool had_items = scope_has_items_;
  stack_.pop_back();
  if (had_items) indent();
  out_ += '}';
  scope_has_items_ = true;
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  const bool had_items = scope_has_items_;
  stack_.pop_back();
  if (had_items) indent();
  out_ += ']';
  scope_has_items_ = true;
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view name) {
  if (scope_has_items_) out_ += ',';
  indent();
  out_ += '"';
  out_ += json_escape(name);
  out_ += "\": ";
  scope_has_items_ = true;
  expecting_value_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view text) {
  before_value();
  out_ += '"';
  out_ += json_escape(text);
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::value(double number) {
  before_value();
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", number);
  out_ += buf;
  return *this;
}

JsonWriter& JsonWriter::value(std::int64_t number) {
  before_value();
  out_ += std::to_string(number);
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t number) {
  before_value();
  out_ += std::to_string(number);
  return *this;
}

JsonWriter& JsonWriter::value(bool flag) {
  before_value();
  out_ += flag ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::null() {
  before_value();
  out_ += "null";
  return *this;
}

}  // namespace termdata

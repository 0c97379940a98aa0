#ifndef TERMDATA_JSON_WRITER_HPP
#define TERMDATA_JSON_WRITER_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace termdata {

// Minimal JSON emitter for reports. Keys come out in insertion order and
// floats print as fixed 6-decimal numbers, so equal reports are equal bytes.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();

  JsonWriter& key(std::string_view name);
  JsonWriter& value(std::string_view text);
  JsonWriter& value(const char* text) { return value(std::string_view(text)); }
  JsonWriter& value(double number);
  JsonWriter& value(std::int64_t number);
  JsonWriter& value(std::uint64_t number);
  JsonWriter& value(int number) { return value(static_cast<std::int64_t>(number)); }
  JsonWriter& value(bool flag);
  JsonWriter& null();

  template <typename T>
  JsonWriter& kv(std::string_view name, const T& v) {
    key(name);
    return value(v);
  }

  // Finished document with a trailing newline.
  std::string str() const { return out_ + "\n"; }

 private:
  void before_value();
  void indent();

  std::string out_;
  std::string stack_;  // '{' or '[' per open scope
  bool expecting_value_ = false;
  bool scope_has_items_ = false;
};

std::string json_escape(std::string_view text);

}  // namespace termdata

#endif  // TERMDATA_JSON_WRITER_HPP

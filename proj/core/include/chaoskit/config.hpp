#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace chaoskit::config {

/// One configuration value: a number, string, boolean, or a flat array of
/// numbers or strings.
struct Value {
    enum class Kind { Number, String, Boolean, NumberArray, StringArray };
    Kind kind = Kind::Number;
    double num = 0.0;
    bool boolean = false;
    std::string str;
    std::vector<double> nums;
    std::vector<std::string> strs;
    std::size_t line = 0;
};

/// Parsed key-value configuration with dotted section keys: the file
///   [sweep]
///   trials = 5
/// yields the entry "sweep.trials". Typed getters throw param_error with the key
/// name on missing keys or kind mismatches; the *_or variants substitute a default
/// when the key is absent (but still reject a present key of the wrong kind).
class Table {
  public:
    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    double get_double(const std::string& key) const;
    std::int64_t get_int(const std::string& key) const;
    std::uint64_t get_uint(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::vector<double> get_double_array(const std::string& key) const;
    std::vector<std::string> get_string_array(const std::string& key) const;

    double get_double_or(const std::string& key, double def) const;
    std::int64_t get_int_or(const std::string& key, std::int64_t def) const;
    std::uint64_t get_uint_or(const std::string& key, std::uint64_t def) const;
    bool get_bool_or(const std::string& key, bool def) const;
    std::string get_string_or(const std::string& key, const std::string& def) const;

    void set(const std::string& key, Value v) { entries_[key] = std::move(v); }
    const std::map<std::string, Value>& entries() const { return entries_; }

  private:
    const Value& require(const std::string& key, Value::Kind kind) const;
    std::map<std::string, Value> entries_;
};

/// Minimal TOML-style syntax: [section] and [section.sub] headers, key = value
/// lines, # comments, double-quoted strings with \\ \" \n \t escapes, booleans
/// true/false, numbers, and single-line arrays of numbers or strings. Errors name
/// the offending line.
Table parse_config(const std::string& text);
Table load_config(const std::string& path);

}  // namespace chaoskit::config

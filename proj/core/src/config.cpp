#include "chaoskit/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "chaoskit/common.hpp"

namespace chaoskit::config {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw param_error("config line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

// Removes a trailing # comment that is not inside a quoted string.
std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'))
            return false;
    return true;
}

std::string parse_quoted(const std::string& raw, std::size_t line) {
    if (raw.size() < 2 || raw.back() != '"') fail(line, "unterminated string");
    std::string out;
    for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
        char c = raw[i];
        if (c == '\\') {
            if (i + 2 >= raw.size()) fail(line, "dangling escape");
            char e = raw[++i];
            switch (e) {
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                default: fail(line, std::string("unknown escape \\") + e);
            }
        } else if (c == '"') {
            fail(line, "unexpected quote inside string");
        } else {
            out += c;
        }
    }
    return out;
}

double parse_number(const std::string& raw, std::size_t line) {
    const char* s = raw.c_str();
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s || *end != '\0') fail(line, "cannot parse number '" + raw + "'");
    return v;
}

// Splits a single-line array body on commas at depth 0, respecting strings.
std::vector<std::string> split_array_items(const std::string& body, std::size_t line) {
    std::vector<std::string> items;
    std::string cur;
    bool in_str = false;
    for (std::size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c == '"' && (i == 0 || body[i - 1] != '\\')) in_str = !in_str;
        if (c == ',' && !in_str) {
            items.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    std::string last = trim(cur);
    if (!last.empty()) items.push_back(last);
    if (in_str) fail(line, "unterminated string in array");
    return items;
}

Value parse_value(const std::string& raw, std::size_t line) {
    Value v;
    v.line = line;
    if (raw.empty()) fail(line, "missing value");
    if (raw.front() == '"') {
        v.kind = Value::Kind::String;
        v.str = parse_quoted(raw, line);
        return v;
    }
    if (raw == "true" || raw == "false") {
        v.kind = Value::Kind::Boolean;
        v.boolean = raw == "true";
        return v;
    }
    if (raw.front() == '[') {
        if (raw.back() != ']') fail(line, "arrays must close on the same line");
        std::vector<std::string> items =
            split_array_items(raw.substr(1, raw.size() - 2), line);
        if (items.empty()) fail(line, "empty arrays are not supported");
        if (items.front().front() == '"') {
            v.kind = Value::Kind::StringArray;
            for (const std::string& it : items) {
                if (it.front() != '"') fail(line, "mixed array element types");
                v.strs.push_back(parse_quoted(it, line));
            }
        } else {
            v.kind = Value::Kind::NumberArray;
            for (const std::string& it : items) v.nums.push_back(parse_number(it, line));
        }
        return v;
    }
    v.kind = Value::Kind::Number;
    v.num = parse_number(raw, line);
    return v;
}

const char* kind_name(Value::Kind k) {
    switch (k) {
        case Value::Kind::Number: return "number";
        case Value::Kind::String: return "string";
        case Value::Kind::Boolean: return "boolean";
        case Value::Kind::NumberArray: return "number array";
        case Value::Kind::StringArray: return "string array";
    }
    return "?";
}

}  // namespace

Table parse_config(const std::string& text) {
    Table t;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']') fail(line_no, "unterminated section header");
            section = trim(body.substr(1, body.size() - 2));
            if (!valid_key(section)) fail(line_no, "invalid section name '" + section + "'");
            continue;
        }
        std::size_t eq = body.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value");
        std::string key = trim(body.substr(0, eq));
        if (!valid_key(key) || key.find('.') != std::string::npos)
            fail(line_no, "invalid key '" + key + "'");
        std::string full = section.empty() ? key : section + "." + key;
        if (t.has(full)) fail(line_no, "duplicate key '" + full + "'");
        t.set(full, parse_value(trim(body.substr(eq + 1)), line_no));
    }
    return t;
}

Table load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw param_error("cannot open: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

const Value& Table::require(const std::string& key, Value::Kind kind) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw param_error("config: missing key '" + key + "'");
    if (it->second.kind != kind)
        throw param_error("config: key '" + key + "' should be a " +
                          std::string(kind_name(kind)) + ", got " +
                          kind_name(it->second.kind));
    return it->second;
}

double Table::get_double(const std::string& key) const {
    return require(key, Value::Kind::Number).num;
}

std::int64_t Table::get_int(const std::string& key) const {
    double v = get_double(key);
    if (std::floor(v) != v) throw param_error("config: key '" + key + "' must be an integer");
    return static_cast<std::int64_t>(v);
}

std::uint64_t Table::get_uint(const std::string& key) const {
    std::int64_t v = get_int(key);
    if (v < 0) throw param_error("config: key '" + key + "' must be >= 0");
    return static_cast<std::uint64_t>(v);
}

bool Table::get_bool(const std::string& key) const {
    return require(key, Value::Kind::Boolean).boolean;
}

std::string Table::get_string(const std::string& key) const {
    return require(key, Value::Kind::String).str;
}

std::vector<double> Table::get_double_array(const std::string& key) const {
    return require(key, Value::Kind::NumberArray).nums;
}

std::vector<std::string> Table::get_string_array(const std::string& key) const {
    return require(key, Value::Kind::StringArray).strs;
}

double Table::get_double_or(const std::string& key, double def) const {
    return has(key) ? get_double(key) : def;
}

std::int64_t Table::get_int_or(const std::string& key, std::int64_t def) const {
    return has(key) ? get_int(key) : def;
}

std::uint64_t Table::get_uint_or(const std::string& key, std::uint64_t def) const {
    return has(key) ? get_uint(key) : def;
}

bool Table::get_bool_or(const std::string& key, bool def) const {
    return has(key) ? get_bool(key) : def;
}

std::string Table::get_string_or(const std::string& key, const std::string& def) const {
    return has(key) ? get_string(key) : def;
}

}  // namespace chaoskit::config

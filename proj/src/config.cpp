#include "capplan/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

namespace capplan {

namespace {

std::string trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Strips a trailing comment, respecting quoted strings.
std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_string) {
            if (c == '\\') ++i;
            else if (c == '"') in_string = false;
        } else if (c == '"') {
            in_string = true;
        } else if (c == '#') {
            return line.substr(0, i);
        }
    }
    return line;
}

class ValueParser {
public:
    ValueParser(const std::string& text, std::size_t line) : text_(text), line_(line) {}

    ConfigValue parse() {
        ConfigValue v = parse_one();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters after value");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        throw config_error("line " + std::to_string(line_) + ": " + msg, line_);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    ConfigValue parse_one() {
        skip_ws();
        if (pos_ >= text_.size()) fail("missing value");
        char c = text_[pos_];
        if (c == '"') return parse_string();
        if (c == '[') return parse_array();
        return parse_scalar();
    }

    ConfigValue parse_string() {
        ++pos_;  // opening quote
        std::string out;
        while (pos_ < text_.size()) {
            char c = text_[pos_++];
            if (c == '"') return ConfigValue{out};
            if (c == '\\') {
                if (pos_ >= text_.size()) fail("dangling escape in string");
                char e = text_[pos_++];
                switch (e) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default: fail(std::string("unsupported escape \\") + e);
                }
            } else {
                out += c;
            }
        }
        fail("unterminated string");
    }

    ConfigValue parse_array() {
        ++pos_;  // '['
        ConfigArray items;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ']') {
            ++pos_;
            return ConfigValue{items};
        }
        while (true) {
            items.push_back(parse_one());
            skip_ws();
            if (pos_ >= text_.size()) fail("unterminated array");
            char c = text_[pos_++];
            if (c == ']') break;
            if (c != ',') fail("expected ',' or ']' in array");
        }
        return ConfigValue{items};
    }

    ConfigValue parse_scalar() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']') ++pos_;
        std::string token = trimmed(text_.substr(start, pos_ - start));
        if (token == "true") return ConfigValue{true};
        if (token == "false") return ConfigValue{false};
        const char* begin = token.c_str();
        char* end = nullptr;
        double num = std::strtod(begin, &end);
        if (end == begin + token.size() && !token.empty() && std::isfinite(num))
            return ConfigValue{num};
        fail("cannot parse value '" + token + "' (strings must be quoted)");
    }

    const std::string& text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

std::vector<std::string> split_path(const std::string& path, std::size_t line) {
    std::vector<std::string> parts;
    std::stringstream ss(path);
    std::string part;
    while (std::getline(ss, part, '.')) {
        part = trimmed(part);
        if (part.empty()) throw config_error("line " + std::to_string(line) + ": empty path segment", line);
        parts.push_back(part);
    }
    if (parts.empty()) throw config_error("line " + std::to_string(line) + ": empty table name", line);
    return parts;
}

}  // namespace

double ConfigValue::as_number(const std::string& key) const {
    if (auto* d = std::get_if<double>(&data)) return *d;
    throw config_error("key '" + key + "' is not a number");
}

std::int64_t ConfigValue::as_integer(const std::string& key) const {
    double d = as_number(key);
    if (d != std::floor(d)) throw config_error("key '" + key + "' is not an integer");
    return std::int64_t(d);
}

bool ConfigValue::as_boolean(const std::string& key) const {
    if (auto* b = std::get_if<bool>(&data)) return *b;
    throw config_error("key '" + key + "' is not a boolean");
}

const std::string& ConfigValue::as_string(const std::string& key) const {
    if (auto* s = std::get_if<std::string>(&data)) return *s;
    throw config_error("key '" + key + "' is not a string");
}

const ConfigArray& ConfigValue::as_array(const std::string& key) const {
    if (auto* a = std::get_if<ConfigArray>(&data)) return *a;
    throw config_error("key '" + key + "' is not an array");
}

double ConfigTable::number(const std::string& key, double fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second.as_number(key);
}

std::int64_t ConfigTable::integer(const std::string& key, std::int64_t fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second.as_integer(key);
}

bool ConfigTable::boolean(const std::string& key, bool fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second.as_boolean(key);
}

std::string ConfigTable::str(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second.as_string(key);
}

std::vector<double> ConfigTable::number_list(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) return {};
    std::vector<double> out;
    for (const ConfigValue& v : it->second.as_array(key)) out.push_back(v.as_number(key));
    return out;
}

std::vector<std::string> ConfigTable::string_list(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) return {};
    std::vector<std::string> out;
    for (const ConfigValue& v : it->second.as_array(key)) out.push_back(v.as_string(key));
    return out;
}

const ConfigTable* ConfigTable::table(const std::string& name) const {
    auto it = tables.find(name);
    return it == tables.end() ? nullptr : &it->second;
}

const std::vector<ConfigTable>* ConfigTable::array(const std::string& name) const {
    auto it = table_arrays.find(name);
    return it == table_arrays.end() ? nullptr : &it->second;
}

ConfigTable parse_config(std::istream& in) {
    ConfigTable root;
    ConfigTable* current = &root;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        line = trimmed(strip_comment(line));
        if (line.empty()) continue;

        if (line.front() == '[') {
            const bool is_array = line.size() > 1 && line[1] == '[';
            const std::string closer = is_array ? "]]" : "]";
            const std::size_t open = is_array ? 2 : 1;
            if (line.size() < open + closer.size() ||
                line.compare(line.size() - closer.size(), closer.size(), closer) != 0)
                throw config_error("line " + std::to_string(line_no) + ": malformed table header",
                                   line_no);
            const std::string path = line.substr(open, line.size() - open - closer.size());
            std::vector<std::string> parts = split_path(path, line_no);

            ConfigTable* walk = &root;
            for (std::size_t i = 0; i + 1 < parts.size(); ++i) walk = &walk->tables[parts[i]];
            if (is_array) {
                auto& arr = walk->table_arrays[parts.back()];
                arr.emplace_back();
                current = &arr.back();
            } else {
                current = &walk->tables[parts.back()];
            }
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(line_no) + ": expected key = value",
                               line_no);
        std::string key = trimmed(line.substr(0, eq));
        if (key.size() >= 2 && key.front() == '"' && key.back() == '"')
            key = key.substr(1, key.size() - 2);
        if (key.empty())
            throw config_error("line " + std::to_string(line_no) + ": empty key", line_no);
        const std::string value_text = trimmed(line.substr(eq + 1));
        current->values[key] = ValueParser(value_text, line_no).parse();
    }
    return root;
}

ConfigTable load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    return parse_config(in);
}

}  // namespace capplan

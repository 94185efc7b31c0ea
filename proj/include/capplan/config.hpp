#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "capplan/errors.hpp"

namespace capplan {

class config_error : public error {
public:
    config_error(const std::string& what, std::size_t line = 0) : error(what), line(line) {}
    std::size_t line;
};

// TOML subset: comments, [tables], [[arrays of tables]] with dotted paths,
// and key = value where value is a quoted string, number, boolean, or a
// single-line array of those. Enough for declarative run configs; anything
// fancier is rejected with a located error.
struct ConfigValue;
using ConfigArray = std::vector<ConfigValue>;

struct ConfigValue {
    std::variant<bool, double, std::string, ConfigArray> data;

    bool is_string() const { return std::holds_alternative<std::string>(data); }
    bool is_number() const { return std::holds_alternative<double>(data); }

    double as_number(const std::string& key) const;
    std::int64_t as_integer(const std::string& key) const;
    bool as_boolean(const std::string& key) const;
    const std::string& as_string(const std::string& key) const;
    const ConfigArray& as_array(const std::string& key) const;
};

struct ConfigTable {
    std::map<std::string, ConfigValue> values;
    std::map<std::string, ConfigTable> tables;
    std::map<std::string, std::vector<ConfigTable>> table_arrays;

    bool has(const std::string& key) const { return values.count(key) != 0; }

    double number(const std::string& key, double fallback) const;
    std::int64_t integer(const std::string& key, std::int64_t fallback) const;
    bool boolean(const std::string& key, bool fallback) const;
    std::string str(const std::string& key, const std::string& fallback) const;
    std::vector<double> number_list(const std::string& key) const;      // empty when absent
    std::vector<std::string> string_list(const std::string& key) const; // empty when absent

    // nullptr when the subtable / array is absent
    const ConfigTable* table(const std::string& name) const;
    const std::vector<ConfigTable>* array(const std::string& name) const;
};

ConfigTable parse_config(std::istream& in);
ConfigTable load_config_file(const std::string& path);

}  // namespace capplan

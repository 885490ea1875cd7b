#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace igam {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key-value configuration parsed from a TOML-style file: `key = value`
/// lines, `[section]` headers prefixing subsequent keys with "section.",
/// `#` comments. Values: strings, booleans, numbers and homogeneous arrays.
class Config {
public:
    using Value = std::variant<bool, double, std::string, std::vector<double>,
                               std::vector<std::string>>;

    static Config parse(const std::string& text);
    static Config parse_file(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    int integer(const std::string& key) const;
    int integer_or(const std::string& key, int fallback) const;
    bool boolean_or(const std::string& key, bool fallback) const;
    std::string str(const std::string& key) const;
    std::string str_or(const std::string& key, const std::string& fallback) const;
    std::vector<double> numbers(const std::string& key) const;
    std::vector<double> numbers_or(const std::string& key, std::vector<double> fallback) const;

    const std::map<std::string, Value>& entries() const { return values_; }

private:
    const Value& get(const std::string& key) const;
    std::map<std::string, Value> values_;
};

} // namespace igam

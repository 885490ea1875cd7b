#include "igam/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace igam {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// strip an unquoted trailing comment
std::string strip_comment(const std::string& s) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_string = !in_string;
        if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
}

bool parse_number(const std::string& s, double& out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

Config::Value parse_scalar(const std::string& raw, const std::string& key, int line) {
    const std::string t = trim(raw);
    if (t.size() >= 2 && t.front() == '"' && t.back() == '"')
        return t.substr(1, t.size() - 2);
    if (t == "true") return true;
    if (t == "false") return false;
    double v = 0.0;
    if (parse_number(t, v)) return v;
    std::ostringstream os;
    os << "config: malformed value for key '" << key << "' on line " << line;
    throw ConfigError(os.str());
}

Config::Value parse_value(const std::string& raw, const std::string& key, int line) {
    const std::string t = trim(raw);
    if (t.empty()) {
        std::ostringstream os;
        os << "config: missing value for key '" << key << "' on line " << line;
        throw ConfigError(os.str());
    }
    if (t.front() != '[') return parse_scalar(t, key, line);
    if (t.back() != ']') {
        std::ostringstream os;
        os << "config: unterminated array for key '" << key << "' on line " << line;
        throw ConfigError(os.str());
    }
    std::vector<Config::Value> items;
    std::string body = t.substr(1, t.size() - 2);
    std::string item;
    bool in_string = false;
    for (char c : body) {
        if (c == '"') in_string = !in_string;
        if (c == ',' && !in_string) {
            if (!trim(item).empty()) items.push_back(parse_scalar(item, key, line));
            item.clear();
        } else {
            item += c;
        }
    }
    if (!trim(item).empty()) items.push_back(parse_scalar(item, key, line));

    if (items.empty()) return std::vector<double>{};
    if (std::holds_alternative<std::string>(items.front())) {
        std::vector<std::string> out;
        for (auto& it : items) {
            if (!std::holds_alternative<std::string>(it))
                throw ConfigError("config: mixed array types for key '" + key + "'");
            out.push_back(std::get<std::string>(it));
        }
        return out;
    }
    std::vector<double> out;
    for (auto& it : items) {
        if (!std::holds_alternative<double>(it))
            throw ConfigError("config: mixed array types for key '" + key + "'");
        out.push_back(std::get<double>(it));
    }
    return out;
}

} // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                std::ostringstream os;
                os << "config: malformed section header on line " << lineno;
                throw ConfigError(os.str());
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                std::ostringstream os;
                os << "config: empty section name on line " << lineno;
                throw ConfigError(os.str());
            }
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << "config: expected 'key = value' on line " << lineno << ": '" << line << "'";
            throw ConfigError(os.str());
        }
        std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            std::ostringstream os;
            os << "config: missing key on line " << lineno;
            throw ConfigError(os.str());
        }
        if (!section.empty()) key = section + "." + key;
        if (cfg.values_.count(key))
            throw ConfigError("config: duplicate key '" + key + "'");
        cfg.values_.emplace(key, parse_value(line.substr(eq + 1), key, lineno));
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse(os.str());
}

const Config::Value& Config::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("config: missing required key '" + key + "'");
    return it->second;
}

double Config::number(const std::string& key) const {
    const Value& v = get(key);
    if (!std::holds_alternative<double>(v))
        throw ConfigError("config: key '" + key + "' is not a number");
    return std::get<double>(v);
}

double Config::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

int Config::integer(const std::string& key) const {
    const double v = number(key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError("config: key '" + key + "' is not an integer");
    return i;
}

int Config::integer_or(const std::string& key, int fallback) const {
    return has(key) ? integer(key) : fallback;
}

bool Config::boolean_or(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const Value& v = get(key);
    if (!std::holds_alternative<bool>(v))
        throw ConfigError("config: key '" + key + "' is not a boolean");
    return std::get<bool>(v);
}

std::string Config::str(const std::string& key) const {
    const Value& v = get(key);
    if (!std::holds_alternative<std::string>(v))
        throw ConfigError("config: key '" + key + "' is not a string");
    return std::get<std::string>(v);
}

std::string Config::str_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? str(key) : fallback;
}

std::vector<double> Config::numbers(const std::string& key) const {
    const Value& v = get(key);
    if (std::holds_alternative<double>(v)) return {std::get<double>(v)};
    if (!std::holds_alternative<std::vector<double>>(v))
        throw ConfigError("config: key '" + key + "' is not a numeric array");
    return std::get<std::vector<double>>(v);
}

std::vector<double> Config::numbers_or(const std::string& key,
                                       std::vector<double> fallback) const {
    return has(key) ? numbers(key) : fallback;
}

} // namespace igam

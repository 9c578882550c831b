#pragma once
// Flat key-value configuration text: one `key = value` per line, '#' starts a
// comment, blank lines are ignored, and dotted keys are ordinary keys that
// happen to contain dots. Values keep their internal spaces; lists are
// comma-separated. Typed getters throw ConfigError naming the offending key,
// so callers can surface precise usage errors.

#include <cctype>
#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace ldpclat {

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace detail

class Config {
  public:
    Config() = default;

    static Config parse(std::istream& in, const std::string& name = "<stream>") {
        Config cfg;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            std::string body = detail::trim(line);
            if (body.empty()) continue;
            auto eq = body.find('=');
            if (eq == std::string::npos)
                throw ConfigError(name + ": line " + std::to_string(line_no) +
                                  ": expected `key = value`");
            std::string key = detail::trim(body.substr(0, eq));
            std::string value = detail::trim(body.substr(eq + 1));
            if (key.empty())
                throw ConfigError(name + ": line " + std::to_string(line_no) + ": empty key");
            if (cfg.entries_.count(key))
                throw ConfigError(name + ": line " + std::to_string(line_no) +
                                  ": duplicate key `" + key + "`");
            cfg.entries_[key] = value;
        }
        return cfg;
    }

    static Config parse_string(const std::string& text, const std::string& name = "<string>") {
        std::istringstream in(text);
        return parse(in, name);
    }

    static Config load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open config file: " + path);
        return parse(in, path);
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    void set(const std::string& key, const std::string& value) { entries_[key] = value; }
    void set(const std::string& key, long long value) { set(key, std::to_string(value)); }
    void set(const std::string& key, std::uint64_t value) { set(key, std::to_string(value)); }
    void set(const std::string& key, int value) { set(key, std::to_string(value)); }
    void set(const std::string& key, double value) {
        std::ostringstream os;
        os.precision(17);
        os << value;
        set(key, os.str());
    }
    void set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }

    const std::string& require(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) throw ConfigError("missing required key: " + key);
        return it->second;
    }

    std::string get_string(const std::string& key) const { return require(key); }
    std::string get_string(const std::string& key, const std::string& fallback) const {
        return has(key) ? entries_.at(key) : fallback;
    }

    long long get_int64(const std::string& key) const { return parse_int64(key, require(key)); }
    long long get_int64(const std::string& key, long long fallback) const {
        return has(key) ? get_int64(key) : fallback;
    }

    int get_int(const std::string& key) const {
        long long v = get_int64(key);
        if (v < INT_MIN_ || v > INT_MAX_)
            throw ConfigError("key `" + key + "`: value out of int range");
        return static_cast<int>(v);
    }
    int get_int(const std::string& key, int fallback) const {
        return has(key) ? get_int(key) : fallback;
    }

    std::uint64_t get_uint64(const std::string& key) const {
        const std::string& raw = require(key);
        errno = 0;
        char* end = nullptr;
        unsigned long long v = std::strtoull(raw.c_str(), &end, 10);
        if (raw.empty() || end != raw.c_str() + raw.size() || errno == ERANGE ||
            raw.front() == '-')
            throw ConfigError("key `" + key + "`: expected an unsigned integer, got `" + raw +
                              "`");
        return static_cast<std::uint64_t>(v);
    }
    std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const {
        return has(key) ? get_uint64(key) : fallback;
    }

    double get_double(const std::string& key) const { return parse_double(key, require(key)); }
    double get_double(const std::string& key, double fallback) const {
        return has(key) ? get_double(key) : fallback;
    }

    bool get_bool(const std::string& key) const {
        std::string v = detail::lower(require(key));
        if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
        if (v == "false" || v == "0" || v == "no" || v == "off") return false;
        throw ConfigError("key `" + key + "`: expected a boolean, got `" + require(key) + "`");
    }
    bool get_bool(const std::string& key, bool fallback) const {
        return has(key) ? get_bool(key) : fallback;
    }

    std::vector<int> get_int_list(const std::string& key) const {
        std::vector<int> out;
        for (const auto& item : split_list(key)) {
            long long v = parse_int64(key, item);
            if (v < INT_MIN_ || v > INT_MAX_)
                throw ConfigError("key `" + key + "`: list value out of int range");
            out.push_back(static_cast<int>(v));
        }
        return out;
    }

    std::vector<double> get_double_list(const std::string& key) const {
        std::vector<double> out;
        for (const auto& item : split_list(key)) out.push_back(parse_double(key, item));
        return out;
    }

    const std::map<std::string, std::string>& entries() const { return entries_; }

    // serialized `key = value` lines in sorted key order (diff-friendly)
    std::string to_string() const {
        std::ostringstream os;
        for (const auto& [key, value] : entries_) os << key << " = " << value << '\n';
        return os.str();
    }

    void save(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw IoError("cannot write config file: " + path);
        out << to_string();
        if (!out) throw IoError("failed writing config file: " + path);
    }

  private:
    static constexpr long long INT_MIN_ = -2147483648LL;
    static constexpr long long INT_MAX_ = 2147483647LL;

    static long long parse_int64(const std::string& key, const std::string& raw) {
        errno = 0;
        char* end = nullptr;
        long long v = std::strtoll(raw.c_str(), &end, 10);
        if (raw.empty() || end != raw.c_str() + raw.size() || errno == ERANGE)
            throw ConfigError("key `" + key + "`: expected an integer, got `" + raw + "`");
        return v;
    }

    static double parse_double(const std::string& key, const std::string& raw) {
        errno = 0;
        char* end = nullptr;
        double v = std::strtod(raw.c_str(), &end);
        if (raw.empty() || end != raw.c_str() + raw.size() || errno == ERANGE)
            throw ConfigError("key `" + key + "`: expected a number, got `" + raw + "`");
        return v;
    }

    std::vector<std::string> split_list(const std::string& key) const {
        const std::string& raw = require(key);
        std::vector<std::string> items;
        std::string cur;
        for (char c : raw) {
            if (c == ',') {
                items.push_back(detail::trim(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        items.push_back(detail::trim(cur));
        for (const auto& item : items)
            if (item.empty())
                throw ConfigError("key `" + key + "`: empty element in list `" + raw + "`");
        return items;
    }

    std::map<std::string, std::string> entries_;
};

}  // namespace ldpclat

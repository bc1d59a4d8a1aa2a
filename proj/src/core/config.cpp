#include "rtm/core/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rtm/core/error.hpp"

namespace rtm {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw Error(ErrorCategory::ConfigError,
                            "malformed section header at line " + std::to_string(lineno));
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCategory::ConfigError,
                        "expected key = value at line " + std::to_string(lineno));
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw Error(ErrorCategory::ConfigError, "empty key at line " + std::to_string(lineno));
        cfg.values_[section.empty() ? key : section + "." + key] = value;
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCategory::IOFailure, "cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    char* end = nullptr;
    double v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str())
        throw Error(ErrorCategory::ConfigError, "key " + key + " is not a number: " + it->second);
    return v;
}

int Config::get_int(const std::string& key, int fallback) const {
    return static_cast<int>(get_double(key, fallback));
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    return std::strtoull(it->second.c_str(), nullptr, 10);
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw Error(ErrorCategory::ConfigError, "key " + key + " is not a boolean: " + v);
}

std::string Config::require_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw Error(ErrorCategory::ConfigError, "missing required key " + key);
    return it->second;
}

double Config::require_double(const std::string& key) const {
    if (!has(key)) throw Error(ErrorCategory::ConfigError, "missing required key " + key);
    return get_double(key, 0.0);
}

std::vector<std::string> Config::section_keys(const std::string& section) const {
    std::vector<std::string> keys;
    std::string prefix = section + ".";
    for (const auto& [k, v] : values_) {
        if (k.rfind(prefix, 0) == 0) keys.push_back(k.substr(prefix.size()));
    }
    return keys;
}

std::string Config::canonical_text() const {
    std::ostringstream out;
    for (const auto& [k, v] : values_) out << k << "=" << v << "\n";
    return out.str();
}

std::uint64_t Config::hash() const { return fnv1a64(canonical_text()); }

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace rtm

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rtm {

// INI-style configuration: [section] headers, key = value lines, '#' or ';'
// comments. Keys are addressed as "section.key". Sectionless keys live in "".
class Config {
public:
    Config() = default;

    static Config parse(const std::string& text);
    static Config load(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    // Typed access that throws ConfigError when the key is absent.
    std::string require_string(const std::string& key) const;
    double require_double(const std::string& key) const;

    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    // Keys of one section, without the "section." prefix.
    std::vector<std::string> section_keys(const std::string& section) const;

    // Canonical text form (sorted keys) and its FNV-1a hash; used by manifests.
    std::string canonical_text() const;
    std::uint64_t hash() const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

std::uint64_t fnv1a64(const std::string& text);

}  // namespace rtm

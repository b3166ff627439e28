#include "chebdim/kvfile.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chebdim {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double_field(const std::string& value, const std::string& context) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE)
        throw std::invalid_argument(context + ": expected a number, got '" + value + "'");
    return v;
}

std::int64_t parse_int_field(const std::string& value, const std::string& context) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE)
        throw std::invalid_argument(context + ": expected an integer, got '" + value + "'");
    return v;
}

KvFile KvFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

KvFile KvFile::parse_string(const std::string& text, const std::string& name) {
    KvFile kv;
    kv.name_ = name;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw std::runtime_error(name + ":" + std::to_string(line) +
                                         ": unterminated section header '" + s + "'");
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty())
                throw std::runtime_error(name + ":" + std::to_string(line) + ": empty section name");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(name + ":" + std::to_string(line) +
                                     ": expected 'key = value', got '" + s + "'");
        if (section.empty())
            throw std::runtime_error(name + ":" + std::to_string(line) +
                                     ": key before any [section] header");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error(name + ":" + std::to_string(line) + ": empty key");
        kv.entries_.push_back({section, key, value, line});
    }
    return kv;
}

bool KvFile::has_section(const std::string& section) const {
    for (const Entry& e : entries_)
        if (e.section == section) return true;
    return false;
}

std::vector<std::string> KvFile::sections_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const Entry& e : entries_) {
        if (e.section.rfind(prefix, 0) != 0) continue;
        bool seen = false;
        for (const std::string& s : out) seen = seen || s == e.section;
        if (!seen) out.push_back(e.section);
    }
    return out;
}

std::optional<std::string> KvFile::find(const std::string& section, const std::string& key) const {
    for (const Entry& e : entries_)
        if (e.section == section && e.key == key) return e.value;
    return std::nullopt;
}

std::string KvFile::require(const std::string& section, const std::string& key) const {
    auto v = find(section, key);
    if (!v) fail(section, key, "missing");
    return *v;
}

std::string KvFile::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
    auto v = find(section, key);
    return v ? *v : fallback;
}

double KvFile::require_double(const std::string& section, const std::string& key) const {
    return parse_double_field(require(section, key), name_ + ": [" + section + "] " + key);
}

double KvFile::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
    auto v = find(section, key);
    if (!v) return fallback;
    return parse_double_field(*v, name_ + ": [" + section + "] " + key);
}

std::int64_t KvFile::require_int(const std::string& section, const std::string& key) const {
    return parse_int_field(require(section, key), name_ + ": [" + section + "] " + key);
}

std::int64_t KvFile::get_int_or(const std::string& section, const std::string& key,
                                std::int64_t fallback) const {
    auto v = find(section, key);
    if (!v) return fallback;
    return parse_int_field(*v, name_ + ": [" + section + "] " + key);
}

std::vector<double> KvFile::require_double_list(const std::string& section,
                                                const std::string& key) const {
    const std::string context = name_ + ": [" + section + "] " + key;
    std::vector<double> out;
    for (const std::string& item : split_list(require(section, key)))
        out.push_back(parse_double_field(item, context));
    if (out.empty()) fail(section, key, "empty list");
    return out;
}

std::vector<double> KvFile::get_double_list_or(const std::string& section, const std::string& key,
                                               const std::vector<double>& fallback) const {
    if (!find(section, key)) return fallback;
    return require_double_list(section, key);
}

std::vector<std::string> KvFile::require_string_list(const std::string& section,
                                                     const std::string& key) const {
    auto out = split_list(require(section, key));
    if (out.empty()) fail(section, key, "empty list");
    return out;
}

void KvFile::fail(const std::string& section, const std::string& key,
                  const std::string& what) const {
    throw std::invalid_argument(name_ + ": [" + section + "] " + key + ": " + what);
}

}  // namespace chebdim

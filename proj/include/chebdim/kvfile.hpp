#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chebdim {

/// Flat text config: "[section]" headers followed by "key = value" lines.
/// '#' starts a comment, blank lines are skipped, order is preserved and
/// section names may repeat (each occurrence is a separate block). Errors
/// carry file and line information; typed getters name the offending field.
class KvFile {
  public:
    struct Entry {
        std::string section;
        std::string key;
        std::string value;
        int line = 0;
    };

    static KvFile parse_file(const std::string& path);
    static KvFile parse_string(const std::string& text, const std::string& name = "<string>");

    const std::string& name() const { return name_; }
    const std::vector<Entry>& entries() const { return entries_; }

    bool has_section(const std::string& section) const;
    std::vector<std::string> sections_with_prefix(const std::string& prefix) const;

    std::optional<std::string> find(const std::string& section, const std::string& key) const;
    std::string require(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;

    double require_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key, double fallback) const;
    std::int64_t require_int(const std::string& section, const std::string& key) const;
    std::int64_t get_int_or(const std::string& section, const std::string& key,
                            std::int64_t fallback) const;
    std::vector<double> require_double_list(const std::string& section,
                                            const std::string& key) const;
    std::vector<double> get_double_list_or(const std::string& section, const std::string& key,
                                           const std::vector<double>& fallback) const;
    std::vector<std::string> require_string_list(const std::string& section,
                                                 const std::string& key) const;

    [[noreturn]] void fail(const std::string& section, const std::string& key,
                           const std::string& what) const;

  private:
    std::string name_;
    std::vector<Entry> entries_;
};

/// Splits on commas, trimming whitespace; empty items are dropped.
std::vector<std::string> split_list(const std::string& text);

double parse_double_field(const std::string& value, const std::string& context);
std::int64_t parse_int_field(const std::string& value, const std::string& context);

}  // namespace chebdim

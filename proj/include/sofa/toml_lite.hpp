#pragma once

#include <map>
#include <string>

namespace sofa {

/// Minimal TOML subset: [tables], key = value with numbers, booleans and
/// quoted strings; '#' comments. Enough for config and constants files.
class TomlDoc {
public:
    static TomlDoc parse_file(const std::string& path);
    static TomlDoc parse(const std::string& text);

    bool has(const std::string& table, const std::string& key) const;
    double number(const std::string& table, const std::string& key) const;
    double number_or(const std::string& table, const std::string& key, double fallback) const;
    std::string text(const std::string& table, const std::string& key) const;
    bool boolean(const std::string& table, const std::string& key) const;

    void set_number(const std::string& table, const std::string& key, double v);
    void set_text(const std::string& table, const std::string& key, const std::string& v);
    std::string serialize() const;

private:
    // values stored as raw strings; tables keep insertion order for output
    std::map<std::string, std::map<std::string, std::string>> tables_;
    const std::string& raw(const std::string& table, const std::string& key) const;
};

} // namespace sofa

#include "sofa/toml_lite.hpp"

#include <fstream>
#include <sstream>

#include "sofa/errors.hpp"

namespace sofa {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

TomlDoc TomlDoc::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open TOML file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

TomlDoc TomlDoc::parse(const std::string& text) {
    TomlDoc doc;
    std::istringstream in(text);
    std::string line, table;
    while (std::getline(in, line)) {
        // strip comments outside quotes
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) {
                line = line.substr(0, i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            const auto close = line.find(']');
            if (close == std::string::npos) throw Error("toml: unterminated table header");
            table = trim(line.substr(1, close - 1));
            doc.tables_[table];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw Error("toml: expected key = value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) throw Error("toml: malformed line: " + line);
        doc.tables_[table][key] = val;
    }
    return doc;
}

bool TomlDoc::has(const std::string& table, const std::string& key) const {
    const auto t = tables_.find(table);
    return t != tables_.end() && t->second.count(key) > 0;
}

const std::string& TomlDoc::raw(const std::string& table, const std::string& key) const {
    const auto t = tables_.find(table);
    if (t == tables_.end()) throw Error("toml: missing table [" + table + "]");
    const auto k = t->second.find(key);
    if (k == t->second.end()) throw Error("toml: missing key " + table + "." + key);
    return k->second;
}

double TomlDoc::number(const std::string& table, const std::string& key) const {
    const std::string& v = raw(table, key);
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used == 0) throw Error("toml: not a number: " + table + "." + key);
    return x;
}

double TomlDoc::number_or(const std::string& table, const std::string& key,
                          double fallback) const {
    return has(table, key) ? number(table, key) : fallback;
}

std::string TomlDoc::text(const std::string& table, const std::string& key) const {
    std::string v = raw(table, key);
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
    return v;
}

bool TomlDoc::boolean(const std::string& table, const std::string& key) const {
    const std::string& v = raw(table, key);
    if (v == "true") return true;
    if (v == "false") return false;
    throw Error("toml: not a boolean: " + table + "." + key);
}

void TomlDoc::set_number(const std::string& table, const std::string& key, double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    tables_[table][key] = os.str();
}

void TomlDoc::set_text(const std::string& table, const std::string& key, const std::string& v) {
    tables_[table][key] = '"' + v + '"';
}

std::string TomlDoc::serialize() const {
    std::ostringstream os;
    for (const auto& [name, kv] : tables_) {
        if (!name.empty()) os << '[' << name << "]\n";
        for (const auto& [k, v] : kv) os << k << " = " << v << '\n';
        os << '\n';
    }
    return os.str();
}

} // namespace sofa

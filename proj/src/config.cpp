#include "omniso/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace omniso {

namespace {

std::string trim(const std::string& s) {
    const size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
    ConfigFile cfg;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(lineno, "expected `key = value`, got `" + line + "`");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(lineno, "empty key");
        if (value.empty()) throw ParseError(lineno, "empty value for key `" + key + "`");
        if (cfg.entries_.count(key))
            throw ParseError(lineno, "duplicate key `" + key + "` (first set on line " +
                                         std::to_string(cfg.entries_[key].line) + ")");
        cfg.entries_[key] = Entry{value, lineno, false};
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError(0, "cannot open config file `" + path + "`");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse(buf.str());
}

const std::string* ConfigFile::fetch(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    it->second.used = true;
    return &it->second.value;
}

double ConfigFile::to_double(const std::string& key, const std::string& value) const {
    char* end = nullptr;
    const double x = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || !std::isfinite(x))
        throw ValidationError(key, "not a finite number: `" + value + "`");
    return x;
}

double ConfigFile::get_double(const std::string& key, double fallback) {
    const std::string* v = fetch(key);
    return v ? to_double(key, *v) : fallback;
}

std::optional<double> ConfigFile::get_double_opt(const std::string& key) {
    const std::string* v = fetch(key);
    if (!v) return std::nullopt;
    return to_double(key, *v);
}

int ConfigFile::get_int(const std::string& key, int fallback) {
    const std::string* v = fetch(key);
    if (!v) return fallback;
    const double x = to_double(key, *v);
    const int n = static_cast<int>(x);
    if (static_cast<double>(n) != x) throw ValidationError(key, "not an integer: `" + *v + "`");
    return n;
}

std::string ConfigFile::get_string(const std::string& key, const std::string& fallback) {
    const std::string* v = fetch(key);
    return v ? *v : fallback;
}

double ConfigFile::get_theta(const std::string& key, double fallback) {
    const std::string* v = fetch(key);
    if (!v) return fallback;
    if (*v == "0") return 0.0;
    if (*v == "pi/2") return M_PI / 2.0;
    if (*v == "pi") return M_PI;
    if (*v == "3pi/2") return 3.0 * M_PI / 2.0;
    return to_double(key, *v);
}

std::vector<double> ConfigFile::get_double_list(const std::string& key,
                                                const std::vector<double>& fallback) {
    const std::string* v = fetch(key);
    if (!v) return fallback;
    std::vector<double> out;
    std::string item;
    std::istringstream in(*v);
    while (std::getline(in, item, ',')) {
        const std::string t = trim(item);
        if (t.empty()) throw ValidationError(key, "empty element in list `" + *v + "`");
        out.push_back(to_double(key, t));
    }
    if (out.empty()) throw ValidationError(key, "empty list");
    return out;
}

void ConfigFile::require_all_consumed() const {
    for (const auto& [key, entry] : entries_)
        if (!entry.used)
            throw ValidationError(key, "unknown key (line " + std::to_string(entry.line) + ")");
}

}  // namespace omniso

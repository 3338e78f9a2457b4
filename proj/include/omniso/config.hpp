#pragma once

// Line-oriented `key = value` configuration with `#` comments. Typed getters
// record which keys were consumed; unknown keys are rejected afterwards so
// misspelled parameters never pass silently.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "omniso/errors.hpp"

namespace omniso {

class ConfigFile {
  public:
    static ConfigFile parse(const std::string& text);
    static ConfigFile load(const std::string& path);

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    double get_double(const std::string& key, double fallback);
    std::optional<double> get_double_opt(const std::string& key);
    int get_int(const std::string& key, int fallback);
    std::string get_string(const std::string& key, const std::string& fallback);

    // Accepts the symbolic values 0, pi/2, pi, 3pi/2 as well as numeric
    // radians.
    double get_theta(const std::string& key, double fallback);

    // Comma-separated list of numbers.
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback);

    // Throws ValidationError naming the first key that no getter consumed.
    void require_all_consumed() const;

  private:
    struct Entry {
        std::string value;
        int line = 0;
        bool used = false;
    };
    std::map<std::string, Entry> entries_;

    const std::string* fetch(const std::string& key);
    double to_double(const std::string& key, const std::string& value) const;
};

}  // namespace omniso
